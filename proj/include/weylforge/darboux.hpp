#pragma once

#include "weylforge/forms.hpp"
#include "weylforge/weyl.hpp"

#include <vector>

namespace wf {

// Basis change P (columns = new basis in old coordinates) with P^T A P = J,
// J = [[0, I], [-I, 0]], and P(W_std) = W for W = {v : v_{y_r} = 0, r < q}.
RMat linear_darboux(const RMat& A, int q);

// Normalizing steps: apply pullback by exp(-mu) for each stored mu in order.
struct FormalDiffeo {
    std::vector<PolyVec> steps;
    std::vector<int> degrees;  // coefficient degree of each step
    int T = 0;
    int n = 0;
};

// d gamma = beta with the dx_r coefficients (r < q) in J = (y_1..y_q).
FormalForm ideal_primitive(const FormalForm& beta, int q);
FormalDiffeo darboux_normalize(const FormalForm& alpha, int q, int T);
FormalForm apply_diffeo(const FormalDiffeo& phi, const FormalForm& a);
// alpha_0^{-1}: the vector field v with iota_v alpha_0 = gamma.
PolyVec omega_inverse(const FormalForm& gamma);
bool preserves_ideal(const PolyVec& mu, int q);
bool ideal_compatible(const FormalForm& alpha, int q);

// G with d G / d x_s = F_s (s < q), zero on {x_1 = .. = x_q = 0}.  Entries are
// h-free elements over x, y_{q+1..n}.
MatWeyl solve_gradient_system(const std::vector<MatWeyl>& F, int q);

// Flatness is required modulo h^{T+1}: the order T-1 step needs it.
struct QuantModulePresentation {
    int e = 0;
    int n = 0;
    int q = 0;
    std::vector<MatWeyl> phi;  // y_s u_i = sum_j phi[s](i,j) u_j
    int T = 1;                 // h-order
};

void check_presentation(const QuantModulePresentation& pres);
// Rows of U give new generators u'_i = sum_j U(i,j) u_j with y_s u'_i = 0 mod h^T.
MatWeyl quantize_module_generators(const QuantModulePresentation& pres);
// Drops terms with h-exponent >= T.
WeylElement mod_h(const WeylElement& a, int T);
MatWeyl mod_h(const MatWeyl& a, int T);

}  // namespace wf
