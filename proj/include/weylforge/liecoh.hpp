#pragma once

#include "weylforge/rational.hpp"
#include "weylforge/series.hpp"
#include "weylforge/weyl.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace wf {

// Finite-dimensional Lie algebra by structure constants [e_i, e_j] = sum_k sc[i][j][k] e_k,
// a subalgebra h spanned by a subset of the basis, and a module V (trivial by default).
class LieAlgebra {
public:
    LieAlgebra(int dim, std::vector<std::vector<RVec>> sc, std::vector<int> h = {},
               std::vector<std::string> labels = {}, int vdim = 1, std::vector<RMat> action = {});

    int dim() const { return dim_; }
    int vdim() const { return vdim_; }
    const RVec& bracket(int i, int j) const { return sc_[i][j]; }
    RVec bracket(const RVec& a, const RVec& b) const;
    const std::vector<int>& h() const { return h_; }
    bool in_h(int i) const;
    const std::vector<std::string>& labels() const { return labels_; }
    bool trivial_module() const { return action_.empty(); }
    // Action of e_i on V (zero matrix for the trivial module).
    RMat act(int i) const;
    RVec act(const RVec& g, const RVec& v) const;
    LieAlgebra with_h(std::vector<int> h) const;

    static LieAlgebra abelian(int n);
    static LieAlgebra sl2();            // E, F, H with [E,F] = H, [H,E] = 2E, [H,F] = -2F
    static LieAlgebra gl(int m);        // E_ij at index i*m + j
    static LieAlgebra borel3();         // upper triangular 3x3: I, E22, E33, E12, E13, E23

private:
    int dim_;
    std::vector<std::vector<RVec>> sc_;
    std::vector<int> h_;
    std::vector<std::string> labels_;
    int vdim_;
    std::vector<RMat> action_;
};

// Alternating V-valued l-cochain, tabulated on strictly increasing basis tuples.
struct Cochain {
    int degree = 0;
    int vdim = 1;
    std::map<std::vector<int>, RVec> table;

    // Value on basis indices in any order (0 on repeats).
    RVec at(std::vector<int> idx) const;
    void set(const std::vector<int>& sorted_idx, const RVec& v);
    bool is_zero() const { return table.empty(); }
    bool operator==(const Cochain& o) const { return degree == o.degree && vdim == o.vdim && table == o.table; }
};

// Evaluation-only cochain on elements of g = (1/h)D_p + gl_e(D_p).
struct ProceduralCochain {
    int degree = 0;
    std::function<HUSeries(const std::vector<GElement>&)> eval;
};

using AnyCochain = std::variant<Cochain, ProceduralCochain>;

Cochain zero_cochain(int degree, int vdim);
RVec evaluate(const Cochain& c, const std::vector<RVec>& args);
Cochain cochain_add(const Cochain& a, const Cochain& b);
Cochain cochain_scale(const Cochain& a, const Rational& s);
std::vector<std::vector<int>> increasing_tuples(const std::vector<int>& from, int l);

Cochain d_lie(const Cochain& c, const LieAlgebra& g);
Cochain d_lie(const AnyCochain& c, const LieAlgebra& g);
// Value of d c on explicit arguments (trivial module), for procedural cochains.
HUSeries d_lie_eval(const ProceduralCochain& c, const std::vector<GElement>& args);
bool is_relative(const Cochain& c, const LieAlgebra& g);

// pr is dim x dim with image in span(h) and pr|_h = 1.  Values of the result are g-vectors.
Cochain curvature(const LieAlgebra& g, const RMat& pr);

// Symmetric l-linear form on h-elements (given as g-vectors).
struct InvariantPoly {
    int l = 0;
    std::function<Rational(const std::vector<RVec>&)> S;
};

// Polarization of a homogeneous degree-l polynomial.
InvariantPoly polarize(int l, std::function<Rational(const RVec&)> P);
bool is_invariant(const InvariantPoly& S, const LieAlgebra& g, int samples);

// rho(S)(v_1..v_2l) = sum over perfect matchings of sign * S(C(pair), ..); trivial V.
Cochain chern_weil(const InvariantPoly& S, const LieAlgebra& g, const RMat& pr);

// Shuffle product of scalar cochains; the divided-power version rescales by
// a! b! / (a+b)! for degrees 2a, 2b so that rho(S1 S2) = rho(S1) cup_dp rho(S2).
Cochain cup(const Cochain& a, const Cochain& b, const LieAlgebra& g);
Cochain cup_dp(const Cochain& a, const Cochain& b, const LieAlgebra& g);

struct ExactnessResult {
    bool exact = false;
    Cochain primitive;
    int rank_system = 0;     // rank of d on the primitive space
    int rank_augmented = 0;  // rank after appending c; larger means not exact
};
// d b = c over all cochains, or over relative cochains (support avoiding h).
ExactnessResult exactness_solve(const Cochain& c, const LieAlgebra& g, bool relative = false);

// Matrix-valued polynomial families: degree-l parts of tr exp(x), tr x, and
// det((y/2)/sinh(y/2))^{1/2} = exp(sum_k a_k tr y^k), log G_1 = sum a_k z^k.
using MatPoly = std::function<Rational(const RMat&)>;
std::vector<MatPoly> class_ch_lie(int max_deg);
MatPoly class_c1_lie();
std::vector<MatPoly> class_ahat_lie(int max_deg);

// ---- the procedural algebra (1/h)D_n + gl_e(D_p), with the first q variables forming
// the ideal side J = (y_1..y_q, h) and the last p = n - q carrying sp_2p.

struct HComponents {
    RMat gle;         // e x e: normal-ordered constants on the q-block, Weyl on the p-block
    RMat glq;         // q x q: coefficient of (1/h) x_i y_j
    RMat sp;          // 2p x 2p action matrix on span(x_s, y_s), s >= q
    Rational c0;      // (1/e) tr of the Weyl-symbol constants
    HUSeries aprime;  // sum_{c != 0} h^c constants (see project_h)

    HComponents operator+(const HComponents& o) const;
    HComponents scaled(const Rational& s) const;
};

HComponents project_components(const GElement& g, int q);
// C(u, v) = [pr u, pr v] - pr [u, v] componentwise (c0 and aprime are abelian).
HComponents curvature_components(const GElement& u, const GElement& v, int q);

Rational projection_c0(const GElement& g);
// c_0(g1, g2) = -pr_0([g1, g2]).
HUSeries extension_cocycle_c0(const GElement& g1, const GElement& g2, int q);

using HPoly = std::function<HUSeries(const HComponents&)>;
// rho of the homogeneous degree-k polynomial P on 2k arguments (k >= 1).
HUSeries chern_weil_eval(const HPoly& P, int k, const std::vector<GElement>& args, int q);

// Degree-2k component of ch_Lie(gl_e) A_Lie(sp_2p) exp(-C(a')) (q = 0 setting).
HUSeries tau_dp_component(const std::vector<GElement>& args, int k, int e, int p);
// Positive-degree A-factor and the ch exp(-c_1/2 - c_0) cochain on the q-split algebra.
HUSeries ahat_factor_eval(const std::vector<GElement>& args, int k, int q);
HUSeries ch_c1_c0_eval(const std::vector<GElement>& args, int k, int q);

// ---- perturbation lemma on finite complexes of g-modules (absolute cochains).

struct GradedModule {
    int jmin = 0;
    std::vector<int> dims;                 // dims[j - jmin]
    std::vector<RMat> d;                   // d[j - jmin]: M^j -> M^{j+1}
    std::vector<std::vector<RMat>> action; // action[j - jmin][x]
    int dim(int j) const;
    int jmax() const { return jmin + static_cast<int>(dims.size()) - 1; }
};

struct GradedMap {
    int shift = 0;            // M^j -> N^{j + shift}
    std::vector<RMat> comps;  // comps[j - src.jmin]
};

// Element of the total complex: (n, j) -> cochain table of Hom(Lambda^n g, M^j).
struct HomCochain {
    std::map<std::pair<int, int>, std::map<std::vector<int>, RVec>> parts;
    bool is_zero() const;
    bool operator==(const HomCochain& o) const;
};

void check_module(const GradedModule& M, const LieAlgebra& g);
HomCochain hom_add(const HomCochain& a, const HomCochain& b);
HomCochain hom_scale(const HomCochain& a, const Rational& s);
// Bracket term of the Lie differential plus (-1)^n d_M.
HomCochain d_hom(const HomCochain& a, const GradedModule& M, const LieAlgebra& g);
// Action term of the Lie differential.
HomCochain delta_act(const HomCochain& a, const GradedModule& M, const LieAlgebra& g);
HomCochain d_total(const HomCochain& a, const GradedModule& M, const LieAlgebra& g);
// Post-composition, with sign (-1)^{n * shift}.
HomCochain apply_map(const GradedMap& f, const HomCochain& a, const GradedModule& src, const GradedModule& dst);

// f~ = f_Hom (1 + dphi + (dphi)^2 + ..), dphi = delta phi_Hom.
HomCochain perturb_f_tilde(const GradedMap& f, const GradedMap& g, const GradedMap& phi, const HomCochain& a,
                           const GradedModule& M, const GradedModule& N, const LieAlgebra& lie);
// phi~ = phi_Hom (1 + dphi + ..).
HomCochain perturb_phi_tilde(const GradedMap& phi, const HomCochain& a, const GradedModule& M, const LieAlgebra& lie);
// Checks phi phi = 0, phi g = 0, f phi = 0.
void check_side_conditions(const GradedMap& f, const GradedMap& g, const GradedMap& phi, const GradedModule& M,
                           const GradedModule& N);

}  // namespace wf
