#pragma once

#include "weylforge/poly.hpp"
#include "weylforge/series.hpp"

#include <cstdint>
#include <map>

namespace wf {

// Basis index k < n is dx_{k+1} (or d/dx), k >= n is dy_{k-n+1}.
struct FKey {
    Exps mono;            // exponents of x_1..x_n, y_1..y_n
    std::uint32_t mask;   // set of differentials (or derivations), global order
    bool operator<(const FKey& o) const { return mono != o.mono ? mono < o.mono : mask < o.mask; }
    bool operator==(const FKey& o) const { return mono == o.mono && mask == o.mask; }
};

int popcount(std::uint32_t m);

// Sparse formal differential form (IsVec = false) or polyvector field (IsVec = true)
// with HUSeries coefficients, truncated at coefficient degree deg_trunc.
template <bool IsVec>
class Formal {
public:
    using Terms = std::map<FKey, HUSeries>;
    static constexpr int kNoTrunc = 1 << 28;

    Formal() = default;
    explicit Formal(int n, int deg_trunc = kNoTrunc) : n_(n), trunc_(deg_trunc) {}

    static Formal one(int n, int deg_trunc = kNoTrunc);
    static Formal basis(int n, const Exps& mono, std::uint32_t mask, const HUSeries& c, int deg_trunc = kNoTrunc);

    int n() const { return n_; }
    int trunc() const { return trunc_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(const Exps& mono, std::uint32_t mask, const HUSeries& c);
    void set_trunc(int t);

    Formal& operator+=(const Formal& o);
    Formal& operator-=(const Formal& o);
    Formal operator-() const;
    Formal scaled(const HUSeries& s) const;
    Formal scaled(const Rational& s) const;
    friend Formal operator+(Formal a, const Formal& b) { return a += b; }
    friend Formal operator-(Formal a, const Formal& b) { return a -= b; }

    // Components with the given exterior degree / coefficient degree.
    Formal degree_part(int i) const;
    Formal coef_degree_part(int k) const;
    int max_coef_degree() const;

    bool operator==(const Formal& o) const;
    bool operator!=(const Formal& o) const { return !(*this == o); }

private:
    Terms terms_;
    int n_ = 0;
    int trunc_ = kNoTrunc;
};

using FormalForm = Formal<false>;
using PolyVec = Formal<true>;

FormalForm wedge(const FormalForm& a, const FormalForm& b);
FormalForm d_de_rham(const FormalForm& a);
FormalForm contract(const PolyVec& v, const FormalForm& a);

FormalForm omega_form(int n);           // sum dx_i ^ dy_i
FormalForm alpha_form(int n);           // 1/2 sum (x_i dy_i - y_i dx_i)
PolyVec pi_bivector(int n);             // sum d/dx_i ^ d/dy_i
PolyVec euler_field(int n);             // sum x_i d/dx_i + y_i d/dy_i
FormalForm function_form(const QPoly& f, int deg_trunc = FormalForm::kNoTrunc);

FormalForm iota_pi(const FormalForm& a);
// L_pi = d iota_pi - iota_pi d (graded commutator of d with the even operator iota_pi).
FormalForm lie_derivative_pi(const FormalForm& a);
FormalForm euler_primitive(const FormalForm& b);
FormalForm sympl_star(const FormalForm& a, int n);
FormalForm op_exp_wedge(const HUSeries& c, const FormalForm& a);
FormalForm op_exp_contract_pi(const HUSeries& c, const FormalForm& a);
FormalForm regrade_u(const FormalForm& a);
FormalForm regrade_h(const FormalForm& a, int n);
FormalForm hodge_homotopy_phi(const FormalForm& a, int n);

// L_mu = d iota_mu + iota_mu d for a vector field mu.
FormalForm lie_derivative(const PolyVec& mu, const FormalForm& a);
FormalForm pullback_exp(const PolyVec& mu, const FormalForm& a, int T);
PolyVec ham_field(const QPoly& f, const PolyVec& pi);

// Coefficient polynomial helpers (coefficients are h,u-free rationals).
QPoly coef_poly(const FormalForm& a, std::uint32_t mask);

}  // namespace wf
