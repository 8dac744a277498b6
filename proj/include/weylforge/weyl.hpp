#pragma once

#include "weylforge/poly.hpp"
#include "weylforge/rational.hpp"
#include "weylforge/series.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <vector>

namespace wf {

constexpr int kMaxVars = 8;

// x^a y^b h^c, packed: ab[0..n) = a, ab[kMaxVars..kMaxVars+n) = b.
struct WMono {
    std::array<std::uint8_t, 2 * kMaxVars> ab{};
    int c = 0;

    int a(int i) const { return ab[i]; }
    int b(int i) const { return ab[kMaxVars + i]; }
    std::uint8_t& a(int i) { return ab[i]; }
    std::uint8_t& b(int i) { return ab[kMaxVars + i]; }
    int weight() const {
        int w = 2 * c;
        for (auto v : ab) w += v;
        return w;
    }
    bool xy_free() const {
        for (auto v : ab)
            if (v) return false;
        return true;
    }
    bool operator<(const WMono& o) const { return ab != o.ab ? ab < o.ab : c < o.c; }
    bool operator==(const WMono& o) const { return ab == o.ab && c == o.c; }
};

// Normal-ordered element of the formal Weyl algebra (x left, y right), known
// modulo total weight |a|+|b|+2c >= wtrunc.
class WeylElement {
public:
    using Terms = std::map<WMono, Rational>;
    static constexpr int kNoTrunc = 1 << 28;

    WeylElement() = default;
    WeylElement(int n, int wtrunc, int cmin = 0);

    static WeylElement scalar(int n, const Rational& c, int wtrunc, int hpow = 0, int cmin = 0);
    static WeylElement x(int n, int i, int wtrunc);
    static WeylElement y(int n, int i, int wtrunc);
    static WeylElement hpow(int n, int k, int wtrunc);

    int n() const { return n_; }
    int wtrunc() const { return wtrunc_; }
    int cmin() const { return cmin_; }
    void set_cmin(int c) { cmin_ = c; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    void add(const WMono& m, const Rational& c);
    Rational coef(const WMono& m) const;
    void set_trunc(int w);
    WeylElement truncated(int w) const;

    int min_weight() const;  // kNoTrunc when zero
    int min_c() const;       // kNoTrunc when zero

    WeylElement& operator+=(const WeylElement& o);
    WeylElement& operator-=(const WeylElement& o);
    WeylElement& operator*=(const Rational& s);
    WeylElement operator-() const;
    friend WeylElement operator+(WeylElement a, const WeylElement& b) { return a += b; }
    friend WeylElement operator-(WeylElement a, const WeylElement& b) { return a -= b; }
    friend WeylElement operator*(WeylElement a, const Rational& s) { return a *= s; }
    friend WeylElement operator*(const Rational& s, WeylElement a) { return a *= s; }

    // Multiply by h^k (weights shift by 2k, truncation too).
    WeylElement hshift(int k) const;
    WeylElement weight_component(int w) const;
    // Terms with the given h-exponent.
    WeylElement c_component(int c) const;
    // Partial derivative in x_i of the normal-ordered form.
    WeylElement dx(int i) const;

    bool operator==(const WeylElement& o) const { return n_ == o.n_ && terms_ == o.terms_; }
    bool operator!=(const WeylElement& o) const { return !(*this == o); }
    // Equal modulo the coarser truncation.
    bool agrees(const WeylElement& o) const;

    // Checks cmin and truncation invariants.
    void validate() const;

private:
    Terms terms_;
    int n_ = 0;
    int wtrunc_ = kNoTrunc;
    int cmin_ = 0;
};

WeylElement weyl_mul(const WeylElement& a, const WeylElement& b);
WeylElement weyl_mul_serial(const WeylElement& a, const WeylElement& b);
WeylElement weyl_mul_parallel(const WeylElement& a, const WeylElement& b);
WeylElement weyl_commutator(const WeylElement& a, const WeylElement& b);
// Product truncation rule shared by all Weyl products.
int product_trunc(const WeylElement& a, const WeylElement& b);

// Variables 0..n-1 are x, n..2n-1 are y.
QPoly principal_symbol(const WeylElement& a);
// {f,g} = sum_i (d_y f d_x g - d_x f d_y g), so {y,x} = 1.
QPoly poisson_bracket(const QPoly& f, const QPoly& g, int n);

bool in_ideal_J(const WeylElement& a, int q);

// Rename variables of a p-variable element into slots q..q+p-1 of an n-variable one.
WeylElement embed_vars(const WeylElement& a, int n, int offset);

// e x e matrix over a Weyl algebra.
class MatWeyl {
public:
    MatWeyl() = default;
    MatWeyl(int e, int n, int wtrunc, int cmin = 0);

    static MatWeyl scalar(int e, const WeylElement& d);
    static MatWeyl constant(const RMat& m, int n, int wtrunc);

    int e() const { return e_; }
    int n() const { return n_; }
    int wtrunc() const;
    WeylElement& at(int i, int j) { return m_[i * e_ + j]; }
    const WeylElement& at(int i, int j) const { return m_[i * e_ + j]; }

    MatWeyl& operator+=(const MatWeyl& o);
    MatWeyl& operator-=(const MatWeyl& o);
    MatWeyl& operator*=(const Rational& s);
    friend MatWeyl operator+(MatWeyl a, const MatWeyl& b) { return a += b; }
    friend MatWeyl operator-(MatWeyl a, const MatWeyl& b) { return a -= b; }
    friend MatWeyl operator*(MatWeyl a, const Rational& s) { return a *= s; }
    bool operator==(const MatWeyl& o) const { return e_ == o.e_ && m_ == o.m_; }
    bool agrees(const MatWeyl& o) const;
    bool is_zero() const;
    MatWeyl weight_component(int w) const;
    void set_trunc(int w);

private:
    int e_ = 0;
    int n_ = 0;
    std::vector<WeylElement> m_;
};

MatWeyl mat_mul(const MatWeyl& a, const MatWeyl& b);
MatWeyl mat_commutator(const MatWeyl& a, const MatWeyl& b);

// Element of g = (1/h)D_p + gl_e(D_p): mat = d*I + m with d in (1/h)D_p, m over D_p.
struct GElement {
    MatWeyl mat;

    int e() const { return mat.e(); }
    int p() const { return mat.n(); }
    bool operator==(const GElement& o) const { return mat == o.mat; }
    // Off-diagonal and traceless parts free of h^-1; c >= -1 everywhere.
    bool valid() const;
};

GElement g_bracket(const GElement& a, const GElement& b);
GElement graded_component(const GElement& g, int w);

// Weyl-symmetric splitting of a (1/h)-quadratic: q = (1/h) sym(1/2 z^T Q z) + shift.
struct QuadSplit {
    RMat Q;          // symmetric 2n x 2n, z = (x_1..x_n, y_1..y_n)
    Rational shift;  // constant left after symmetrizing
};
// Reads the h^-1 degree-2 terms of a (restricted to the listed variables).
QuadSplit split_quadratic(const WeylElement& a, const std::vector<int>& vars);
// Matrix of ad((1/h) sym(1/2 z^T Q z)) on the linear span of z (columns = images).
RMat sp_action_matrix(const RMat& Q, int n);
// (1/h) sym(1/2 z^T Q z) as a normal-ordered element.
WeylElement sp_element(const RMat& Q, int n, int wtrunc);

struct HPart {
    RMat gl;           // e x e
    RMat sp;           // symmetric 2p x 2p coefficient matrix Q
    HUSeries aprime;   // sum_{i != 0} a_i h^i
};

HPart project_h(const GElement& g);
// h = gl_e + sp_2p + a' embedded back into g.
GElement embed_h(const HPart& x, int p, int wtrunc);

// Element of the module M = (D/D<y_1..y_q>)^e: components over x, y_{q+1..n}, h.
struct ModuleElement {
    std::vector<WeylElement> comp;
    int q = 0;

    int e() const { return static_cast<int>(comp.size()); }
    bool operator==(const ModuleElement& o) const { return q == o.q && comp == o.comp; }
    bool agrees(const ModuleElement& o) const;
    bool valid() const;
};

ModuleElement module_generator(int e, int i, int n, int q, int wtrunc);
ModuleElement module_act(const WeylElement& d, const ModuleElement& m);
// y_s u_i = sum_j phi[s](i,j) u_j for s < q; empty phi means the standard module.
ModuleElement module_act(const WeylElement& d, const ModuleElement& m, const std::vector<MatWeyl>& phi);
// Right action of a matrix over D_p (p = n - q variables, placed after the q ones).
ModuleElement module_right(const ModuleElement& m, const MatWeyl& a);

}  // namespace wf
