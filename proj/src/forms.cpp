#include "weylforge/errors.hpp"
#include "weylforge/forms.hpp"

#include <algorithm>
#include <vector>

namespace wf {

int popcount(std::uint32_t m) { return __builtin_popcount(m); }

namespace {

constexpr int kInf = FormalForm::kNoTrunc;

int sat_add(int a, int b) { return (a >= kInf / 2 || b >= kInf / 2) ? kInf : a + b; }

// Sign of moving dz_J past dz_I into increasing order: (-1)^{#(i in I, j in J, i > j)}.
int merge_sign(std::uint32_t I, std::uint32_t J) {
    int inv = 0;
    for (std::uint32_t j = J; j; j &= j - 1) {
        int b = __builtin_ctz(j);
        inv += popcount(I & ~((2u << b) - 1));
    }
    return inv % 2 ? -1 : 1;
}

// Sign of the k-th slot relative to the entries of I below it.
int below_sign(std::uint32_t I, int k) { return popcount(I & ((1u << k) - 1)) % 2 ? -1 : 1; }

Rational det(RMat m) {
    int n = static_cast<int>(m.size());
    Rational d = 1;
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int r = c; r < n; ++r)
            if (!is_zero(m[r][c])) { p = r; break; }
        if (p < 0) return 0;
        if (p != c) {
            std::swap(m[p], m[c]);
            d = -d;
        }
        d *= m[c][c];
        for (int r = c + 1; r < n; ++r) {
            if (is_zero(m[r][c])) continue;
            Rational f = m[r][c] / m[c][c];
            for (int j = c; j < n; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return d;
}

template <bool V>
int min_coef_degree(const Formal<V>& a) {
    int d = kInf;
    for (const auto& kv : a.terms()) d = std::min(d, total_degree(kv.first.mono));
    return d;
}

Exps add_exps(const Exps& a, const Exps& b) {
    Exps r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

}  // namespace

template <bool V>
Formal<V> Formal<V>::one(int n, int deg_trunc) {
    Formal f(n, deg_trunc);
    f.add(Exps(2 * n, 0), 0, HUSeries::constant(1));
    return f;
}

template <bool V>
Formal<V> Formal<V>::basis(int n, const Exps& mono, std::uint32_t mask, const HUSeries& c, int deg_trunc) {
    Formal f(n, deg_trunc);
    f.add(mono, mask, c);
    return f;
}

template <bool V>
void Formal<V>::add(const Exps& mono, std::uint32_t mask, const HUSeries& c) {
    if (c.is_zero() || total_degree(mono) >= trunc_) return;
    auto [it, fresh] = terms_.try_emplace(FKey{mono, mask}, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

template <bool V>
void Formal<V>::set_trunc(int t) {
    trunc_ = t;
    for (auto it = terms_.begin(); it != terms_.end();)
        it = total_degree(it->first.mono) >= t ? terms_.erase(it) : std::next(it);
}

template <bool V>
Formal<V>& Formal<V>::operator+=(const Formal& o) {
    if (n_ != o.n_) fail("DimensionMismatch", "n " + std::to_string(n_) + " vs " + std::to_string(o.n_));
    if (o.trunc_ < trunc_) set_trunc(o.trunc_);
    for (const auto& [k, c] : o.terms_) add(k.mono, k.mask, c);
    check_terms(terms_.size());
    return *this;
}

template <bool V>
Formal<V>& Formal<V>::operator-=(const Formal& o) {
    return *this += -o;
}

template <bool V>
Formal<V> Formal<V>::operator-() const {
    Formal r = *this;
    for (auto& kv : r.terms_) kv.second = -kv.second;
    return r;
}

template <bool V>
Formal<V> Formal<V>::scaled(const HUSeries& s) const {
    Formal r(n_, trunc_);
    for (const auto& [k, c] : terms_) r.add(k.mono, k.mask, c * s);
    return r;
}

template <bool V>
Formal<V> Formal<V>::scaled(const Rational& s) const {
    Formal r(n_, trunc_);
    for (const auto& [k, c] : terms_) r.add(k.mono, k.mask, c * s);
    return r;
}

template <bool V>
Formal<V> Formal<V>::degree_part(int i) const {
    Formal r(n_, trunc_);
    for (const auto& [k, c] : terms_)
        if (popcount(k.mask) == i) r.terms_.emplace(k, c);
    return r;
}

template <bool V>
Formal<V> Formal<V>::coef_degree_part(int d) const {
    Formal r(n_, trunc_);
    for (const auto& [k, c] : terms_)
        if (total_degree(k.mono) == d) r.terms_.emplace(k, c);
    return r;
}

template <bool V>
int Formal<V>::max_coef_degree() const {
    int d = -1;
    for (const auto& kv : terms_) d = std::max(d, total_degree(kv.first.mono));
    return d;
}

template <bool V>
bool Formal<V>::operator==(const Formal& o) const {
    if (n_ != o.n_) return false;
    int t = std::min(trunc_, o.trunc_);
    Formal a = *this, b = o;
    a.set_trunc(t);
    b.set_trunc(t);
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
        if (!(i->first == j->first) || !i->second.agrees(j->second)) return false;
    return true;
}

template class Formal<false>;
template class Formal<true>;

FormalForm wedge(const FormalForm& a, const FormalForm& b) {
    if (a.n() != b.n()) fail("DimensionMismatch", "wedge");
    int t = std::min(sat_add(a.trunc(), min_coef_degree(b)), sat_add(b.trunc(), min_coef_degree(a)));
    t = std::max(t, std::min(a.trunc(), b.trunc()));
    FormalForm r(a.n(), t);
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) {
            if (ka.mask & kb.mask) continue;
            HUSeries c = ca * cb;
            if (merge_sign(ka.mask, kb.mask) < 0) c = -c;
            r.add(add_exps(ka.mono, kb.mono), ka.mask | kb.mask, c);
        }
    check_terms(r.size());
    return r;
}

FormalForm d_de_rham(const FormalForm& a) {
    int nv = 2 * a.n();
    FormalForm r(a.n(), a.trunc() >= kInf / 2 ? kInf : a.trunc() - 1);
    for (const auto& [k, c] : a.terms())
        for (int v = 0; v < nv; ++v) {
            if (!k.mono[v] || (k.mask >> v & 1u)) continue;
            Exps m = k.mono;
            m[v] -= 1;
            HUSeries cc = c * Rational(k.mono[v] * below_sign(k.mask, v));
            r.add(m, k.mask | (1u << v), cc);
        }
    return r;
}

FormalForm contract(const PolyVec& v, const FormalForm& a) {
    if (v.n() != a.n()) fail("DimensionMismatch", "contract");
    int t = std::min(sat_add(a.trunc(), min_coef_degree(v)), sat_add(v.trunc(), min_coef_degree(a)));
    t = std::max(t, std::min(a.trunc(), v.trunc()));
    FormalForm r(a.n(), t);
    for (const auto& [kv, cv] : v.terms())
        for (const auto& [ka, ca] : a.terms()) {
            if ((kv.mask & ka.mask) != kv.mask) continue;
            // iota_{d_k1 ^ ... ^ d_km} = iota_{d_k1} o ... o iota_{d_km}
            std::uint32_t mask = ka.mask;
            int sign = 1;
            for (int b = 31; b >= 0; --b) {
                if (!(kv.mask >> b & 1u)) continue;
                sign *= below_sign(mask, b);
                mask &= ~(1u << b);
            }
            HUSeries c = cv * ca;
            if (sign < 0) c = -c;
            r.add(add_exps(kv.mono, ka.mono), mask, c);
        }
    check_terms(r.size());
    return r;
}

FormalForm omega_form(int n) {
    FormalForm r(n);
    for (int i = 0; i < n; ++i) r.add(Exps(2 * n, 0), (1u << i) | (1u << (n + i)), HUSeries::constant(1));
    return r;
}

FormalForm alpha_form(int n) {
    FormalForm r(n);
    for (int i = 0; i < n; ++i) {
        Exps x(2 * n, 0), y(2 * n, 0);
        x[i] = 1;
        y[n + i] = 1;
        r.add(x, 1u << (n + i), HUSeries::constant(Rational(1, 2)));
        r.add(y, 1u << i, HUSeries::constant(Rational(-1, 2)));
    }
    return r;
}

PolyVec pi_bivector(int n) {
    PolyVec r(n);
    for (int i = 0; i < n; ++i) r.add(Exps(2 * n, 0), (1u << i) | (1u << (n + i)), HUSeries::constant(1));
    return r;
}

PolyVec euler_field(int n) {
    PolyVec r(n);
    for (int v = 0; v < 2 * n; ++v) {
        Exps m(2 * n, 0);
        m[v] = 1;
        r.add(m, 1u << v, HUSeries::constant(1));
    }
    return r;
}

FormalForm function_form(const QPoly& f, int deg_trunc) {
    if (f.nvars() % 2) fail("DimensionMismatch", "odd variable count");
    FormalForm r(f.nvars() / 2, std::min(deg_trunc, f.trunc()));
    for (const auto& [e, c] : f.terms()) r.add(e, 0, HUSeries::constant(c));
    return r;
}

FormalForm iota_pi(const FormalForm& a) { return contract(pi_bivector(a.n()), a); }

FormalForm lie_derivative_pi(const FormalForm& a) {
    return d_de_rham(iota_pi(a)) - iota_pi(d_de_rham(a));
}

FormalForm euler_primitive(const FormalForm& b) {
    if (b.is_zero()) return b;
    if (!d_de_rham(b).is_zero()) fail("NotClosed", "euler_primitive needs a closed form");
    int k = -1, i = -1;
    for (const auto& kv : b.terms()) {
        int kk = total_degree(kv.first.mono), ii = popcount(kv.first.mask);
        if (k < 0) {
            k = kk;
            i = ii;
        } else if (kk != k || ii != i) {
            fail("NotHomogeneous", "euler_primitive needs a homogeneous form");
        }
    }
    if (k + i == 0) fail("ZeroWeight", "constant function has no primitive");
    return contract(euler_field(b.n()), b).scaled(Rational(1, k + i));
}

namespace {

// pi(dz_a, dz_b) = iota_pi(dz_a ^ dz_b) for pi = sum d/dx_i ^ d/dy_i.
Rational pi_pair(int a, int b, int n) {
    if (a < n && b == a + n) return -1;
    if (a >= n && b == a - n) return 1;
    return 0;
}

std::vector<int> bits(std::uint32_t m) {
    std::vector<int> r;
    for (int b = 0; b < 32; ++b)
        if (m >> b & 1u) r.push_back(b);
    return r;
}

// star(dz_I) = sum_J s_J dz_J, from beta ^ star(alpha) = (omega^n/n!) <beta, alpha>.
std::map<std::uint32_t, Rational> star_basis(std::uint32_t I, int n) {
    std::map<std::uint32_t, Rational> out;
    std::uint32_t full = (n == 0) ? 0u : ((1u << (2 * n)) - 1);
    int i = popcount(I);
    auto Ib = bits(I);
    int vol_sign = (n * (n - 1) / 2) % 2 ? -1 : 1;  // omega^n/n! = vol_sign * vol
    int pair_sign = (i * (i + 1) / 2) % 2 ? -1 : 1;
    for (std::uint32_t K = 0; K <= full; ++K) {
        if (popcount(K) != i) continue;
        auto Kb = bits(K);
        RMat m = mat_zero(i, i);
        for (int r = 0; r < i; ++r)
            for (int c = 0; c < i; ++c) m[r][c] = pi_pair(Kb[r], Ib[c], n);
        Rational pairing = det(m) * pair_sign;
        if (is_zero(pairing)) continue;
        std::uint32_t J = full & ~K;
        out[J] += pairing * (merge_sign(K, J) * vol_sign);
    }
    return out;
}

}  // namespace

FormalForm sympl_star(const FormalForm& a, int n) {
    if (a.n() != n) fail("DimensionMismatch", "sympl_star");
    std::map<std::uint32_t, std::map<std::uint32_t, Rational>> cache;
    FormalForm r(n, a.trunc());
    for (const auto& [k, c] : a.terms()) {
        auto it = cache.find(k.mask);
        if (it == cache.end()) it = cache.emplace(k.mask, star_basis(k.mask, n)).first;
        for (const auto& [J, s] : it->second) r.add(k.mono, J, c * s);
    }
    return r;
}

FormalForm op_exp_wedge(const HUSeries& c, const FormalForm& a) {
    FormalForm w = omega_form(a.n()).scaled(c);
    FormalForm sum = a, term = a;
    for (int k = 1; k <= a.n() + 1; ++k) {
        term = wedge(w, term).scaled(Rational(1, k));
        if (term.is_zero()) break;
        sum += term;
    }
    return sum;
}

FormalForm op_exp_contract_pi(const HUSeries& c, const FormalForm& a) {
    FormalForm sum = a, term = a;
    for (int k = 1; k <= a.n() + 1; ++k) {
        term = iota_pi(term).scaled(c).scaled(Rational(1, k));
        if (term.is_zero()) break;
        sum += term;
    }
    return sum;
}

FormalForm regrade_u(const FormalForm& a) {
    FormalForm r(a.n(), a.trunc());
    for (const auto& [k, c] : a.terms()) r.add(k.mono, k.mask, c.shifted(0, -popcount(k.mask)));
    return r;
}

FormalForm regrade_h(const FormalForm& a, int n) {
    FormalForm s(n, a.trunc());
    for (const auto& [k, c] : a.terms()) s.add(k.mono, k.mask, c.shifted(popcount(k.mask) - n, -n));
    return sympl_star(s, n);
}

FormalForm hodge_homotopy_phi(const FormalForm& a, int n) {
    FormalForm al = alpha_form(n), w = omega_form(n);
    FormalForm sum(n, a.trunc());
    FormalForm wk = FormalForm::one(n);  // omega^k
    for (int k = 0; k <= n; ++k) {
        FormalForm t = wedge(wedge(al, wk), a);
        if (!t.is_zero()) sum += t.scaled(HUSeries::monomial(Rational(1) / factorial(k + 1), -(k + 1), -(k + 1)));
        wk = wedge(wk, w);
        if (wk.is_zero()) break;
    }
    return sum;
}

FormalForm lie_derivative(const PolyVec& mu, const FormalForm& a) {
    return d_de_rham(contract(mu, a)) + contract(mu, d_de_rham(a));
}

FormalForm pullback_exp(const PolyVec& mu, const FormalForm& a, int T) {
    for (const auto& kv : mu.terms()) {
        if (popcount(kv.first.mask) != 1) fail("NotVectorField", "pullback needs a vector field");
        if (total_degree(kv.first.mono) < 2)
            fail("NonNilpotentField", "vector field has a coefficient of degree <= 1");
    }
    FormalForm base = a;
    base.set_trunc(std::min(T, a.trunc()));
    FormalForm sum = base, term = base;
    for (int k = 1;; ++k) {
        if (k > T + 2) fail("NonNilpotentField", "exponential series did not terminate");
        term = lie_derivative(mu, term).scaled(Rational(1, k));
        term.set_trunc(base.trunc());
        if (term.is_zero()) break;
        sum += term;
    }
    return sum;
}

PolyVec ham_field(const QPoly& f, const PolyVec& pi) {
    int n = pi.n();
    if (f.nvars() != 2 * n) fail("DimensionMismatch", "ham_field");
    PolyVec r(n);
    for (const auto& [k, g] : pi.terms()) {
        if (popcount(k.mask) != 2) fail("NotBivector", "ham_field needs a bivector");
        auto b = bits(k.mask);
        int kk = b[0], l = b[1];
        QPoly fk = f.diff(kk), fl = f.diff(l);
        for (const auto& [e, c] : fk.terms()) r.add(add_exps(e, k.mono), 1u << l, g * c);
        for (const auto& [e, c] : fl.terms()) r.add(add_exps(e, k.mono), 1u << kk, g * (-c));
    }
    return r;
}

QPoly coef_poly(const FormalForm& a, std::uint32_t mask) {
    QPoly p(2 * a.n(), a.trunc());
    for (const auto& [k, c] : a.terms()) {
        if (k.mask != mask) continue;
        for (const auto& [hu, q] : c.terms()) {
            if (hu.first || hu.second) fail("NotRational", "coefficient depends on h or u");
            p.add(k.mono, q);
        }
    }
    return p;
}

}  // namespace wf
