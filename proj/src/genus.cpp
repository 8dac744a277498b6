#include "weylforge/genus.hpp"

#include "weylforge/errors.hpp"
#include "weylforge/poly.hpp"

#include <sstream>

namespace wf {

namespace {

ChernClassExpr::Mono mono_mul(const ChernClassExpr::Mono& a, const ChernClassExpr::Mono& b) {
    ChernClassExpr::Mono r;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i].first < b[j].first))
            r.push_back(a[i++]);
        else if (i == a.size() || b[j].first < a[i].first)
            r.push_back(b[j++]);
        else {
            r.push_back({a[i].first, a[i].second + b[j].second});
            ++i;
            ++j;
        }
    }
    return r;
}

void merge_gens(std::map<std::string, int>& into, const std::map<std::string, int>& from) {
    for (const auto& [n, deg] : from) {
        auto [it, fresh] = into.emplace(n, deg);
        if (!fresh && it->second != deg) fail("DimensionMismatch", "generator " + n + " used with two degrees");
    }
}

}  // namespace

ChernClassExpr ChernClassExpr::constant(const HUSeries& c, int d) {
    ChernClassExpr e(d);
    e.add({}, c);
    return e;
}

ChernClassExpr ChernClassExpr::generator(const std::string& name, int degree, int d) {
    if (degree < 1) fail("PreconditionViolated", "generators have positive degree");
    ChernClassExpr e(d);
    e.declare(name, degree);
    e.add({{name, 1}}, HUSeries::constant(1));
    return e;
}

void ChernClassExpr::declare(const std::string& name, int degree) { merge_gens(gens_, {{name, degree}}); }

int ChernClassExpr::degree(const Mono& m) const {
    int d = 0;
    for (const auto& [n, k] : m) {
        auto it = gens_.find(n);
        if (it == gens_.end()) fail("Internal", "undeclared generator " + n);
        d += it->second * k;
    }
    return d;
}

HUSeries ChernClassExpr::coef(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? HUSeries() : it->second;
}

void ChernClassExpr::add(const Mono& m, const HUSeries& c) {
    if (c.is_zero() || degree(m) > d_) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ChernClassExpr& ChernClassExpr::operator+=(const ChernClassExpr& o) {
    merge_gens(gens_, o.gens_);
    if (o.d_ < d_) *this = truncated(o.d_);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

ChernClassExpr& ChernClassExpr::operator-=(const ChernClassExpr& o) { return *this += -o; }

ChernClassExpr ChernClassExpr::operator-() const {
    ChernClassExpr r = *this;
    for (auto& kv : r.terms_) kv.second = -kv.second;
    return r;
}

ChernClassExpr operator*(const ChernClassExpr& a, const ChernClassExpr& b) {
    ChernClassExpr r(std::min(a.d_, b.d_));
    r.gens_ = a.gens_;
    merge_gens(r.gens_, b.gens_);
    for (const auto& [ma, ca] : a.terms_)
        for (const auto& [mb, cb] : b.terms_) {
            auto m = mono_mul(ma, mb);
            if (r.degree(m) <= r.d_) r.add(m, ca * cb);
        }
    check_terms(r.terms_.size());
    return r;
}

ChernClassExpr ChernClassExpr::scaled(const HUSeries& s) const {
    ChernClassExpr r(d_);
    r.gens_ = gens_;
    for (const auto& [m, c] : terms_) r.add(m, c * s);
    return r;
}

ChernClassExpr ChernClassExpr::component(int k) const {
    ChernClassExpr r(d_);
    r.gens_ = gens_;
    for (const auto& [m, c] : terms_)
        if (degree(m) == k) r.terms_.emplace(m, c);
    return r;
}

ChernClassExpr ChernClassExpr::truncated(int d) const {
    ChernClassExpr r(std::min(d, d_));
    r.gens_ = gens_;
    for (const auto& [m, c] : terms_) r.add(m, c);
    return r;
}

ChernClassExpr ChernClassExpr::exp() const {
    if (!component(0).is_zero()) fail("NonNilpotentExponent", "exp needs a positive-degree argument");
    ChernClassExpr r = constant(Rational(1), d_), p = r;
    for (int k = 1; k <= d_; ++k) {
        p = (p * *this).scaled(Rational(1, k));
        if (p.is_zero()) break;
        r += p;
    }
    r.gens_.insert(gens_.begin(), gens_.end());
    return r;
}

ChernClassExpr ChernClassExpr::substitute(const std::map<std::string, ChernClassExpr>& sub) const {
    ChernClassExpr r(d_);
    for (const auto& [m, c] : terms_) {
        ChernClassExpr t = constant(c, d_);
        for (const auto& [n, k] : m) {
            auto it = sub.find(n);
            ChernClassExpr base = it == sub.end() ? generator(n, gens_.at(n), d_) : it->second;
            for (int i = 0; i < k; ++i) t = t * base;
        }
        r += t;
    }
    return r;
}

bool ChernClassExpr::operator==(const ChernClassExpr& o) const {
    int d = std::min(d_, o.d_);
    ChernClassExpr diff = truncated(d) - o.truncated(d);
    return diff.is_zero();
}

std::string ChernClassExpr::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (const auto& [n, k] : m) {
            os << "*" << n;
            if (k > 1) os << "^" << k;
        }
    }
    return os.str();
}

std::vector<ChernClassExpr> chern_classes(const std::string& bundle, int rank, int d) {
    std::vector<ChernClassExpr> c{ChernClassExpr::constant(Rational(1), d)};
    for (int k = 1; k <= d; ++k)
        c.push_back(k <= rank ? ChernClassExpr::generator(bundle + ".c" + std::to_string(k), k, d)
                              : ChernClassExpr(d));
    return c;
}

std::vector<ChernClassExpr> power_sums(const std::vector<ChernClassExpr>& c, const Rational& rank, int d) {
    std::vector<ChernClassExpr> p{ChernClassExpr::constant(rank, d)};
    auto cc = [&](int k) { return k < static_cast<int>(c.size()) ? c[k] : ChernClassExpr(d); };
    for (int k = 1; k <= d; ++k) {
        ChernClassExpr s = cc(k).scaled(Rational(k % 2 ? k : -k));
        for (int i = 1; i < k; ++i) s += (cc(i) * p[k - i]).scaled(Rational(i % 2 ? 1 : -1));
        p.push_back(s);
    }
    return p;
}

std::vector<ChernClassExpr> elementary_from_power_sums(const std::vector<ChernClassExpr>& p, int d) {
    std::vector<ChernClassExpr> e{ChernClassExpr::constant(Rational(1), d)};
    for (int k = 1; k <= d; ++k) {
        ChernClassExpr s(d);
        for (int i = 1; i <= k; ++i) s += (e[k - i] * p[i]).scaled(Rational(i % 2 ? 1 : -1));
        e.push_back(s.scaled(Rational(1, k)));
    }
    return e;
}

ChernClassExpr genus_from_chern(const HUSeries& G, const std::vector<ChernClassExpr>& c, int d) {
    if (G.coef(0) != 1) fail("NonUnitConstantTerm", "genus series must start with 1");
    if (G.h_trunc() <= d) fail("PreconditionViolated", "series known only mod z^" + std::to_string(G.h_trunc()));
    for (const auto& kv : G.terms())
        if (kv.first.first < 0 || kv.first.second != 0) fail("MalformedInput", "genus series must be a z-series");
    RVec l = zcoeffs(series_log(G.truncated(d + 1).with_ring(HUSeries::Ring::Z)));
    auto p = power_sums(c, Rational(0), d);
    ChernClassExpr s(d);
    for (int k = 1; k <= d; ++k)
        if (!is_zero(l[k])) s += p[k].scaled(l[k]);
    return s.exp();
}

ChernClassExpr genus_from_series(const HUSeries& G, const std::string& bundle, int rank, int d) {
    return genus_from_chern(G, chern_classes(bundle, rank, d), d);
}

HUSeries ahat_series(int d) {
    RVec s(d + 1, Rational(0));
    for (int k = 0; 2 * k <= d; ++k) {
        Rational half_pow = 1;
        for (int i = 0; i < 2 * k; ++i) half_pow /= 2;
        s[2 * k] = half_pow / factorial(2 * k + 1);
    }
    return series_sqrt(series_inv(HUSeries::zseries(s, d + 1)));
}

HUSeries todd_series(int d) {
    RVec s(d + 1, Rational(0));
    for (int k = 0; k <= d; ++k) s[k] = Rational(k % 2 ? -1 : 1) / factorial(k + 1);
    return series_inv(HUSeries::zseries(s, d + 1));
}

ChernClassExpr chern_character_from(const std::vector<ChernClassExpr>& c, int rank, int d) {
    auto p = power_sums(c, Rational(rank), d);
    ChernClassExpr r = p[0];
    for (int k = 1; k <= d; ++k) r += p[k].scaled(Rational(1) / factorial(k));
    return r;
}

ChernClassExpr chern_character(const std::string& bundle, int rank, int d) {
    return chern_character_from(chern_classes(bundle, rank, d), rank, d);
}

ChernClassExpr tau_Y_assemble(const BundleSymbol& Q, const BundleSymbol& N, const BundleSymbol& E,
                              const std::vector<QuantClassTerm>& quant, int d) {
    if (Q.rank < 0 || Q.rank % 2 || N.rank < 0 || E.rank < 0)
        fail("PreconditionViolated", "Q has even rank, ranks are non-negative");
    ChernClassExpr r = genus_from_series(ahat_series(d), Q.name, Q.rank, d);
    if (d >= 1 && N.rank >= 1) r = r * chern_classes(N.name, N.rank, d)[1].scaled(Rational(-1, 2)).exp();
    ChernClassExpr w(d);
    for (const auto& t : quant) w += ChernClassExpr::generator(t.name, 1, d).scaled(HUSeries::monomial(1, t.hpow, 0));
    r = r * (-w).exp();
    return r * chern_character(E.name, E.rank, d);
}

namespace {

// prod_i G(sign_i z_{var_i}) in the root ring.
QPoly root_genus(const RVec& g, const std::vector<std::pair<int, int>>& roots, int nv, int d) {
    QPoly r = QPoly::constant(nv, Rational(1), d + 1);
    for (auto [v, sign] : roots) {
        QPoly f(nv, d + 1);
        for (int k = 0; k <= d; ++k) {
            Exps e(nv, 0);
            e[v] = k;
            f.add(e, (sign < 0 && k % 2) ? Rational(-g[k]) : g[k]);
        }
        r = r * f;
    }
    return r;
}

ChernClassExpr total(const std::vector<ChernClassExpr>& c, int d) {
    ChernClassExpr t(d);
    for (const auto& x : c) t += x;
    return t;
}

}  // namespace

bool grr_identity_check(int d, int p, int q) {
    if (d < 0 || p < 0 || q < 0) fail("PreconditionViolated", "negative size");
    RVec A = zcoeffs(ahat_series(d));
    RVec Tinv = zcoeffs(series_inv(todd_series(d)));
    RVec E(d + 1, Rational(0));
    for (int k = 0; k <= d; ++k) E[k] = Rational(k % 2 ? -1 : 1, 1 << k) / factorial(k);

    int nv = 2 * p + q;
    std::vector<std::pair<int, int>> Qr, Nr, Ndual;
    for (int i = 0; i < 2 * p; ++i) Qr.push_back({i, 1});
    for (int j = 0; j < q; ++j) {
        Nr.push_back({2 * p + j, 1});
        Ndual.push_back({2 * p + j, -1});
    }
    std::vector<std::pair<int, int>> TM = Ndual;
    TM.insert(TM.end(), Qr.begin(), Qr.end());
    TM.insert(TM.end(), Nr.begin(), Nr.end());
    QPoly tdinv = root_genus(Tinv, Nr, nv, d);
    QPoly lhs = root_genus(A, TM, nv, d) * tdinv;
    QPoly aN = root_genus(A, Nr, nv, d);
    QPoly mid = root_genus(A, Qr, nv, d) * aN * aN * tdinv;
    QPoly rhs = root_genus(A, Qr, nv, d) * root_genus(E, Nr, nv, d);
    bool roots_ok = lhs == mid && mid == rhs && root_genus(A, Ndual, nv, d) == aN;

    auto cQ = chern_classes("Q", 2 * p, d), cN = chern_classes("N", q, d);
    std::vector<ChernClassExpr> cNd;
    for (int k = 0; k <= d; ++k) cNd.push_back(cN[k].scaled(Rational(k % 2 ? -1 : 1)));
    ChernClassExpr ctot = total(cNd, d) * total(cQ, d) * total(cN, d);
    std::vector<ChernClassExpr> cTM;
    for (int k = 0; k <= d; ++k) cTM.push_back(ctot.component(k));
    HUSeries Ahat = ahat_series(d), Ti = series_inv(todd_series(d));
    ChernClassExpr gtd = genus_from_chern(Ti, cN, d), gN = genus_from_chern(Ahat, cN, d);
    ChernClassExpr clhs = genus_from_chern(Ahat, cTM, d) * gtd;
    ChernClassExpr cmid = genus_from_chern(Ahat, cQ, d) * gN * gN * gtd;
    ChernClassExpr crhs = genus_from_chern(Ahat, cQ, d);
    if (d >= 1) crhs = crhs * cN[1].scaled(Rational(-1, 2)).exp();
    bool chern_ok = clhs == cmid && cmid == crhs && genus_from_chern(Ahat, cNd, d) == gN;
    return roots_ok && chern_ok;
}

}  // namespace wf
