#include "weylforge/errors.hpp"
#include "weylforge/series.hpp"

#include <algorithm>
#include <sstream>

namespace wf {

namespace {

bool finite(int t) { return t < HUSeries::kNoTrunc / 2; }
int shift_trunc(int t, int a) { return finite(t) ? t + a : HUSeries::kNoTrunc; }

void check_ring(const HUSeries& a, const HUSeries& b) {
    if (a.ring() != b.ring()) fail("RingMismatch", "h/u series combined with z-series");
}

}  // namespace

HUSeries HUSeries::constant(const Rational& c, int h_trunc, int u_trunc) {
    HUSeries s(h_trunc, u_trunc);
    s.add_term(0, 0, c);
    return s;
}

HUSeries HUSeries::monomial(const Rational& c, int h, int u, int h_trunc, int u_trunc) {
    HUSeries s(h_trunc, u_trunc);
    s.add_term(h, u, c);
    return s;
}

HUSeries HUSeries::zseries(const RVec& coeffs, int trunc) {
    HUSeries s(trunc, kNoTrunc, Ring::Z);
    for (std::size_t i = 0; i < coeffs.size(); ++i) s.add_term(static_cast<int>(i), 0, coeffs[i]);
    return s;
}

HUSeries HUSeries::zvar(int trunc) {
    HUSeries s(trunc, kNoTrunc, Ring::Z);
    s.add_term(1, 0, 1);
    return s;
}

Rational HUSeries::coef(int h, int u) const {
    auto it = terms_.find({h, u});
    return it == terms_.end() ? Rational(0) : it->second;
}

void HUSeries::add_term(int h, int u, const Rational& c) {
    if (h >= h_trunc_ || u >= u_trunc_ || wf::is_zero(c)) return;
    auto [it, fresh] = terms_.try_emplace({h, u}, c);
    if (!fresh) {
        it->second += c;
        if (wf::is_zero(it->second)) terms_.erase(it);
    }
}

void HUSeries::set_trunc(int h_trunc, int u_trunc) {
    h_trunc_ = h_trunc;
    u_trunc_ = u_trunc;
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->first.first >= h_trunc_ || it->first.second >= u_trunc_)
            it = terms_.erase(it);
        else
            ++it;
    }
}

HUSeries HUSeries::truncated(int h_trunc, int u_trunc) const {
    HUSeries s = *this;
    s.set_trunc(std::min(h_trunc, h_trunc_), std::min(u_trunc, u_trunc_));
    return s;
}

HUSeries HUSeries::with_ring(Ring r) const {
    HUSeries s = *this;
    s.ring_ = r;
    return s;
}

int HUSeries::min_h() const { return terms_.begin()->first.first; }

HUSeries HUSeries::operator-() const {
    HUSeries s = *this;
    for (auto& kv : s.terms_) kv.second = -kv.second;
    return s;
}

HUSeries& HUSeries::operator+=(const HUSeries& o) {
    if (!o.terms_.empty() && !terms_.empty()) check_ring(*this, o);
    if (terms_.empty() && !o.terms_.empty()) ring_ = o.ring_;
    set_trunc(std::min(h_trunc_, o.h_trunc_), std::min(u_trunc_, o.u_trunc_));
    for (const auto& [k, c] : o.terms_) add_term(k.first, k.second, c);
    return *this;
}

HUSeries& HUSeries::operator-=(const HUSeries& o) { return *this += -o; }

HUSeries& HUSeries::operator*=(const Rational& c) {
    if (wf::is_zero(c)) {
        terms_.clear();
        return *this;
    }
    for (auto& kv : terms_) kv.second *= c;
    return *this;
}

HUSeries operator*(const HUSeries& a, const HUSeries& b) { return series_mul(a, b); }

HUSeries HUSeries::shifted(int i, int j) const {
    HUSeries s(shift_trunc(h_trunc_, i), shift_trunc(u_trunc_, j), ring_);
    for (const auto& [k, c] : terms_) s.terms_.emplace(Key{k.first + i, k.second + j}, c);
    return s;
}

bool HUSeries::operator==(const HUSeries& o) const {
    return h_trunc_ == o.h_trunc_ && u_trunc_ == o.u_trunc_ && terms_ == o.terms_;
}

bool HUSeries::agrees(const HUSeries& o) const {
    int ht = std::min(h_trunc_, o.h_trunc_), ut = std::min(u_trunc_, o.u_trunc_);
    return truncated(ht, ut).terms_ == o.truncated(ht, ut).terms_;
}

std::string HUSeries::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.get_str();
        const char* var = ring_ == Ring::Z ? "z" : "h";
        if (k.first) os << "*" << var << "^" << k.first;
        if (k.second) os << "*u^" << k.second;
    }
    if (finite(h_trunc_)) os << " + O(" << (ring_ == Ring::Z ? "z" : "h") << "^" << h_trunc_ << ")";
    if (finite(u_trunc_)) os << " + O(u^" << u_trunc_ << ")";
    return os.str();
}

HUSeries series_mul(const HUSeries& a, const HUSeries& b) {
    if (!a.is_zero() && !b.is_zero()) check_ring(a, b);
    // a known mod h^Ta, lowest exponent ma: the product error starts at Ta + mb.
    // Negative lowest exponents therefore cost precision.
    int ht = std::min(a.h_trunc(), b.h_trunc());
    int ut = std::min(a.u_trunc(), b.u_trunc());
    if (!a.is_zero() && !b.is_zero()) {
        int ma = a.min_h(), mb = b.min_h();
        ht = std::min({ht, shift_trunc(a.h_trunc(), mb), shift_trunc(b.h_trunc(), ma)});
        int ua = INT_MAX, ub = INT_MAX;
        for (const auto& kv : a.terms()) ua = std::min(ua, kv.first.second);
        for (const auto& kv : b.terms()) ub = std::min(ub, kv.first.second);
        ut = std::min({ut, shift_trunc(a.u_trunc(), ub), shift_trunc(b.u_trunc(), ua)});
    }
    HUSeries r(ht, ut, a.is_zero() ? b.ring() : a.ring());
    for (const auto& [ka, ca] : a.terms())
        for (const auto& [kb, cb] : b.terms()) r.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
    check_terms(r.size());
    return r;
}

namespace {

// Sum_k coeff(k) r^k until r^k vanishes under truncation.
template <class F>
HUSeries power_sum(const HUSeries& r, F coeff, const char* err) {
    for (const auto& kv : r.terms()) {
        auto [h, u] = kv.first;
        bool ok = (h > 0 && finite(r.h_trunc())) || (h <= 0 && u > 0 && finite(r.u_trunc()) && finite(r.h_trunc()));
        if (!ok) fail(err, "remainder is not nilpotent under the truncation");
    }
    HUSeries one = HUSeries::constant(1, r.h_trunc(), r.u_trunc()).with_ring(r.ring());
    HUSeries sum = one * coeff(0);
    HUSeries pw = one;
    for (int k = 1;; ++k) {
        if (k > 100000) fail(err, "series does not terminate");
        pw = pw * r;
        pw.set_trunc(r.h_trunc(), r.u_trunc());
        if (pw.is_zero()) break;
        sum += pw * coeff(k);
    }
    sum.set_trunc(r.h_trunc(), r.u_trunc());
    return sum;
}

}  // namespace

HUSeries series_transcend(Transcend kind, const HUSeries& s) {
    if (kind == Transcend::Exp) {
        if (s.is_zero()) return HUSeries::constant(1, s.h_trunc(), s.u_trunc()).with_ring(s.ring());
        for (const auto& kv : s.terms())
            if (kv.first.first + kv.first.second <= 0)
                fail("DivergentExp", "exp argument has a term of non-positive weight");
        try {
            return power_sum(s, [](int k) -> Rational { return Rational(1) / factorial(k); }, "DivergentExp");
        } catch (const Error& e) {
            fail("DivergentExp", e.what());
        }
    }
    if (s.is_zero()) fail("NonInvertibleLeadingTerm", "zero series");
    auto lead = *s.terms().begin();
    int a = lead.first.first, b = lead.first.second;
    Rational c = lead.second;
    HUSeries r = s.shifted(-a, -b) * (1 / c);
    r.add_term(0, 0, -1);
    switch (kind) {
        case Transcend::Inv: {
            HUSeries t = power_sum(r, [](int k) { return Rational(k % 2 ? -1 : 1); }, "NonInvertibleLeadingTerm");
            return t.shifted(-a, -b) * (1 / c);
        }
        case Transcend::Sqrt: {
            Rational rc;
            if (a % 2 || b % 2 || !rational_sqrt(c, rc))
                fail("NonSquareLeadingTerm", "leading term " + c.get_str() + " h^" + std::to_string(a));
            // binom(1/2, k)
            auto bin = [](int k) {
                Rational v = 1;
                for (int i = 0; i < k; ++i) v *= (Rational(1, 2) - i) / (i + 1);
                return v;
            };
            HUSeries t = power_sum(r, bin, "NonSquareLeadingTerm");
            return t.shifted(a / 2, b / 2) * rc;
        }
        case Transcend::Log: {
            if (a != 0 || b != 0 || c != 1) fail("NonInvertibleLeadingTerm", "log needs leading term 1");
            return power_sum(r, [](int k) { return k == 0 ? Rational(0) : Rational(k % 2 ? 1 : -1, k); },
                             "NonInvertibleLeadingTerm");
        }
        default:
            break;
    }
    fail("Internal", "unknown transcendental");
}

RVec zcoeffs(const HUSeries& s) {
    int n = s.h_trunc();
    if (!finite(n)) fail("Internal", "untruncated z-series");
    RVec v(std::max(n, 0), Rational(0));
    for (const auto& [k, c] : s.terms())
        if (k.first >= 0 && k.first < n) v[k.first] = c;
    return v;
}

}  // namespace wf
