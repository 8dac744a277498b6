#pragma once

#include "weylforge/errors.hpp"
#include "weylforge/rational.hpp"
#include "weylforge/series.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <type_traits>
#include <string>
#include <vector>

namespace wf {

using Exps = std::vector<int>;

inline int total_degree(const Exps& e) {
    int d = 0;
    for (int x : e) d += x;
    return d;
}

template <class C>
struct CoefTraits {
    static C from_int(int k) { return C(k); }
    static bool zero(const C& c) { return wf::is_zero(c); }
};
template <>
struct CoefTraits<HUSeries> {
    static HUSeries from_int(int k) { return HUSeries::constant(k); }
    static bool zero(const HUSeries& c) { return c.is_zero(); }
};

// Commutative polynomial in nv variables, truncated at total degree deg_trunc.
template <class C>
class SparsePoly {
public:
    using Terms = std::map<Exps, C>;
    static constexpr int kNoTrunc = 1 << 28;

    SparsePoly() = default;
    explicit SparsePoly(int nv, int deg_trunc = kNoTrunc) : nv_(nv), trunc_(deg_trunc) {}

    static SparsePoly constant(int nv, const C& c, int deg_trunc = kNoTrunc) {
        SparsePoly p(nv, deg_trunc);
        p.add(Exps(nv, 0), c);
        return p;
    }
    static SparsePoly var(int nv, int i, int deg_trunc = kNoTrunc) {
        SparsePoly p(nv, deg_trunc);
        Exps e(nv, 0);
        e[i] = 1;
        p.add(e, CoefTraits<C>::from_int(1));
        return p;
    }

    int nvars() const { return nv_; }
    int trunc() const { return trunc_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    C coef(const Exps& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? CoefTraits<C>::from_int(0) : it->second;
    }

    void add(const Exps& e, const C& c) {
        if (total_degree(e) >= trunc_ || zeroish(c)) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (zeroish(it->second)) terms_.erase(it);
        }
    }

    void set_trunc(int t) {
        trunc_ = t;
        for (auto it = terms_.begin(); it != terms_.end();)
            it = total_degree(it->first) >= t ? terms_.erase(it) : std::next(it);
    }

    SparsePoly homogeneous(int d) const {
        SparsePoly p(nv_, trunc_);
        for (const auto& [e, c] : terms_)
            if (total_degree(e) == d) p.terms_.emplace(e, c);
        return p;
    }

    SparsePoly& operator+=(const SparsePoly& o) {
        match(o);
        if (o.trunc_ < trunc_) set_trunc(o.trunc_);
        for (const auto& [e, c] : o.terms_) add(e, c);
        return *this;
    }
    SparsePoly& operator-=(const SparsePoly& o) {
        match(o);
        if (o.trunc_ < trunc_) set_trunc(o.trunc_);
        for (const auto& [e, c] : o.terms_) add(e, -c);
        return *this;
    }
    SparsePoly operator-() const {
        SparsePoly p = *this;
        for (auto& kv : p.terms_) kv.second = -kv.second;
        return p;
    }
    template <class S>
    SparsePoly& scale(const S& s) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second = it->second * s;
            it = zeroish(it->second) ? terms_.erase(it) : std::next(it);
        }
        return *this;
    }
    friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) { return a += b; }
    friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) { return a -= b; }
    friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
        a.match(b);
        SparsePoly r(a.nv_, std::min(a.trunc_, b.trunc_));
        Exps e(a.nv_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                for (int i = 0; i < a.nv_; ++i) e[i] = ea[i] + eb[i];
                r.add(e, ca * cb);
            }
        check_terms(r.size());
        return r;
    }
    bool operator==(const SparsePoly& o) const { return nv_ == o.nv_ && terms_ == o.terms_; }
    bool operator!=(const SparsePoly& o) const { return !(*this == o); }

    SparsePoly diff(int i) const {
        SparsePoly p(nv_, trunc_);
        for (const auto& [e, c] : terms_) {
            if (e[i] == 0) continue;
            Exps f = e;
            f[i] -= 1;
            p.add(f, c * CoefTraits<C>::from_int(e[i]));
        }
        return p;
    }

    int max_degree() const {
        int d = -1;
        for (const auto& kv : terms_) d = std::max(d, total_degree(kv.first));
        return d;
    }
    int min_degree() const {
        int d = 1 << 30;
        for (const auto& kv : terms_) d = std::min(d, total_degree(kv.first));
        return d;
    }

private:
    static bool zeroish(const C& c) { return CoefTraits<C>::zero(c); }
    void match(const SparsePoly& o) const {
        if (nv_ != o.nv_) fail("VariableCountMismatch", std::to_string(nv_) + " vs " + std::to_string(o.nv_));
    }

    Terms terms_;
    int nv_ = 0;
    int trunc_ = kNoTrunc;
};

using QPoly = SparsePoly<Rational>;

}  // namespace wf
