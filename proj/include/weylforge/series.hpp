#pragma once

#include "weylforge/rational.hpp"

#include <climits>
#include <map>
#include <string>
#include <utility>

namespace wf {

// Truncated Laurent series in h and u over Q.  Terms with h-exponent >= h_trunc
// (or u-exponent >= u_trunc) are unrepresented.  Tag Z marks a univariate z-series
// living in the h slot (u unused); genus code uses it.
class HUSeries {
public:
    enum class Ring { HU, Z };
    static constexpr int kNoTrunc = INT_MAX / 4;
    using Key = std::pair<int, int>;  // (h, u)
    using Terms = std::map<Key, Rational>;

    HUSeries() = default;
    explicit HUSeries(int h_trunc, int u_trunc = kNoTrunc, Ring ring = Ring::HU)
        : h_trunc_(h_trunc), u_trunc_(u_trunc), ring_(ring) {}

    static HUSeries constant(const Rational& c, int h_trunc = kNoTrunc, int u_trunc = kNoTrunc);
    static HUSeries monomial(const Rational& c, int h, int u, int h_trunc = kNoTrunc,
                             int u_trunc = kNoTrunc);
    // z-series helpers: coefficient list c_0 + c_1 z + ... known mod z^trunc.
    static HUSeries zseries(const RVec& coeffs, int trunc);
    static HUSeries zvar(int trunc);

    int h_trunc() const { return h_trunc_; }
    int u_trunc() const { return u_trunc_; }
    Ring ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }

    Rational coef(int h, int u = 0) const;
    void add_term(int h, int u, const Rational& c);
    void set_trunc(int h_trunc, int u_trunc);
    HUSeries truncated(int h_trunc, int u_trunc = kNoTrunc) const;
    HUSeries with_ring(Ring r) const;

    int min_h() const;  // requires non-empty

    HUSeries operator-() const;
    HUSeries& operator+=(const HUSeries& o);
    HUSeries& operator-=(const HUSeries& o);
    HUSeries& operator*=(const Rational& c);
    friend HUSeries operator+(HUSeries a, const HUSeries& b) { return a += b; }
    friend HUSeries operator-(HUSeries a, const HUSeries& b) { return a -= b; }
    friend HUSeries operator*(HUSeries a, const Rational& c) { return a *= c; }
    friend HUSeries operator*(const Rational& c, HUSeries a) { return a *= c; }
    friend HUSeries operator*(const HUSeries& a, const HUSeries& b);

    // Multiply by h^i u^j (shifts truncation too).
    HUSeries shifted(int i, int j) const;

    // Exact structural equality (terms and truncations).
    bool operator==(const HUSeries& o) const;
    // Equality modulo the coarser of the two truncations.
    bool agrees(const HUSeries& o) const;

    std::string str() const;

private:
    Terms terms_;
    int h_trunc_ = kNoTrunc;
    int u_trunc_ = kNoTrunc;
    Ring ring_ = Ring::HU;
};

HUSeries series_mul(const HUSeries& a, const HUSeries& b);

enum class Transcend { Inv, Sqrt, Exp, Log };
HUSeries series_transcend(Transcend kind, const HUSeries& s);
inline HUSeries series_inv(const HUSeries& s) { return series_transcend(Transcend::Inv, s); }
inline HUSeries series_sqrt(const HUSeries& s) { return series_transcend(Transcend::Sqrt, s); }
inline HUSeries series_exp(const HUSeries& s) { return series_transcend(Transcend::Exp, s); }
inline HUSeries series_log(const HUSeries& s) { return series_transcend(Transcend::Log, s); }

// z-series accessors: coefficient vector of length trunc.
RVec zcoeffs(const HUSeries& s);

}  // namespace wf
