#include "weylforge/errors.hpp"
#include "weylforge/rational.hpp"

#include <cstdlib>

namespace wf {

namespace {
std::size_t g_cap = 0;
}

std::size_t max_terms() {
    if (g_cap == 0) {
        g_cap = 1000000;
        if (const char* s = std::getenv("WEYLFORGE_MAX_TERMS")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(s, &end, 10);
            if (end != s && *end == '\0' && v > 0) g_cap = static_cast<std::size_t>(v);
        }
    }
    return g_cap;
}

void set_max_terms(std::size_t cap) { g_cap = cap; }

Rational parse_rational(const std::string& s) {
    auto valid_int = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    auto slash = s.find('/');
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+')
        fail("MalformedInput", "bad rational '" + s + "'");
    if (num[0] == '+') num = num.substr(1);
    Integer n(num, 10), d(den, 10);
    if (d == 0) fail("MalformedInput", "zero denominator in '" + s + "'");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational factorial(int n) {
    Integer r = 1;
    for (int i = 2; i <= n; ++i) r *= i;
    return Rational(r);
}

Rational binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return Rational(r);
}

bool rational_sqrt(const Rational& q, Rational& out) {
    if (sgn(q) < 0) return false;
    Integer n = q.get_num(), d = q.get_den();
    if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return false;
    Integer rn = sqrt(n), rd = sqrt(d);
    out = Rational(rn, rd);
    out.canonicalize();
    return true;
}

RMat mat_zero(int r, int c) { return RMat(r, RVec(c, Rational(0))); }

RMat mat_identity(int n) {
    RMat m = mat_zero(n, n);
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

RMat mat_mul(const RMat& a, const RMat& b) {
    int r = static_cast<int>(a.size());
    int k = r ? static_cast<int>(a[0].size()) : 0;
    int c = b.empty() ? 0 : static_cast<int>(b[0].size());
    if (static_cast<int>(b.size()) != k) fail("SizeMismatch", "mat_mul");
    RMat m = mat_zero(r, c);
    for (int i = 0; i < r; ++i)
        for (int l = 0; l < k; ++l) {
            if (is_zero(a[i][l])) continue;
            for (int j = 0; j < c; ++j) m[i][j] += a[i][l] * b[l][j];
        }
    return m;
}

RMat mat_add(const RMat& a, const RMat& b) {
    RMat m = a;
    if (a.size() != b.size()) fail("SizeMismatch", "mat_add");
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) m[i][j] += b[i][j];
    return m;
}

RMat mat_sub(const RMat& a, const RMat& b) { return mat_add(a, mat_scale(b, -1)); }

RMat mat_scale(const RMat& a, const Rational& s) {
    RMat m = a;
    for (auto& row : m)
        for (auto& x : row) x *= s;
    return m;
}

RMat mat_transpose(const RMat& a) {
    if (a.empty()) return a;
    RMat m = mat_zero(static_cast<int>(a[0].size()), static_cast<int>(a.size()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) m[j][i] = a[i][j];
    return m;
}

RMat mat_commutator(const RMat& a, const RMat& b) { return mat_sub(mat_mul(a, b), mat_mul(b, a)); }

Rational mat_trace(const RMat& a) {
    Rational t = 0;
    for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
    return t;
}

bool mat_is_zero(const RMat& a) {
    for (const auto& row : a)
        for (const auto& x : row)
            if (!is_zero(x)) return false;
    return true;
}

std::vector<int> rref(RMat& m) {
    std::vector<int> piv;
    int rows = static_cast<int>(m.size());
    if (!rows) return piv;
    int cols = static_cast<int>(m[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = -1;
        for (int i = r; i < rows; ++i)
            if (!is_zero(m[i][c])) { p = i; break; }
        if (p < 0) continue;
        std::swap(m[r], m[p]);
        Rational inv = 1 / m[r][c];
        for (int j = c; j < cols; ++j) m[r][j] *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || is_zero(m[i][c])) continue;
            Rational f = m[i][c];
            for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

int mat_rank(RMat m) { return static_cast<int>(rref(m).size()); }

std::vector<RVec> nullspace(const RMat& m0) {
    RMat m = m0;
    int cols = m.empty() ? 0 : static_cast<int>(m[0].size());
    auto piv = rref(m);
    std::vector<bool> is_piv(cols, false);
    for (int c : piv) is_piv[c] = true;
    std::vector<RVec> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        RVec v(cols, Rational(0));
        v[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

bool solve_linear(const RMat& m, const RVec& b, RVec& x) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    RMat aug = m;
    for (int i = 0; i < rows; ++i) aug[i].push_back(b[i]);
    auto piv = rref(aug);
    if (!piv.empty() && piv.back() == cols) return false;
    x.assign(cols, Rational(0));
    for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug[r][cols];
    return true;
}

RMat mat_inverse(const RMat& m) {
    int n = static_cast<int>(m.size());
    RMat aug = m;
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(aug[i].size()) != n) fail("SizeMismatch", "mat_inverse");
        for (int j = 0; j < n; ++j) aug[i].push_back(i == j ? 1 : 0);
    }
    auto piv = rref(aug);
    if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) fail("Singular", "matrix not invertible");
    RMat inv = mat_zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv[i][j] = aug[i][n + j];
    return inv;
}

}  // namespace wf
