#include "weylforge/liecoh.hpp"

#include "weylforge/errors.hpp"
#include "weylforge/genus.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace wf {

namespace {

RVec vzero(int n) { return RVec(n, Rational(0)); }

bool vis_zero(const RVec& v) {
    for (const auto& x : v)
        if (!is_zero(x)) return false;
    return true;
}

void vadd(RVec& a, const RVec& b, const Rational& s = Rational(1)) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += s * b[i];
}

RVec mat_vec(const RMat& m, const RVec& v) {
    RVec r = vzero(static_cast<int>(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) r[i] += m[i][j] * v[j];
    return r;
}

RVec basis_vec(int n, int i) {
    RVec v = vzero(n);
    v[i] = 1;
    return v;
}

// Sorts idx in place; returns the permutation sign, 0 on a repeat.
int sort_sign(std::vector<int>& idx) {
    int s = 1;
    for (std::size_t i = 1; i < idx.size(); ++i)
        for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
            if (idx[j - 1] == idx[j]) return 0;
            std::swap(idx[j - 1], idx[j]);
            s = -s;
        }
    for (std::size_t i = 1; i < idx.size(); ++i)
        if (idx[i - 1] == idx[i]) return 0;
    return s;
}

// Perfect matchings of 0..2k-1 as (i, j) pairs with the sign of i1 j1 i2 j2 ...
void matchings(std::vector<int> rest, std::vector<std::pair<int, int>>& cur, int sign,
               const std::function<void(const std::vector<std::pair<int, int>>&, int)>& f) {
    if (rest.empty()) {
        f(cur, sign);
        return;
    }
    int a = rest[0];
    for (std::size_t t = 1; t < rest.size(); ++t) {
        std::vector<int> r2;
        for (std::size_t s = 1; s < rest.size(); ++s)
            if (s != t) r2.push_back(rest[s]);
        cur.push_back({a, rest[t]});
        // moving rest[t] next to a passes t-1 elements
        matchings(r2, cur, (t - 1) % 2 ? -sign : sign, f);
        cur.pop_back();
    }
}

void for_each_matching(int k, const std::function<void(const std::vector<std::pair<int, int>>&, int)>& f) {
    std::vector<int> all(2 * k);
    std::iota(all.begin(), all.end(), 0);
    std::vector<std::pair<int, int>> cur;
    matchings(all, cur, 1, f);
}

// Sign of the shuffle placing the indices listed in first before the rest.
int shuffle_sign(const std::vector<int>& first, int total) {
    std::vector<int> perm = first;
    std::vector<bool> used(total, false);
    for (int i : first) used[i] = true;
    for (int i = 0; i < total; ++i)
        if (!used[i]) perm.push_back(i);
    int inv = 0;
    for (int i = 0; i < total; ++i)
        for (int j = i + 1; j < total; ++j)
            if (perm[i] > perm[j]) ++inv;
    return inv % 2 ? -1 : 1;
}

}  // namespace

// ---------------------------------------------------------------- LieAlgebra

LieAlgebra::LieAlgebra(int dim, std::vector<std::vector<RVec>> sc, std::vector<int> h, std::vector<std::string> labels,
                       int vdim, std::vector<RMat> action)
    : dim_(dim), sc_(std::move(sc)), h_(std::move(h)), labels_(std::move(labels)), vdim_(vdim), action_(std::move(action)) {
    if (dim_ < 0 || static_cast<int>(sc_.size()) != dim_) fail("MalformedInput", "structure constant shape");
    for (const auto& row : sc_) {
        if (static_cast<int>(row.size()) != dim_) fail("MalformedInput", "structure constant shape");
        for (const auto& v : row)
            if (static_cast<int>(v.size()) != dim_) fail("MalformedInput", "structure constant shape");
    }
    for (int i = 0; i < dim_; ++i)
        for (int j = 0; j < dim_; ++j)
            for (int k = 0; k < dim_; ++k)
                if (sc_[i][j][k] != -sc_[j][i][k]) fail("NotAntisymmetric", "bracket is not alternating");
    // Jacobi on basis triples.
    for (int a = 0; a < dim_; ++a)
        for (int b = a + 1; b < dim_; ++b)
            for (int c = b + 1; c < dim_; ++c) {
                RVec s = bracket(basis_vec(dim_, a), sc_[b][c]);
                vadd(s, bracket(basis_vec(dim_, b), sc_[c][a]));
                vadd(s, bracket(basis_vec(dim_, c), sc_[a][b]));
                if (!vis_zero(s)) fail("JacobiViolation", "basis triple");
            }
    std::sort(h_.begin(), h_.end());
    for (int i : h_)
        if (i < 0 || i >= dim_) fail("MalformedInput", "h index out of range");
    for (std::size_t a = 0; a < h_.size(); ++a)
        for (std::size_t b = 0; b < h_.size(); ++b)
            for (int k = 0; k < dim_; ++k)
                if (!is_zero(sc_[h_[a]][h_[b]][k]) && !in_h(k)) fail("NotSubalgebra", "h is not closed");
    if (labels_.empty())
        for (int i = 0; i < dim_; ++i) labels_.push_back("e" + std::to_string(i));
    if (!action_.empty()) {
        if (static_cast<int>(action_.size()) != dim_) fail("MalformedInput", "action size");
        for (const auto& m : action_) {
            if (static_cast<int>(m.size()) != vdim_) fail("MalformedInput", "action shape");
            for (const auto& r : m)
                if (static_cast<int>(r.size()) != vdim_) fail("MalformedInput", "action shape");
        }
        for (int i = 0; i < dim_; ++i)
            for (int j = 0; j < dim_; ++j) {
                RMat lhs = mat_commutator(action_[i], action_[j]);
                RMat rhs = mat_zero(vdim_, vdim_);
                for (int k = 0; k < dim_; ++k) rhs = mat_add(rhs, mat_scale(action_[k], sc_[i][j][k]));
                if (lhs != rhs) fail("NotAModule", "action does not respect the bracket");
            }
    }
}

RVec LieAlgebra::bracket(const RVec& a, const RVec& b) const {
    RVec r = vzero(dim_);
    for (int i = 0; i < dim_; ++i) {
        if (is_zero(a[i])) continue;
        for (int j = 0; j < dim_; ++j)
            if (!is_zero(b[j])) vadd(r, sc_[i][j], a[i] * b[j]);
    }
    return r;
}

bool LieAlgebra::in_h(int i) const { return std::binary_search(h_.begin(), h_.end(), i); }

RMat LieAlgebra::act(int i) const { return action_.empty() ? mat_zero(vdim_, vdim_) : action_[i]; }

RVec LieAlgebra::act(const RVec& g, const RVec& v) const {
    RVec r = vzero(vdim_);
    if (action_.empty()) return r;
    for (int i = 0; i < dim_; ++i)
        if (!is_zero(g[i])) vadd(r, mat_vec(action_[i], v), g[i]);
    return r;
}

LieAlgebra LieAlgebra::with_h(std::vector<int> h) const { return LieAlgebra(dim_, sc_, std::move(h), labels_, vdim_, action_); }

namespace {

std::vector<std::vector<RVec>> sc_zero(int n) { return std::vector<std::vector<RVec>>(n, std::vector<RVec>(n, vzero(n))); }

}  // namespace

LieAlgebra LieAlgebra::abelian(int n) { return LieAlgebra(n, sc_zero(n)); }

LieAlgebra LieAlgebra::sl2() {
    auto sc = sc_zero(3);
    auto set = [&](int i, int j, int k, int c) {
        sc[i][j][k] = c;
        sc[j][i][k] = -c;
    };
    set(0, 1, 2, 1);
    set(2, 0, 0, 2);
    set(2, 1, 1, -2);
    return LieAlgebra(3, sc, {2}, {"E", "F", "H"});
}

LieAlgebra LieAlgebra::gl(int m) {
    int n = m * m;
    auto sc = sc_zero(n);
    std::vector<std::string> labels;
    std::vector<int> h;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
            if (i == j) h.push_back(i * m + j);
            for (int k = 0; k < m; ++k)
                for (int l = 0; l < m; ++l) {
                    if (j == k) sc[i * m + j][k * m + l][i * m + l] += 1;
                    if (l == i) sc[i * m + j][k * m + l][k * m + j] -= 1;
                }
        }
    return LieAlgebra(n, sc, h, labels);
}

LieAlgebra LieAlgebra::borel3() {
    // basis I, E22, E33, E12, E13, E23 as 3x3 matrices
    std::vector<RMat> b(6, mat_zero(3, 3));
    for (int i = 0; i < 3; ++i) b[0][i][i] = 1;
    b[1][1][1] = 1;
    b[2][2][2] = 1;
    b[3][0][1] = 1;
    b[4][0][2] = 1;
    b[5][1][2] = 1;
    auto coords = [&](const RMat& m) {
        RVec v = vzero(6);
        v[0] = m[0][0];
        v[1] = m[1][1] - m[0][0];
        v[2] = m[2][2] - m[0][0];
        v[3] = m[0][1];
        v[4] = m[0][2];
        v[5] = m[1][2];
        return v;
    };
    auto sc = sc_zero(6);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) sc[i][j] = coords(mat_commutator(b[i], b[j]));
    return LieAlgebra(6, sc, {0}, {"I", "E22", "E33", "E12", "E13", "E23"});
}

// ---------------------------------------------------------------- cochains

RVec Cochain::at(std::vector<int> idx) const {
    int s = sort_sign(idx);
    if (s == 0) return vzero(vdim);
    auto it = table.find(idx);
    if (it == table.end()) return vzero(vdim);
    RVec r = it->second;
    if (s < 0)
        for (auto& x : r) x = -x;
    return r;
}

void Cochain::set(const std::vector<int>& idx, const RVec& v) {
    if (vis_zero(v))
        table.erase(idx);
    else
        table[idx] = v;
}

Cochain zero_cochain(int degree, int vdim) {
    Cochain c;
    c.degree = degree;
    c.vdim = vdim;
    return c;
}

RVec evaluate(const Cochain& c, const std::vector<RVec>& args) {
    if (static_cast<int>(args.size()) != c.degree) fail("ArityMismatch", "cochain degree " + std::to_string(c.degree));
    RVec out = vzero(c.vdim);
    std::vector<int> idx(c.degree);
    std::function<void(int, Rational)> rec = [&](int pos, Rational w) {
        if (pos == c.degree) {
            vadd(out, c.at(idx), w);
            return;
        }
        for (std::size_t k = 0; k < args[pos].size(); ++k) {
            if (is_zero(args[pos][k])) continue;
            idx[pos] = static_cast<int>(k);
            rec(pos + 1, w * args[pos][k]);
        }
    };
    rec(0, Rational(1));
    return out;
}

Cochain cochain_add(const Cochain& a, const Cochain& b) {
    if (a.degree != b.degree || a.vdim != b.vdim) fail("DimensionMismatch", "cochain sum");
    Cochain r = a;
    for (const auto& [k, v] : b.table) {
        RVec s = r.at(k);
        vadd(s, v);
        r.set(k, s);
    }
    return r;
}

Cochain cochain_scale(const Cochain& a, const Rational& s) {
    Cochain r = zero_cochain(a.degree, a.vdim);
    if (is_zero(s)) return r;
    for (const auto& [k, v] : a.table) {
        RVec w = v;
        for (auto& x : w) x *= s;
        r.table[k] = w;
    }
    return r;
}

std::vector<std::vector<int>> increasing_tuples(const std::vector<int>& from, int l) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (static_cast<int>(cur.size()) == l) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < from.size(); ++i) {
            cur.push_back(from[i]);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

namespace {

std::vector<int> all_indices(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

RVec d_lie_at(const Cochain& c, const LieAlgebra& g, const std::vector<int>& t) {
    int n = c.degree;
    RVec val = vzero(c.vdim);
    for (int i = 0; i <= n; ++i) {
        if (g.trivial_module()) break;
        std::vector<int> rest;
        for (int s = 0; s <= n; ++s)
            if (s != i) rest.push_back(t[s]);
        vadd(val, mat_vec(g.act(t[i]), c.at(rest)), Rational(i % 2 ? -1 : 1));
    }
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            const RVec& br = g.bracket(t[i], t[j]);
            std::vector<int> args{0};
            for (int s = 0; s <= n; ++s)
                if (s != i && s != j) args.push_back(t[s]);
            Rational sign((i + j) % 2 ? -1 : 1);
            for (int k = 0; k < g.dim(); ++k) {
                if (is_zero(br[k])) continue;
                args[0] = k;
                vadd(val, c.at(args), sign * br[k]);
            }
        }
    return val;
}

}  // namespace

Cochain d_lie(const Cochain& c, const LieAlgebra& g) {
    if (c.vdim != g.vdim()) fail("DimensionMismatch", "cochain values vs module");
    Cochain r = zero_cochain(c.degree + 1, c.vdim);
    for (const auto& t : increasing_tuples(all_indices(g.dim()), c.degree + 1)) r.set(t, d_lie_at(c, g, t));
    return r;
}

Cochain d_lie(const AnyCochain& c, const LieAlgebra& g) {
    if (std::holds_alternative<ProceduralCochain>(c)) fail("ProceduralBody", "d needs a tabulated cochain");
    return d_lie(std::get<Cochain>(c), g);
}

HUSeries d_lie_eval(const ProceduralCochain& c, const std::vector<GElement>& args) {
    int n = c.degree;
    if (static_cast<int>(args.size()) != n + 1) fail("ArityMismatch", "expected " + std::to_string(n + 1) + " arguments");
    HUSeries out = HUSeries::constant(0);
    for (int i = 0; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) {
            std::vector<GElement> a{g_bracket(args[i], args[j])};
            for (int s = 0; s <= n; ++s)
                if (s != i && s != j) a.push_back(args[s]);
            HUSeries v = c.eval(a);
            out += (i + j) % 2 ? -v : v;
        }
    return out;
}

namespace {

// (L_x c)(g_1..g_l) = x.c(..) - sum_i c(.., [x, g_i], ..) for a basis element x.
RVec lie_derivative_at(const Cochain& c, const LieAlgebra& g, int x, const std::vector<int>& t) {
    RVec val = mat_vec(g.act(x), c.at(t));
    for (std::size_t i = 0; i < t.size(); ++i) {
        const RVec& br = g.bracket(x, t[i]);
        std::vector<int> a = t;
        for (int k = 0; k < g.dim(); ++k) {
            if (is_zero(br[k])) continue;
            a[i] = k;
            vadd(val, c.at(a), -br[k]);
        }
    }
    return val;
}

}  // namespace

bool is_relative(const Cochain& c, const LieAlgebra& g) {
    for (const auto& [t, v] : c.table)
        for (int i : t)
            if (g.in_h(i)) return false;
    for (int x : g.h())
        for (const auto& t : increasing_tuples(all_indices(g.dim()), c.degree))
            if (!vis_zero(lie_derivative_at(c, g, x, t))) return false;
    return true;
}

Cochain curvature(const LieAlgebra& g, const RMat& pr) {
    int n = g.dim();
    if (static_cast<int>(pr.size()) != n) fail("DimensionMismatch", "projection size");
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k)
            if (!is_zero(pr[k][i]) && !g.in_h(k)) fail("NotProjection", "image leaves h");
        if (g.in_h(i))
            for (int k = 0; k < n; ++k)
                if (pr[k][i] != Rational(k == i ? 1 : 0)) fail("NotProjection", "not the identity on h");
    }
    Cochain C = zero_cochain(2, n);
    auto col = [&](int i) {
        RVec v = vzero(n);
        for (int k = 0; k < n; ++k) v[k] = pr[k][i];
        return v;
    };
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            RVec v = g.bracket(col(i), col(j));
            vadd(v, mat_vec(pr, g.bracket(i, j)), Rational(-1));
            C.set({i, j}, v);
        }
    return C;
}

InvariantPoly polarize(int l, std::function<Rational(const RVec&)> P) {
    InvariantPoly S;
    S.l = l;
    S.S = [l, P](const std::vector<RVec>& xs) -> Rational {
        if (static_cast<int>(xs.size()) != l) fail("ArityMismatch", "polarization");
        if (l == 0) return P(RVec{});
        Rational total = 0;
        int n = static_cast<int>(xs[0].size());
        for (unsigned mask = 1; mask < (1u << l); ++mask) {
            RVec s = vzero(n);
            for (int j = 0; j < l; ++j)
                if (mask >> j & 1) vadd(s, xs[j]);
            int sz = __builtin_popcount(mask);
            total += ((l - sz) % 2 ? -1 : 1) * P(s);
        }
        return total / factorial(l);
    };
    return S;
}

bool is_invariant(const InvariantPoly& S, const LieAlgebra& g, int samples) {
    std::mt19937 rng(7u);
    std::uniform_int_distribution<int> d(-3, 3);
    auto rh = [&] {
        RVec v = vzero(g.dim());
        for (int i : g.h()) v[i] = d(rng);
        return v;
    };
    for (int s = 0; s < samples; ++s) {
        RVec x = rh();
        std::vector<RVec> ys;
        for (int i = 0; i < S.l; ++i) ys.push_back(rh());
        Rational tot = 0;
        for (int i = 0; i < S.l; ++i) {
            auto a = ys;
            a[i] = g.bracket(x, ys[i]);
            tot += S.S(a);
        }
        if (!is_zero(tot)) return false;
    }
    return true;
}

Cochain chern_weil(const InvariantPoly& S, const LieAlgebra& g, const RMat& pr) {
    Cochain C = curvature(g, pr);
    int l = S.l;
    Cochain out = zero_cochain(2 * l, 1);
    for (const auto& t : increasing_tuples(all_indices(g.dim()), 2 * l)) {
        Rational v = 0;
        for_each_matching(l, [&](const std::vector<std::pair<int, int>>& m, int sign) {
            std::vector<RVec> xs;
            for (const auto& [a, b] : m) xs.push_back(C.at({t[a], t[b]}));
            v += sign * S.S(xs);
        });
        out.set(t, RVec{v});
    }
    return out;
}

Cochain cup(const Cochain& a, const Cochain& b, const LieAlgebra& g) {
    if (a.vdim != 1 || b.vdim != 1) fail("DimensionMismatch", "cup needs scalar cochains");
    int p = a.degree, q = b.degree;
    Cochain out = zero_cochain(p + q, 1);
    for (const auto& t : increasing_tuples(all_indices(g.dim()), p + q)) {
        Rational v = 0;
        for (const auto& first : increasing_tuples(all_indices(p + q), p)) {
            std::vector<int> ia, ib;
            std::vector<bool> used(p + q, false);
            for (int i : first) {
                ia.push_back(t[i]);
                used[i] = true;
            }
            for (int i = 0; i < p + q; ++i)
                if (!used[i]) ib.push_back(t[i]);
            v += shuffle_sign(first, p + q) * a.at(ia)[0] * b.at(ib)[0];
        }
        out.set(t, RVec{v});
    }
    return out;
}

Cochain cup_dp(const Cochain& a, const Cochain& b, const LieAlgebra& g) {
    if (a.degree % 2 || b.degree % 2) fail("PreconditionViolated", "divided-power cup needs even degrees");
    int x = a.degree / 2, y = b.degree / 2;
    return cochain_scale(cup(a, b, g), factorial(x) * factorial(y) / factorial(x + y));
}

ExactnessResult exactness_solve(const Cochain& c, const LieAlgebra& g, bool relative) {
    if (c.vdim != g.vdim()) fail("DimensionMismatch", "cochain values vs module");
    if (!d_lie(c, g).is_zero()) fail("NotClosed", "d c != 0");
    if (relative && !is_relative(c, g)) fail("NotRelative", "c is not a relative cochain");
    int l = c.degree, V = c.vdim;
    ExactnessResult res;
    res.primitive = zero_cochain(std::max(l - 1, 0), V);
    if (l == 0) {
        res.exact = c.is_zero();
        return res;
    }
    std::vector<int> allowed;
    for (int i = 0; i < g.dim(); ++i)
        if (!relative || !g.in_h(i)) allowed.push_back(i);
    auto unknowns = increasing_tuples(allowed, l - 1);
    auto rows = increasing_tuples(all_indices(g.dim()), l);
    auto inv_rows = relative ? increasing_tuples(all_indices(g.dim()), l - 1) : std::vector<std::vector<int>>{};
    int nu = static_cast<int>(unknowns.size()) * V;
    int nr = static_cast<int>(rows.size()) * V + static_cast<int>(g.h().size() * inv_rows.size()) * V;
    RMat A = mat_zero(nr, nu);
    RVec rhs = vzero(nr);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        RVec cv = c.at(rows[r]);
        for (int s = 0; s < V; ++s) rhs[r * V + s] = cv[s];
    }
    for (std::size_t u = 0; u < unknowns.size(); ++u)
        for (int s = 0; s < V; ++s) {
            Cochain b = zero_cochain(l - 1, V);
            b.set(unknowns[u], basis_vec(V, s));
            int col = static_cast<int>(u) * V + s;
            for (std::size_t r = 0; r < rows.size(); ++r) {
                RVec v = d_lie_at(b, g, rows[r]);
                for (int t = 0; t < V; ++t) A[r * V + t][col] = v[t];
            }
            int base = static_cast<int>(rows.size()) * V;
            for (int x : g.h())
                for (const auto& t : inv_rows) {
                    RVec v = lie_derivative_at(b, g, x, t);
                    for (int k = 0; k < V; ++k) A[base + k][col] = v[k];
                    base += V;
                }
        }
    res.rank_system = mat_rank(A);
    RMat aug = A;
    for (int r = 0; r < nr; ++r) aug[r].push_back(rhs[r]);
    res.rank_augmented = mat_rank(aug);
    RVec x;
    res.exact = res.rank_system == res.rank_augmented && solve_linear(A, rhs, x);
    if (res.exact)
        for (std::size_t u = 0; u < unknowns.size(); ++u) {
            RVec v(x.begin() + u * V, x.begin() + (u + 1) * V);
            res.primitive.set(unknowns[u], v);
        }
    return res;
}

// ---------------------------------------------------------------- class families

namespace {

std::vector<Rational> power_traces(const RMat& m, int k) {
    std::vector<Rational> t(k + 1, Rational(0));
    int n = static_cast<int>(m.size());
    t[0] = n;
    RMat p = mat_identity(n);
    for (int j = 1; j <= k; ++j) {
        p = mat_mul(p, m);
        t[j] = mat_trace(p);
    }
    return t;
}

}  // namespace

std::vector<MatPoly> class_ch_lie(int max_deg) {
    std::vector<MatPoly> out;
    for (int l = 0; l <= max_deg; ++l)
        out.push_back([l](const RMat& x) -> Rational { return power_traces(x, l)[l] / factorial(l); });
    return out;
}

MatPoly class_c1_lie() {
    return [](const RMat& x) -> Rational { return mat_trace(x); };
}

std::vector<MatPoly> class_ahat_lie(int max_deg) {
    RVec a = zcoeffs(series_log(ahat_series(max_deg)));
    std::vector<MatPoly> out;
    for (int l = 0; l <= max_deg; ++l)
        out.push_back([l, a](const RMat& y) -> Rational {
            auto t = power_traces(y, l);
            // E_l = (1/l) sum_j j a_j t_j E_{l-j}
            std::vector<Rational> E(l + 1, Rational(0));
            E[0] = 1;
            for (int m = 1; m <= l; ++m) {
                for (int j = 1; j <= m; ++j)
                    if (j < static_cast<int>(a.size())) E[m] += j * a[j] * t[j] * E[m - j];
                E[m] /= m;
            }
            return E[l];
        });
    return out;
}

// ---------------------------------------------------------------- procedural algebra

HComponents HComponents::operator+(const HComponents& o) const {
    return {mat_add(gle, o.gle), mat_add(glq, o.glq), mat_add(sp, o.sp), c0 + o.c0, aprime + o.aprime};
}

HComponents HComponents::scaled(const Rational& s) const {
    return {mat_scale(gle, s), mat_scale(glq, s), mat_scale(sp, s), c0 * s, aprime * s};
}

namespace {

std::vector<int> var_range(int lo, int hi) {
    std::vector<int> v;
    for (int i = lo; i < hi; ++i) v.push_back(i);
    return v;
}

WeylElement avg_diag(const GElement& g) {
    WeylElement d = g.mat.at(0, 0);
    for (int i = 1; i < g.e(); ++i) d += g.mat.at(i, i);
    return d * Rational(1, g.e());
}

Rational weyl_constant(const WeylElement& f) { return f.coef(WMono{}) + split_quadratic(f, var_range(0, f.n())).shift; }

}  // namespace

Rational projection_c0(const GElement& g) {
    Rational s = 0;
    for (int i = 0; i < g.e(); ++i) s += weyl_constant(g.mat.at(i, i));
    return s / g.e();
}

HComponents project_components(const GElement& g, int q) {
    int e = g.e(), n = g.p(), p = n - q;
    if (q < 0 || p < 0) fail("PreconditionViolated", "q out of range");
    HComponents h;
    auto pvars = var_range(q, n);
    h.gle = mat_zero(e, e);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) {
            const WeylElement& f = g.mat.at(i, j);
            h.gle[i][j] = f.coef(WMono{}) + split_quadratic(f, pvars).shift;
        }
    WeylElement d = avg_diag(g);
    h.glq = mat_zero(q, q);
    for (int i = 0; i < q; ++i)
        for (int j = 0; j < q; ++j) {
            WMono m;
            m.c = -1;
            m.a(i) += 1;
            m.b(j) += 1;
            h.glq[i][j] = d.coef(m);
        }
    h.sp = sp_action_matrix(split_quadratic(d, pvars).Q, p);
    h.c0 = projection_c0(g);
    h.aprime = project_h(g).aprime;
    return h;
}

HComponents curvature_components(const GElement& u, const GElement& v, int q) {
    HComponents a = project_components(u, q), b = project_components(v, q);
    HComponents w = project_components(g_bracket(u, v), q);
    HComponents c;
    c.gle = mat_sub(mat_commutator(a.gle, b.gle), w.gle);
    c.glq = mat_sub(mat_commutator(a.glq, b.glq), w.glq);
    c.sp = mat_sub(mat_commutator(a.sp, b.sp), w.sp);
    c.c0 = -w.c0;
    c.aprime = -w.aprime;
    return c;
}

HUSeries extension_cocycle_c0(const GElement& g1, const GElement& g2, int q) {
    (void)q;
    return HUSeries::constant(-projection_c0(g_bracket(g1, g2)));
}

HUSeries chern_weil_eval(const HPoly& P, int k, const std::vector<GElement>& args, int q) {
    if (static_cast<int>(args.size()) != 2 * k) fail("ArityMismatch", "expected " + std::to_string(2 * k) + " arguments");
    if (k == 0) fail("PreconditionViolated", "degree 0 is a constant");
    std::map<std::pair<int, int>, HComponents> C;
    for (int i = 0; i < 2 * k; ++i)
        for (int j = i + 1; j < 2 * k; ++j) C[{i, j}] = curvature_components(args[i], args[j], q);
    HUSeries out;
    bool first = true;
    for_each_matching(k, [&](const std::vector<std::pair<int, int>>& m, int sign) {
        // polarization of P at the k curvature values
        HUSeries s;
        bool sfirst = true;
        for (unsigned mask = 1; mask < (1u << k); ++mask) {
            std::optional<HComponents> sum;
            for (int j = 0; j < k; ++j)
                if (mask >> j & 1) sum = sum ? *sum + C.at(m[j]) : C.at(m[j]);
            HUSeries v = P(*sum) * Rational((k - __builtin_popcount(mask)) % 2 ? -1 : 1);
            s = sfirst ? v : s + v;
            sfirst = false;
        }
        s = s * Rational(sign);
        out = first ? s : out + s;
        first = false;
    });
    return out * (Rational(1) / factorial(k));
}

namespace {

// P(H) = sum_{a+b+c=k} [tr X^a / a!] A_b(Y) (-z)^c / c!.
HPoly tau_poly(int k) {
    auto ch = class_ch_lie(k);
    auto ah = class_ahat_lie(k);
    return [k, ch, ah](const HComponents& H) -> HUSeries {
        HUSeries out = HUSeries::constant(0);
        std::vector<HUSeries> zp{HUSeries::constant(1)};
        for (int c = 1; c <= k; ++c) zp.push_back(zp.back() * (-H.aprime));
        for (int a = 0; a <= k; ++a)
            for (int b = 0; a + b <= k; ++b) {
                int c = k - a - b;
                Rational w = ch[a](H.gle) * ah[b](H.sp) / factorial(c);
                if (!is_zero(w)) out += zp[c] * w;
            }
        return out;
    };
}

}  // namespace

HUSeries tau_dp_component(const std::vector<GElement>& args, int k, int e, int p) {
    if (static_cast<int>(args.size()) != 2 * k) fail("ArityMismatch", "expected " + std::to_string(2 * k) + " arguments");
    for (const auto& a : args)
        if (a.e() != e || a.p() != p) fail("DimensionMismatch", "argument outside gl_e(D_p)");
    if (k == 0) return HUSeries::constant(e);
    return chern_weil_eval(tau_poly(k), k, args, 0);
}

HUSeries ahat_factor_eval(const std::vector<GElement>& args, int k, int q) {
    auto ah = class_ahat_lie(k);
    return chern_weil_eval([ah, k](const HComponents& H) -> HUSeries { return HUSeries::constant(ah[k](H.sp)); }, k,
                           args, q);
}

HUSeries ch_c1_c0_eval(const std::vector<GElement>& args, int k, int q) {
    auto ch = class_ch_lie(k);
    // [tr exp(X) exp(w)]_k with w = -tr(X_q)/2 - z_0
    HPoly P = [ch, k](const HComponents& H) -> HUSeries {
        Rational w = -mat_trace(H.glq) / 2 - H.c0;
        Rational s = 0, wp = 1;
        for (int c = 0; c <= k; ++c) {
            s += ch[k - c](H.gle) * wp / factorial(c);
            wp *= w;
        }
        return HUSeries::constant(s);
    };
    return chern_weil_eval(P, k, args, q);
}

// ---------------------------------------------------------------- perturbation lemma

int GradedModule::dim(int j) const {
    if (j < jmin || j > jmax()) return 0;
    return dims[j - jmin];
}

namespace {

bool in_range(const GradedModule& M, int j) { return j >= M.jmin && j <= M.jmax(); }

const RMat& dmat(const GradedModule& M, int j) { return M.d[j - M.jmin]; }

const RMat& rho(const GradedModule& M, int j, int x) { return M.action[j - M.jmin][x]; }

void hom_put(HomCochain& a, int n, int j, const std::vector<int>& t, const RVec& v) {
    if (vis_zero(v)) return;
    auto& tab = a.parts[{n, j}];
    auto it = tab.find(t);
    if (it == tab.end()) {
        tab[t] = v;
    } else {
        vadd(it->second, v);
        if (vis_zero(it->second)) tab.erase(it);
    }
    if (tab.empty()) a.parts.erase({n, j});
}

RVec hom_at(const std::map<std::vector<int>, RVec>& tab, std::vector<int> t, int dim) {
    int s = sort_sign(t);
    if (s == 0) return vzero(dim);
    auto it = tab.find(t);
    if (it == tab.end()) return vzero(dim);
    RVec r = it->second;
    if (s < 0)
        for (auto& x : r) x = -x;
    return r;
}

int map_target_dim(const GradedMap& f, int j, const GradedModule& src) { return static_cast<int>(f.comps[j - src.jmin].size()); }

}  // namespace

bool HomCochain::is_zero() const { return parts.empty(); }

bool HomCochain::operator==(const HomCochain& o) const { return parts == o.parts; }

void check_module(const GradedModule& M, const LieAlgebra& g) {
    int len = static_cast<int>(M.dims.size());
    if (static_cast<int>(M.d.size()) != len || static_cast<int>(M.action.size()) != len)
        fail("MalformedInput", "graded module shape");
    for (int j = M.jmin; j <= M.jmax(); ++j) {
        const RMat& d = dmat(M, j);
        if (static_cast<int>(d.size()) != M.dim(j + 1)) fail("MalformedInput", "differential shape");
        for (const auto& r : d)
            if (static_cast<int>(r.size()) != M.dim(j)) fail("MalformedInput", "differential shape");
        if (in_range(M, j + 1) && M.dim(j + 2) > 0 && !mat_is_zero(mat_mul(dmat(M, j + 1), d)))
            fail("NotAComplex", "d^2 != 0");
        if (static_cast<int>(M.action[j - M.jmin].size()) != g.dim()) fail("MalformedInput", "action count");
        for (int x = 0; x < g.dim(); ++x) {
            if (M.dim(j + 1) > 0 && M.dim(j) > 0 && mat_mul(d, rho(M, j, x)) != mat_mul(rho(M, j + 1, x), d))
                fail("NotAModule", "action does not commute with d");
            for (int y = 0; y < g.dim(); ++y) {
                RMat rhs = mat_zero(M.dim(j), M.dim(j));
                for (int k = 0; k < g.dim(); ++k) rhs = mat_add(rhs, mat_scale(rho(M, j, k), g.bracket(x, y)[k]));
                if (mat_commutator(rho(M, j, x), rho(M, j, y)) != rhs) fail("NotAModule", "action does not respect the bracket");
            }
        }
    }
}

HomCochain hom_add(const HomCochain& a, const HomCochain& b) {
    HomCochain r = a;
    for (const auto& [key, tab] : b.parts)
        for (const auto& [t, v] : tab) hom_put(r, key.first, key.second, t, v);
    return r;
}

HomCochain hom_scale(const HomCochain& a, const Rational& s) {
    HomCochain r;
    for (const auto& [key, tab] : a.parts)
        for (const auto& [t, v] : tab) {
            RVec w = v;
            for (auto& x : w) x *= s;
            hom_put(r, key.first, key.second, t, w);
        }
    return r;
}

HomCochain d_hom(const HomCochain& a, const GradedModule& M, const LieAlgebra& g) {
    HomCochain r;
    for (const auto& [key, tab] : a.parts) {
        auto [n, j] = key;
        int dj = M.dim(j);
        for (const auto& t : increasing_tuples(all_indices(g.dim()), n + 1)) {
            RVec val = vzero(dj);
            for (int i = 0; i <= n; ++i)
                for (int k = i + 1; k <= n; ++k) {
                    const RVec& br = g.bracket(t[i], t[k]);
                    std::vector<int> args{0};
                    for (int s = 0; s <= n; ++s)
                        if (s != i && s != k) args.push_back(t[s]);
                    for (int b = 0; b < g.dim(); ++b) {
                        if (is_zero(br[b])) continue;
                        args[0] = b;
                        vadd(val, hom_at(tab, args, dj), Rational((i + k) % 2 ? -1 : 1) * br[b]);
                    }
                }
            hom_put(r, n + 1, j, t, val);
        }
        if (M.dim(j + 1) > 0)
            for (const auto& [t, v] : tab) {
                RVec w = mat_vec(dmat(M, j), v);
                if (n % 2)
                    for (auto& x : w) x = -x;
                hom_put(r, n, j + 1, t, w);
            }
    }
    return r;
}

HomCochain delta_act(const HomCochain& a, const GradedModule& M, const LieAlgebra& g) {
    HomCochain r;
    for (const auto& [key, tab] : a.parts) {
        auto [n, j] = key;
        int dj = M.dim(j);
        for (const auto& t : increasing_tuples(all_indices(g.dim()), n + 1)) {
            RVec val = vzero(dj);
            for (int i = 0; i <= n; ++i) {
                std::vector<int> rest;
                for (int s = 0; s <= n; ++s)
                    if (s != i) rest.push_back(t[s]);
                vadd(val, mat_vec(rho(M, j, t[i]), hom_at(tab, rest, dj)), Rational(i % 2 ? -1 : 1));
            }
            hom_put(r, n + 1, j, t, val);
        }
    }
    return r;
}

HomCochain d_total(const HomCochain& a, const GradedModule& M, const LieAlgebra& g) {
    return hom_add(d_hom(a, M, g), delta_act(a, M, g));
}

HomCochain apply_map(const GradedMap& f, const HomCochain& a, const GradedModule& src, const GradedModule& dst) {
    if (static_cast<int>(f.comps.size()) != static_cast<int>(src.dims.size())) fail("MalformedInput", "map shape");
    HomCochain r;
    for (const auto& [key, tab] : a.parts) {
        auto [n, j] = key;
        int tj = j + f.shift;
        if (dst.dim(tj) == 0) continue;
        if (map_target_dim(f, j, src) != dst.dim(tj)) fail("MalformedInput", "map target shape");
        Rational sign((n * f.shift) % 2 ? -1 : 1);
        for (const auto& [t, v] : tab) {
            RVec w = mat_vec(f.comps[j - src.jmin], v);
            for (auto& x : w) x *= sign;
            hom_put(r, n, tj, t, w);
        }
    }
    return r;
}

namespace {

// Composite b . a of graded maps A -> B -> C, degreewise.
bool composite_zero(const GradedMap& a, const GradedModule& A, const GradedMap& b, const GradedModule& B) {
    for (int j = A.jmin; j <= A.jmax(); ++j) {
        int k = j + a.shift;
        if (B.dim(k) == 0 || A.dim(j) == 0) continue;
        const RMat& bm = b.comps[k - B.jmin];
        if (bm.empty()) continue;
        if (!mat_is_zero(mat_mul(bm, a.comps[j - A.jmin]))) return false;
    }
    return true;
}

HomCochain perturbation_series(const GradedMap& phi, const HomCochain& a, const GradedModule& M, const LieAlgebra& lie) {
    int cap = (lie.dim() + 2) * (static_cast<int>(M.dims.size()) + 1);
    HomCochain acc = a, t = a;
    for (int k = 0;; ++k) {
        t = delta_act(apply_map(phi, t, M, M), M, lie);
        if (t.is_zero()) break;
        if (k >= cap) fail("NonTerminatingSeries", "perturbation series did not terminate");
        acc = hom_add(acc, t);
    }
    return acc;
}

}  // namespace

void check_side_conditions(const GradedMap& f, const GradedMap& g, const GradedMap& phi, const GradedModule& M,
                           const GradedModule& N) {
    if (!composite_zero(phi, M, phi, M)) fail("SideConditionViolation", "phi phi != 0");
    if (!composite_zero(g, N, phi, M)) fail("SideConditionViolation", "phi g != 0");
    if (!composite_zero(phi, M, f, M)) fail("SideConditionViolation", "f phi != 0");
}

HomCochain perturb_f_tilde(const GradedMap& f, const GradedMap& g, const GradedMap& phi, const HomCochain& a,
                           const GradedModule& M, const GradedModule& N, const LieAlgebra& lie) {
    check_side_conditions(f, g, phi, M, N);
    return apply_map(f, perturbation_series(phi, a, M, lie), M, N);
}

HomCochain perturb_phi_tilde(const GradedMap& phi, const HomCochain& a, const GradedModule& M, const LieAlgebra& lie) {
    return apply_map(phi, perturbation_series(phi, a, M, lie), M, M);
}

}  // namespace wf
