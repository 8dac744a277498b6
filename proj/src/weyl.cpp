#include "weylforge/errors.hpp"
#include "weylforge/weyl.hpp"

#include <algorithm>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wf {

namespace {

constexpr int kInf = WeylElement::kNoTrunc;

int sat_add(int a, int b) {
    if (a >= kInf / 2 || b >= kInf / 2) return kInf;
    return a + b;
}

void check_n(int n) {
    if (n < 0 || n > kMaxVars) fail("VariableCountMismatch", "n must lie in [0," + std::to_string(kMaxVars) + "]");
}

}  // namespace

WeylElement::WeylElement(int n, int wtrunc, int cmin) : n_(n), wtrunc_(wtrunc), cmin_(cmin) { check_n(n); }

WeylElement WeylElement::scalar(int n, const Rational& c, int wtrunc, int hpow, int cmin) {
    WeylElement r(n, wtrunc, std::min(cmin, hpow));
    WMono m;
    m.c = hpow;
    r.add(m, c);
    return r;
}

WeylElement WeylElement::x(int n, int i, int wtrunc) {
    WeylElement r(n, wtrunc);
    WMono m;
    m.a(i) = 1;
    r.add(m, 1);
    return r;
}

WeylElement WeylElement::y(int n, int i, int wtrunc) {
    WeylElement r(n, wtrunc);
    WMono m;
    m.b(i) = 1;
    r.add(m, 1);
    return r;
}

WeylElement WeylElement::hpow(int n, int k, int wtrunc) { return scalar(n, 1, wtrunc, k, std::min(0, k)); }

void WeylElement::add(const WMono& m, const Rational& c) {
    if (wf::is_zero(c) || m.weight() >= wtrunc_) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
        it->second += c;
        if (wf::is_zero(it->second)) terms_.erase(it);
    }
}

Rational WeylElement::coef(const WMono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void WeylElement::set_trunc(int w) {
    wtrunc_ = w;
    for (auto it = terms_.begin(); it != terms_.end();)
        it = it->first.weight() >= w ? terms_.erase(it) : std::next(it);
}

WeylElement WeylElement::truncated(int w) const {
    WeylElement r = *this;
    r.set_trunc(std::min(w, wtrunc_));
    return r;
}

int WeylElement::min_weight() const {
    int w = kInf;
    for (const auto& kv : terms_) w = std::min(w, kv.first.weight());
    return w;
}

int WeylElement::min_c() const {
    int c = kInf;
    for (const auto& kv : terms_) c = std::min(c, kv.first.c);
    return c;
}

WeylElement& WeylElement::operator+=(const WeylElement& o) {
    if (n_ != o.n_) fail("VariableCountMismatch", "add");
    if (o.wtrunc_ < wtrunc_) set_trunc(o.wtrunc_);
    cmin_ = std::min(cmin_, o.cmin_);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
}

WeylElement& WeylElement::operator-=(const WeylElement& o) { return *this += -o; }

WeylElement& WeylElement::operator*=(const Rational& s) {
    if (wf::is_zero(s)) terms_.clear();
    for (auto& kv : terms_) kv.second *= s;
    return *this;
}

WeylElement WeylElement::operator-() const {
    WeylElement r = *this;
    for (auto& kv : r.terms_) kv.second = -kv.second;
    return r;
}

WeylElement WeylElement::hshift(int k) const {
    WeylElement r(n_, sat_add(wtrunc_, 2 * k), std::min(cmin_, cmin_ + k));
    for (const auto& [m, c] : terms_) {
        WMono t = m;
        t.c += k;
        r.terms_.emplace(t, c);
    }
    return r;
}

WeylElement WeylElement::weight_component(int w) const {
    WeylElement r(n_, wtrunc_, cmin_);
    for (const auto& [m, c] : terms_)
        if (m.weight() == w) r.terms_.emplace(m, c);
    return r;
}

WeylElement WeylElement::c_component(int cc) const {
    WeylElement r(n_, wtrunc_, cmin_);
    for (const auto& [m, c] : terms_)
        if (m.c == cc) r.terms_.emplace(m, c);
    return r;
}

WeylElement WeylElement::dx(int i) const {
    WeylElement r(n_, wtrunc_ - 1, cmin_);
    for (const auto& [m, c] : terms_) {
        if (!m.a(i)) continue;
        WMono t = m;
        t.a(i) -= 1;
        r.add(t, c * m.a(i));
    }
    return r;
}

bool WeylElement::agrees(const WeylElement& o) const {
    int w = std::min(wtrunc_, o.wtrunc_);
    return n_ == o.n_ && truncated(w).terms_ == o.truncated(w).terms_;
}

void WeylElement::validate() const {
    for (const auto& [m, c] : terms_) {
        if (m.c < cmin_) fail("InvariantViolation", "h-exponent below c_min");
        if (m.weight() >= wtrunc_) fail("InvariantViolation", "term beyond weight truncation");
        for (int i = n_; i < kMaxVars; ++i)
            if (m.a(i) || m.b(i)) fail("InvariantViolation", "variable index beyond n");
    }
}

int product_trunc(const WeylElement& a, const WeylElement& b) {
    int t = std::min(a.wtrunc(), b.wtrunc());
    t = std::min(t, sat_add(a.wtrunc(), b.min_weight()));
    t = std::min(t, sat_add(b.wtrunc(), a.min_weight()));
    return t;
}

namespace {

// Accumulate (x^a y^b)(x^a' y^b') = sum_k prod_i k_i! C(b_i,k_i) C(a'_i,k_i) h^|k| x^{a+a'-k} y^{b+b'-k}.
void mul_pair(const WMono& l, const Rational& cl, const WMono& r, const Rational& cr, int n,
              WeylElement::Terms& out) {
    WMono base;
    base.c = l.c + r.c;
    int kmax[kMaxVars];
    for (int i = 0; i < n; ++i) {
        base.a(i) = static_cast<std::uint8_t>(l.a(i) + r.a(i));
        base.b(i) = static_cast<std::uint8_t>(l.b(i) + r.b(i));
        kmax[i] = std::min(l.b(i), r.a(i));
    }
    Rational c0 = cl * cr;
    int k[kMaxVars] = {0};
    while (true) {
        WMono m = base;
        long f = 1;
        for (int i = 0; i < n; ++i) {
            if (!k[i]) continue;
            int bi = l.b(i), ai = r.a(i);
            long t = 1;
            for (int j = 0; j < k[i]; ++j) t = t * (bi - j) * (ai - j) / (j + 1);
            f *= t;
            m.a(i) -= k[i];
            m.b(i) -= k[i];
            m.c += k[i];
        }
        auto [it, fresh] = out.try_emplace(m, c0);
        if (fresh) {
            if (f != 1) it->second *= f;
        } else {
            it->second += c0 * f;
            if (is_zero(it->second)) out.erase(it);
        }
        int i = 0;
        while (i < n && k[i] == kmax[i]) k[i++] = 0;
        if (i == n) break;
        ++k[i];
    }
}

WeylElement finish_product(const WeylElement& a, const WeylElement& b, WeylElement::Terms&& terms, int t) {
    WeylElement r(a.n(), t, a.cmin() + b.cmin());
    for (auto& [m, c] : terms) r.add(m, c);
    check_terms(r.size());
    return r;
}

}  // namespace

WeylElement weyl_mul_serial(const WeylElement& a, const WeylElement& b) {
    if (a.n() != b.n()) fail("VariableCountMismatch", std::to_string(a.n()) + " vs " + std::to_string(b.n()));
    int t = product_trunc(a, b);
    WeylElement::Terms acc;
    for (const auto& [ma, ca] : a.terms()) {
        int wa = ma.weight();
        for (const auto& [mb, cb] : b.terms()) {
            if (wa + mb.weight() >= t) continue;
            mul_pair(ma, ca, mb, cb, a.n(), acc);
        }
    }
    return finish_product(a, b, std::move(acc), t);
}

WeylElement weyl_mul_parallel(const WeylElement& a, const WeylElement& b) {
    if (a.n() != b.n()) fail("VariableCountMismatch", std::to_string(a.n()) + " vs " + std::to_string(b.n()));
    int t = product_trunc(a, b);
    std::vector<std::pair<WMono, Rational>> left(a.terms().begin(), a.terms().end());
    std::vector<std::pair<WMono, Rational>> right(b.terms().begin(), b.terms().end());
    const long long na = static_cast<long long>(left.size());
    int nthreads = 1;
#ifdef _OPENMP
    nthreads = omp_get_max_threads();
#endif
    std::vector<WeylElement::Terms> partial(nthreads);
#pragma omp parallel for schedule(dynamic, 4)
    for (long long i = 0; i < na; ++i) {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        auto& acc = partial[tid];
        int wa = left[i].first.weight();
        for (const auto& [mb, cb] : right) {
            if (wa + mb.weight() >= t) continue;
            mul_pair(left[i].first, left[i].second, mb, cb, a.n(), acc);
        }
    }
    // Exact addition is order independent, so the merge is deterministic.
    WeylElement::Terms acc = std::move(partial[0]);
    for (int i = 1; i < nthreads; ++i)
        for (auto& [m, c] : partial[i]) {
            auto [it, fresh] = acc.try_emplace(m, c);
            if (!fresh) {
                it->second += c;
                if (is_zero(it->second)) acc.erase(it);
            }
        }
    return finish_product(a, b, std::move(acc), t);
}

WeylElement weyl_mul(const WeylElement& a, const WeylElement& b) {
#ifdef _OPENMP
    if (omp_get_max_threads() > 1 && a.size() * b.size() >= 4096) return weyl_mul_parallel(a, b);
#endif
    return weyl_mul_serial(a, b);
}

WeylElement weyl_commutator(const WeylElement& a, const WeylElement& b) {
    WeylElement r = weyl_mul(a, b) - weyl_mul(b, a);
    r.set_cmin(std::max(a.cmin() + b.cmin() + 1, std::min(a.cmin(), b.cmin())));
    return r;
}

QPoly principal_symbol(const WeylElement& a) {
    if (a.cmin() < 0) fail("NegativeHPower", "principal symbol needs c_min = 0");
    int n = a.n();
    QPoly p(2 * n, a.wtrunc());
    Exps e(2 * n);
    for (const auto& [m, c] : a.terms()) {
        if (m.c < 0) fail("NegativeHPower", "term with h^" + std::to_string(m.c));
        if (m.c > 0) continue;
        for (int i = 0; i < n; ++i) {
            e[i] = m.a(i);
            e[n + i] = m.b(i);
        }
        p.add(e, c);
    }
    return p;
}

QPoly poisson_bracket(const QPoly& f, const QPoly& g, int n) {
    QPoly r(2 * n, std::min(f.trunc(), g.trunc()));
    for (int i = 0; i < n; ++i) {
        r += f.diff(n + i) * g.diff(i);
        r -= f.diff(i) * g.diff(n + i);
    }
    return r;
}

bool in_ideal_J(const WeylElement& a, int q) {
    for (const auto& kv : a.terms()) {
        const WMono& m = kv.first;
        if (m.c >= 1) continue;
        bool hit = false;
        for (int r = 0; r < q; ++r) hit = hit || m.b(r) > 0;
        if (!hit) return false;
    }
    return true;
}

WeylElement embed_vars(const WeylElement& a, int n, int offset) {
    if (offset + a.n() > n) fail("VariableCountMismatch", "embedding does not fit");
    WeylElement r(n, a.wtrunc(), a.cmin());
    for (const auto& [m, c] : a.terms()) {
        WMono t;
        t.c = m.c;
        for (int i = 0; i < a.n(); ++i) {
            t.a(offset + i) = m.ab[i];
            t.b(offset + i) = m.ab[kMaxVars + i];
        }
        r.add(t, c);
    }
    return r;
}

// ---------------------------------------------------------------- matrices

MatWeyl::MatWeyl(int e, int n, int wtrunc, int cmin)
    : e_(e), n_(n), m_(static_cast<std::size_t>(e) * e, WeylElement(n, wtrunc, cmin)) {}

MatWeyl MatWeyl::scalar(int e, const WeylElement& d) {
    MatWeyl r(e, d.n(), d.wtrunc(), d.cmin());
    for (int i = 0; i < e; ++i) r.at(i, i) = d;
    return r;
}

MatWeyl MatWeyl::constant(const RMat& a, int n, int wtrunc) {
    int e = static_cast<int>(a.size());
    MatWeyl r(e, n, wtrunc);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) r.at(i, j) = WeylElement::scalar(n, a[i][j], wtrunc);
    return r;
}

int MatWeyl::wtrunc() const {
    int w = kInf;
    for (const auto& x : m_) w = std::min(w, x.wtrunc());
    return w;
}

MatWeyl& MatWeyl::operator+=(const MatWeyl& o) {
    if (e_ != o.e_) fail("SizeMismatch", "matrix add");
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] += o.m_[i];
    return *this;
}

MatWeyl& MatWeyl::operator-=(const MatWeyl& o) {
    if (e_ != o.e_) fail("SizeMismatch", "matrix sub");
    for (std::size_t i = 0; i < m_.size(); ++i) m_[i] -= o.m_[i];
    return *this;
}

MatWeyl& MatWeyl::operator*=(const Rational& s) {
    for (auto& x : m_) x *= s;
    return *this;
}

bool MatWeyl::agrees(const MatWeyl& o) const {
    if (e_ != o.e_) return false;
    for (std::size_t i = 0; i < m_.size(); ++i)
        if (!m_[i].agrees(o.m_[i])) return false;
    return true;
}

bool MatWeyl::is_zero() const {
    for (const auto& x : m_)
        if (!x.is_zero()) return false;
    return true;
}

MatWeyl MatWeyl::weight_component(int w) const {
    MatWeyl r = *this;
    for (auto& x : r.m_) x = x.weight_component(w);
    return r;
}

void MatWeyl::set_trunc(int w) {
    for (auto& x : m_) x.set_trunc(w);
}

MatWeyl mat_mul(const MatWeyl& a, const MatWeyl& b) {
    if (a.e() != b.e()) fail("SizeMismatch", "matrix product");
    int e = a.e();
    MatWeyl r(e, a.n(), kInf, a.at(0, 0).cmin() + b.at(0, 0).cmin());
    int t = kInf;
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) {
            WeylElement s(a.n(), kInf, r.at(i, j).cmin());
            for (int k = 0; k < e; ++k) {
                t = std::min(t, product_trunc(a.at(i, k), b.at(k, j)));
                s += weyl_mul(a.at(i, k), b.at(k, j));
            }
            r.at(i, j) = s;
        }
    r.set_trunc(t);
    return r;
}

MatWeyl mat_commutator(const MatWeyl& a, const MatWeyl& b) { return mat_mul(a, b) - mat_mul(b, a); }

// ---------------------------------------------------------------- g

bool GElement::valid() const {
    int e = mat.e();
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) {
            const WeylElement& x = mat.at(i, j);
            if (x.min_c() < -1) return false;
            WeylElement pole = x.c_component(-1);
            if (i != j && !pole.is_zero()) return false;
            if (i == j && pole != mat.at(0, 0).c_component(-1)) return false;
        }
    return true;
}

namespace {

// Removes the central h^-1 * I part, which only costs truncation in products.
GElement strip_central_pole(const GElement& g) {
    GElement r = g;
    WMono m;
    m.c = -1;
    Rational s = g.mat.at(0, 0).coef(m);
    if (is_zero(s)) return r;
    for (int i = 0; i < g.e(); ++i) r.mat.at(i, i).add(m, -s);
    return r;
}

}  // namespace

GElement g_bracket(const GElement& a, const GElement& b) {
    if (a.e() != b.e()) fail("SizeMismatch", "e " + std::to_string(a.e()) + " vs " + std::to_string(b.e()));
    if (a.p() != b.p()) fail("VariableCountMismatch", "p mismatch");
    GElement r{mat_commutator(strip_central_pole(a).mat, strip_central_pole(b).mat)};
    for (int i = 0; i < r.e(); ++i)
        for (int j = 0; j < r.e(); ++j) {
            if (r.mat.at(i, j).min_c() < -1 && !r.mat.at(i, j).is_zero())
                fail("InvariantViolation", "bracket left (1/h)D_p");
            r.mat.at(i, j).set_cmin(-1);
        }
    return r;
}

GElement graded_component(const GElement& g, int w) { return GElement{g.mat.weight_component(w)}; }

QuadSplit split_quadratic(const WeylElement& a, const std::vector<int>& vars) {
    int k = static_cast<int>(vars.size());
    QuadSplit s{mat_zero(2 * k, 2 * k), Rational(0)};
    auto slot = [&](int var) {
        for (int i = 0; i < k; ++i)
            if (vars[i] == var) return i;
        return -1;
    };
    for (const auto& [m, c] : a.terms()) {
        if (m.c != -1) continue;
        int deg = 0;
        for (int i = 0; i < a.n(); ++i) deg += m.a(i) + m.b(i);
        if (deg != 2) continue;
        std::vector<int> z;
        bool inside = true;
        for (int i = 0; i < a.n(); ++i) {
            for (int t = 0; t < m.a(i); ++t) z.push_back(slot(i));
            for (int t = 0; t < m.b(i); ++t) z.push_back(slot(i) < 0 ? -1 : k + slot(i));
            if ((m.a(i) || m.b(i)) && slot(i) < 0) inside = false;
        }
        if (!inside) continue;
        if (z[0] == z[1]) {
            s.Q[z[0]][z[0]] += 2 * c;
        } else {
            s.Q[z[0]][z[1]] += c;
            s.Q[z[1]][z[0]] += c;
            // x_i y_i = sym(x_i y_i) - h/2
            if (z[1] - z[0] == k || z[0] - z[1] == k) s.shift -= c / 2;
        }
    }
    return s;
}

WeylElement sp_element(const RMat& Q, int n, int wtrunc) {
    WeylElement r(n, wtrunc, -1);
    for (int i = 0; i < 2 * n; ++i)
        for (int j = i; j < 2 * n; ++j) {
            Rational c = i == j ? Rational(Q[i][i] / 2) : Rational(Q[i][j]);
            if (is_zero(c)) continue;
            WMono m;
            m.c = -1;
            auto bump = [&](int z) {
                if (z < n)
                    m.a(z) += 1;
                else
                    m.b(z - n) += 1;
            };
            bump(i);
            bump(j);
            r.add(m, c);
            if (j == i + n && i < n) r.add(WMono{}, c / 2);
        }
    return r;
}

RMat sp_action_matrix(const RMat& Q, int n) {
    WeylElement s = sp_element(Q, n, kInf);
    RMat Y = mat_zero(2 * n, 2 * n);
    for (int l = 0; l < 2 * n; ++l) {
        WeylElement z = l < n ? WeylElement::x(n, l, kInf) : WeylElement::y(n, l - n, kInf);
        WeylElement img = weyl_commutator(s, z);
        for (const auto& [m, c] : img.terms()) {
            if (m.c != 0 || m.weight() != 1) fail("Internal", "sp action left the linear span");
            int k = -1;
            for (int i = 0; i < n; ++i) {
                if (m.a(i)) k = i;
                if (m.b(i)) k = n + i;
            }
            Y[k][l] += c;
        }
    }
    return Y;
}

namespace {

// x,y-free part of the Weyl (symmetric) symbol, by h-exponent.  The normal
// symbol converts via exp(-(h/2) sum d_x d_y), so x^a y^a contributes
// prod (-1/2)^{a_i} a_i! at h^{c + |a|}.
std::map<int, Rational> weyl_symbol_constants(const WeylElement& f) {
    std::map<int, Rational> out;
    for (const auto& [m, c] : f.terms()) {
        Rational v = c;
        int shift = 0;
        bool diag = true;
        for (int i = 0; i < f.n() && diag; ++i) {
            if (m.a(i) != m.b(i)) diag = false;
            for (int t = 1; t <= m.a(i); ++t) v *= Rational(-t, 2);
            shift += m.a(i);
        }
        if (diag) out[m.c + shift] += v;
    }
    return out;
}

}  // namespace

HPart project_h(const GElement& g) {
    int e = g.e(), p = g.p();
    std::vector<int> vars(p);
    for (int i = 0; i < p; ++i) vars[i] = i;
    HPart out;
    out.sp = mat_zero(2 * p, 2 * p);
    out.gl = mat_zero(e, e);
    int W = g.mat.wtrunc();
    int ht = W >= kInf / 2 ? HUSeries::kNoTrunc : (W + 1 >= 0 ? (W + 1) / 2 : -((-W) / 2));
    out.aprime = HUSeries(ht);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) {
            const WeylElement& f = g.mat.at(i, j);
            for (const auto& [c, v] : weyl_symbol_constants(f)) {
                if (c == 0) out.gl[i][j] += v;
                else if (i == j) out.aprime.add_term(c, 0, v / e);
            }
            if (i == j) out.sp = mat_add(out.sp, mat_scale(split_quadratic(f, vars).Q, Rational(1, e)));
        }
    return out;
}

GElement embed_h(const HPart& x, int p, int wtrunc) {
    int e = static_cast<int>(x.gl.size());
    MatWeyl m = MatWeyl::constant(x.gl, p, wtrunc);
    WeylElement scal = sp_element(x.sp, p, wtrunc);
    for (const auto& [k, c] : x.aprime.terms()) {
        WMono mono;
        mono.c = k.first;
        scal.add(mono, c);
    }
    m += MatWeyl::scalar(e, scal);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) m.at(i, j).set_cmin(-1);
    return GElement{m};
}

// ---------------------------------------------------------------- module

bool ModuleElement::agrees(const ModuleElement& o) const {
    if (comp.size() != o.comp.size() || q != o.q) return false;
    for (std::size_t i = 0; i < comp.size(); ++i)
        if (!comp[i].agrees(o.comp[i])) return false;
    return true;
}

bool ModuleElement::valid() const {
    for (const auto& f : comp)
        for (const auto& kv : f.terms())
            for (int r = 0; r < q; ++r)
                if (kv.first.b(r)) return false;
    return true;
}

ModuleElement module_generator(int e, int i, int n, int q, int wtrunc) {
    ModuleElement m;
    m.q = q;
    m.comp.assign(e, WeylElement(n, wtrunc));
    m.comp[i] = WeylElement::scalar(n, 1, wtrunc);
    return m;
}

namespace {

ModuleElement act_y(int s, const ModuleElement& m, const std::vector<MatWeyl>& phi) {
    int e = m.e();
    ModuleElement r = m;
    if (s >= m.q) {
        for (auto& f : r.comp) {
            int w = f.wtrunc();
            f = weyl_mul(WeylElement::y(f.n(), s, kInf), f);
            f.set_trunc(std::min(w, f.wtrunc()));
        }
        return r;
    }
    for (int j = 0; j < e; ++j) {
        int w = m.comp[j].wtrunc();
        WeylElement t = m.comp[j].dx(s).hshift(1);
        t.set_trunc(w);
        r.comp[j] = t;
    }
    if (!phi.empty()) {
        const MatWeyl& ph = phi[s];
        for (int i = 0; i < e; ++i)
            for (int j = 0; j < e; ++j) {
                if (m.comp[i].is_zero() || ph.at(i, j).is_zero()) continue;
                r.comp[j] += weyl_mul(m.comp[i], ph.at(i, j));
            }
    }
    return r;
}

}  // namespace

ModuleElement module_act(const WeylElement& d, const ModuleElement& m) { return module_act(d, m, {}); }

ModuleElement module_act(const WeylElement& d, const ModuleElement& m, const std::vector<MatWeyl>& phi) {
    if (m.comp.empty()) return m;
    int n = m.comp[0].n();
    if (d.n() != n) fail("VariableCountMismatch", "module action");
    if (d.min_c() < 0 && !d.is_zero()) fail("NegativeHPower", "module action needs d in D_n");
    ModuleElement out = m;
    for (auto& f : out.comp) f = WeylElement(n, f.wtrunc());
    for (const auto& [mono, c] : d.terms()) {
        ModuleElement cur = m;
        for (int s = 0; s < n; ++s)
            for (int t = 0; t < mono.b(s); ++t) cur = act_y(s, cur, phi);
        WMono left;
        for (int i = 0; i < n; ++i) left.a(i) = mono.ab[i];
        left.c = mono.c;
        for (int j = 0; j < m.e(); ++j) {
            WeylElement shifted(n, cur.comp[j].wtrunc());
            for (const auto& [fm, fc] : cur.comp[j].terms()) {
                WMono t = fm;
                for (int i = 0; i < n; ++i) t.a(i) += left.a(i);
                t.c += left.c;
                shifted.add(t, fc * c);
            }
            out.comp[j] += shifted;
        }
    }
    return out;
}

ModuleElement module_right(const ModuleElement& m, const MatWeyl& a) {
    int e = m.e();
    if (a.e() != e) fail("SizeMismatch", "module right action");
    int n = m.comp[0].n();
    ModuleElement r = m;
    for (auto& f : r.comp) f = WeylElement(n, f.wtrunc());
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) {
            if (m.comp[i].is_zero()) continue;
            r.comp[j] += weyl_mul(m.comp[i], embed_vars(a.at(i, j), n, m.q));
        }
    return r;
}

}  // namespace wf
