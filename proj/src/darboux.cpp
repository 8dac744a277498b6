#include "weylforge/darboux.hpp"

#include "weylforge/errors.hpp"

namespace wf {

namespace {

Rational form_pair(const RMat& A, const RVec& u, const RVec& v) {
    Rational s = 0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (is_zero(u[i])) continue;
        for (std::size_t j = 0; j < v.size(); ++j) s += u[i] * A[i][j] * v[j];
    }
    return s;
}

RVec axpy(const RVec& a, const Rational& s, const RVec& b) {
    RVec r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += s * b[i];
    return r;
}

RVec unit(int dim, int k) {
    RVec v(dim, Rational(0));
    v[k] = 1;
    return v;
}

}  // namespace

RMat linear_darboux(const RMat& A, int q) {
    int dim = static_cast<int>(A.size());
    if (dim % 2) fail("DegenerateForm", "odd dimension");
    int n = dim / 2;
    if (q < 0 || q > n) fail("DimensionMismatch", "q out of range");
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (A[i][j] != -A[j][i]) fail("DegenerateForm", "matrix is not antisymmetric");
    if (mat_rank(A) != dim) fail("DegenerateForm", "form is degenerate");

    // W^perp = {v : A(v, e_k) = 0 for all k outside y_1..y_q}
    RMat cons;
    for (int k = 0; k < dim; ++k) {
        if (k >= n && k < n + q) continue;
        RVec row(dim);
        for (int i = 0; i < dim; ++i) row[i] = A[i][k];
        cons.push_back(row);
    }
    std::vector<RVec> K = nullspace(cons);
    for (const auto& f : K)
        for (int r = 0; r < q; ++r)
            if (!is_zero(f[n + r])) fail("NotCoisotropic", "W^perp is not contained in W");

    // g_s dual to f_r, taken in the span of e_{y_1..y_q}
    std::vector<RVec> g;
    if (q > 0) {
        RMat M = mat_zero(q, q);
        for (int r = 0; r < q; ++r)
            for (int s = 0; s < q; ++s) M[r][s] = form_pair(A, K[r], unit(dim, n + s));
        RMat Minv = mat_inverse(M);
        for (int s = 0; s < q; ++s) {
            RVec v(dim, Rational(0));
            for (int t = 0; t < q; ++t) v[n + t] = Minv[t][s];
            g.push_back(v);
        }
        RMat Ag = mat_zero(q, q);
        for (int r = 0; r < q; ++r)
            for (int s = 0; s < q; ++s) Ag[r][s] = form_pair(A, g[r], g[s]);
        std::vector<RVec> g2 = g;
        for (int s = 0; s < q; ++s)
            for (int t = 0; t < q; ++t) g2[s] = axpy(g2[s], Ag[t][s] / 2, K[t]);
        g = g2;
    }

    // symplectic complement of span{f, g}, then Gram-Schmidt
    std::vector<RVec> rest;
    if (q == 0) {
        for (int k = 0; k < dim; ++k) rest.push_back(unit(dim, k));
    } else {
        RMat c2;
        for (int r = 0; r < q; ++r) {
            RVec a(dim), b(dim);
            for (int i = 0; i < dim; ++i) {
                a[i] = form_pair(A, K[r], unit(dim, i));
                b[i] = form_pair(A, g[r], unit(dim, i));
            }
            c2.push_back(a);
            c2.push_back(b);
        }
        rest = nullspace(c2);
    }
    std::vector<RVec> es, ws;
    while (!rest.empty()) {
        RVec v = rest.front();
        rest.erase(rest.begin());
        std::size_t j = 0;
        while (j < rest.size() && is_zero(form_pair(A, v, rest[j]))) ++j;
        if (j == rest.size()) fail("DegenerateForm", "restriction is degenerate");
        RVec w = rest[j];
        rest.erase(rest.begin() + static_cast<long>(j));
        w = axpy(RVec(dim, Rational(0)), 1 / form_pair(A, v, w), w);
        for (auto& u : rest) {
            Rational av = form_pair(A, u, v), aw = form_pair(A, u, w);
            u = axpy(axpy(u, av, w), -aw, v);
        }
        es.push_back(v);
        ws.push_back(w);
    }

    RMat P = mat_zero(dim, dim);
    auto put = [&](int col, const RVec& v) {
        for (int i = 0; i < dim; ++i) P[i][col] = v[i];
    };
    for (int r = 0; r < q; ++r) {
        put(r, K[r]);
        put(n + r, g[r]);
    }
    for (int j = 0; j < n - q; ++j) {
        put(q + j, es[j]);
        put(n + q + j, ws[j]);
    }
    RMat J = mat_zero(dim, dim);
    for (int i = 0; i < n; ++i) {
        J[i][n + i] = 1;
        J[n + i][i] = -1;
    }
    if (mat_mul(mat_transpose(P), mat_mul(A, P)) != J) fail("Internal", "linear_darboux failed to normalize");
    return P;
}

PolyVec omega_inverse(const FormalForm& gamma) {
    int n = gamma.n();
    PolyVec v(n, gamma.trunc());
    for (const auto& [k, c] : gamma.terms()) {
        if (popcount(k.mask) != 1) fail("NotOneForm", "omega_inverse needs a 1-form");
        int b = 0;
        while (!(k.mask >> b & 1u)) ++b;
        // iota_v alpha_0 = sum a_i dy_i - b_i dx_i
        if (b < n)
            v.add(k.mono, 1u << (n + b), -c);
        else
            v.add(k.mono, 1u << (b - n), c);
    }
    return v;
}

bool preserves_ideal(const PolyVec& mu, int q) {
    int n = mu.n();
    for (const auto& [k, c] : mu.terms())
        for (int r = 0; r < q; ++r)
            if (k.mask == (1u << (n + r))) {
                bool in = false;
                for (int t = 0; t < q; ++t) in = in || k.mono[n + t] > 0;
                if (!in) return false;
            }
    return true;
}

bool ideal_compatible(const FormalForm& alpha, int q) {
    for (const auto& [k, c] : alpha.terms()) {
        if (k.mask >= (1u << q) || popcount(k.mask) != 2) continue;
        bool in = false;
        for (int t = 0; t < q; ++t) in = in || k.mono[alpha.n() + t] > 0;
        if (!in) return false;
    }
    return true;
}

FormalForm apply_diffeo(const FormalDiffeo& phi, const FormalForm& a) {
    FormalForm cur = a;
    for (const auto& mu : phi.steps) cur = pullback_exp(mu.scaled(Rational(-1)), cur, phi.T);
    return cur;
}

FormalForm ideal_primitive(const FormalForm& beta, int q) {
    int n = beta.n();
    FormalForm gamma = euler_primitive(beta);
    // Correct by d f so that the dx_r coefficients (r < q) vanish on y_1..y_q = 0;
    // f is the x_{<=q}-radial primitive of those restricted coefficients.
    FormalForm f(n, gamma.trunc() >= FormalForm::kNoTrunc / 2 ? gamma.trunc() : gamma.trunc() + 1);
    for (const auto& [k, c] : gamma.terms()) {
        if (popcount(k.mask) != 1 || k.mask >= (1u << q)) continue;
        bool in = false;
        for (int t = 0; t < q; ++t) in = in || k.mono[n + t] > 0;
        if (in) continue;
        int r = 0;
        while (!(k.mask >> r & 1u)) ++r;
        int deg = 0;
        for (int s = 0; s < q; ++s) deg += k.mono[s];
        Exps m = k.mono;
        m[r] += 1;
        f.add(m, 0, c * Rational(-1, deg + 1));
    }
    if (!f.is_zero()) gamma += d_de_rham(f);
    for (const auto& [k, c] : gamma.terms()) {
        if (k.mask >= (1u << q)) continue;
        bool in = false;
        for (int t = 0; t < q; ++t) in = in || k.mono[n + t] > 0;
        if (!in) fail("IdealCompatibilityFailure", "no primitive with dx_r coefficients in J");
    }
    return gamma;
}

FormalDiffeo darboux_normalize(const FormalForm& alpha, int q, int T) {
    int n = alpha.n();
    for (const auto& kv : alpha.terms())
        if (popcount(kv.first.mask) != 2) fail("NotTwoForm", "darboux_normalize needs a 2-form");
    if (!d_de_rham(alpha).is_zero()) fail("NotClosed", "alpha is not closed");
    FormalForm a0 = omega_form(n);
    if (alpha.coef_degree_part(0) != a0) fail("NonStandardConstantPart", "constant part is not sum dx_i ^ dy_i");
    if (!ideal_compatible(alpha, q)) fail("IdealCompatibilityFailure", "dx_r ^ dx_s coefficient outside J");

    FormalDiffeo out;
    out.T = T;
    out.n = n;
    FormalForm cur = alpha;
    cur.set_trunc(std::min(T, alpha.trunc()));
    for (int i = 1; i < T; ++i) {
        FormalForm beta = cur.coef_degree_part(i);
        if (beta.is_zero()) continue;
        FormalForm gamma = ideal_primitive(beta, q);
        PolyVec mu = omega_inverse(gamma);
        if (!preserves_ideal(mu, q)) fail("IdealCompatibilityFailure", "step does not preserve J");
        cur = pullback_exp(mu.scaled(Rational(-1)), cur, T);
        if (!ideal_compatible(cur, q)) fail("IdealCompatibilityFailure", "intermediate form left J");
        out.steps.push_back(mu);
        out.degrees.push_back(i + 1);
    }
    FormalForm target = a0;
    target.set_trunc(cur.trunc());
    if (cur != target) fail("Internal", "darboux normalization did not converge");
    return out;
}

WeylElement mod_h(const WeylElement& a, int T) {
    WeylElement r(a.n(), a.wtrunc(), a.cmin());
    for (const auto& [m, c] : a.terms())
        if (m.c < T) r.add(m, c);
    return r;
}

MatWeyl mod_h(const MatWeyl& a, int T) {
    MatWeyl r = a;
    for (int i = 0; i < a.e(); ++i)
        for (int j = 0; j < a.e(); ++j) r.at(i, j) = mod_h(a.at(i, j), T);
    return r;
}

namespace {

int xdeg(const WMono& m, int q) {
    int d = 0;
    for (int s = 0; s < q; ++s) d += m.a(s);
    return d;
}

WeylElement times_x(const WeylElement& f, int s) {
    WeylElement r(f.n(), f.wtrunc(), f.cmin());
    for (const auto& [m, c] : f.terms()) {
        WMono t = m;
        t.a(s) += 1;
        r.add(t, c);
    }
    return r;
}

MatWeyl mat_dx(const MatWeyl& a, int s) {
    MatWeyl r = a;
    for (int i = 0; i < a.e(); ++i)
        for (int j = 0; j < a.e(); ++j) r.at(i, j) = a.at(i, j).dx(s);
    return r;
}

MatWeyl x_degree_part(const MatWeyl& a, int q, int d) {
    MatWeyl r = a;
    for (int i = 0; i < a.e(); ++i)
        for (int j = 0; j < a.e(); ++j) {
            WeylElement f(a.n(), a.at(i, j).wtrunc(), a.at(i, j).cmin());
            for (const auto& [m, c] : a.at(i, j).terms())
                if (xdeg(m, q) == d) f.add(m, c);
            r.at(i, j) = f;
        }
    return r;
}

MatWeyl h_coefficient(const MatWeyl& a, int l) {
    MatWeyl r = a;
    for (int i = 0; i < a.e(); ++i)
        for (int j = 0; j < a.e(); ++j) {
            int w = a.at(i, j).wtrunc();
            WeylElement f(a.n(), w >= WeylElement::kNoTrunc / 2 ? w : w - 2 * l, 0);
            for (const auto& [m, c] : a.at(i, j).terms())
                if (m.c == l) {
                    WMono t = m;
                    t.c = 0;
                    f.add(t, c);
                }
            r.at(i, j) = f;
        }
    return r;
}

MatWeyl shift_h(const MatWeyl& a, int k) {
    MatWeyl r = a;
    for (int i = 0; i < a.e(); ++i)
        for (int j = 0; j < a.e(); ++j) r.at(i, j) = a.at(i, j).hshift(k);
    return r;
}

MatWeyl identity_mat(int e, int n, int W) { return MatWeyl::scalar(e, WeylElement::scalar(n, 1, W)); }

// Residual R_s with y_s u'_i = sum_k R_s(i,k) u_k for u' = U u.
MatWeyl residual(const MatWeyl& U, const MatWeyl& phi_s, int s, int T) {
    MatWeyl r = shift_h(mat_dx(U, s), 1);
    r.set_trunc(U.wtrunc());
    r += mat_mul(U, phi_s);
    return mod_h(r, T);
}

}  // namespace

MatWeyl solve_gradient_system(const std::vector<MatWeyl>& F, int q) {
    if (static_cast<int>(F.size()) != q) fail("DimensionMismatch", "need one matrix per x_s");
    if (q == 0) fail("DimensionMismatch", "empty gradient system");
    for (int s = 0; s < q; ++s)
        for (int t = s + 1; t < q; ++t)
            if (!mat_dx(F[s], t).agrees(mat_dx(F[t], s)))
                fail("IntegrabilityFailure", "dF_s/dx_t != dF_t/dx_s");
    MatWeyl G = F[0];
    int e = G.e();
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) {
            int W = F[0].at(i, j).wtrunc();
            for (int s = 1; s < q; ++s) W = std::min(W, F[s].at(i, j).wtrunc());
            WeylElement g(F[0].n(), W == WeylElement::kNoTrunc ? W : W + 1);
            for (int s = 0; s < q; ++s)
                for (const auto& [m, c] : F[s].at(i, j).terms()) {
                    WMono t = m;
                    t.a(s) += 1;
                    g.add(t, c / (xdeg(m, q) + 1));
                }
            G.at(i, j) = g;
        }
    for (int s = 0; s < q; ++s)
        if (!mat_dx(G, s).agrees(F[s])) fail("IntegrabilityFailure", "gradient system has no solution");
    return G;
}

void check_presentation(const QuantModulePresentation& pres) {
    if (static_cast<int>(pres.phi.size()) != pres.q) fail("DimensionMismatch", "need one phi per y_s, s <= q");
    for (const auto& p : pres.phi) {
        if (p.e() != pres.e || p.n() != pres.n) fail("DimensionMismatch", "phi has the wrong shape");
        for (int i = 0; i < p.e(); ++i)
            for (int j = 0; j < p.e(); ++j)
                for (const auto& [m, c] : p.at(i, j).terms()) {
                    if (m.c < 1) fail("PreconditionViolated", "phi must vanish mod h");
                    for (int r = 0; r < pres.q; ++r)
                        if (m.b(r)) fail("PreconditionViolated", "phi must not involve y_1..y_q");
                }
    }
    // flatness: y_t y_s u_i = y_s y_t u_i mod h^T
    int W = pres.phi.empty() ? WeylElement::kNoTrunc : pres.phi[0].wtrunc();
    for (int i = 0; i < pres.e; ++i) {
        ModuleElement u = module_generator(pres.e, i, pres.n, pres.q, W);
        for (int s = 0; s < pres.q; ++s)
            for (int t = s + 1; t < pres.q; ++t) {
                WeylElement ys = WeylElement::y(pres.n, s, W), yt = WeylElement::y(pres.n, t, W);
                ModuleElement a = module_act(yt, module_act(ys, u, pres.phi), pres.phi);
                ModuleElement b = module_act(ys, module_act(yt, u, pres.phi), pres.phi);
                for (int j = 0; j < pres.e; ++j)
                    if (!mod_h(a.comp[j] - b.comp[j], pres.T + 1).is_zero())
                        fail("IntegrabilityFailure", "presentation is not flat");
            }
    }
}

MatWeyl quantize_module_generators(const QuantModulePresentation& pres) {
    check_presentation(pres);
    int e = pres.e, n = pres.n, q = pres.q, T = pres.T;
    int W = pres.phi.empty() ? WeylElement::kNoTrunc : pres.phi[0].wtrunc();
    for (const auto& p : pres.phi) W = std::min(W, p.wtrunc());
    MatWeyl I = identity_mat(e, n, W);
    if (q == 0 || T <= 1) return I;

    // order 1: dP/dx_s = -P F_s mod h, solved along rays from x_{<=q} = 0
    std::vector<MatWeyl> F;
    for (int s = 0; s < q; ++s) F.push_back(h_coefficient(pres.phi[s], 1));
    if (W >= WeylElement::kNoTrunc / 2) fail("PreconditionViolated", "presentation needs a weight truncation");
    // F is known to weight W - 2, so P is known to weight W - 1
    int W1 = W - 1;
    I.set_trunc(W1);
    std::vector<MatWeyl> P{I};
    for (int d = 1; d < W1; ++d) {
        MatWeyl next(e, n, W1);
        for (int s = 0; s < q; ++s)
            for (int j = 0; j < d; ++j) {
                MatWeyl prod = mod_h(mat_mul(P[j], x_degree_part(F[s], q, d - 1 - j)), 1);
                for (int a = 0; a < e; ++a)
                    for (int b = 0; b < e; ++b) next.at(a, b) += times_x(prod.at(a, b), s);
            }
        next *= Rational(-1, d);
        P.push_back(next);
    }
    MatWeyl U(e, n, W1);
    for (const auto& p : P) U += p;
    for (int s = 0; s < q; ++s)
        if (!mod_h(residual(U, pres.phi[s], s, T), 2).is_zero())
            fail("IntegrabilityFailure", "order-one equations are not integrable");

    // inverse of U mod h by a Neumann series (U - I has positive weight)
    MatWeyl N = U - I, Uinv = I, pw = I;
    for (int k = 1; k < W1; ++k) {
        pw = mod_h(mat_mul(pw, N), 1) * Rational(-1);
        if (pw.is_zero()) break;
        Uinv += pw;
    }

    for (int l = 2; l < T; ++l) {
        std::vector<MatWeyl> Fl;
        for (int s = 0; s < q; ++s) {
            MatWeyl R = residual(U, pres.phi[s], s, T);
            if (!mod_h(R, l).is_zero()) fail("Internal", "lower-order residual survived");
            Fl.push_back(mod_h(mat_mul(h_coefficient(R, l), Uinv), 1));
        }
        bool zero = true;
        for (const auto& f : Fl) zero = zero && f.is_zero();
        if (zero) continue;
        MatWeyl G = solve_gradient_system(Fl, q);
        U = mod_h(mat_mul(I - shift_h(G, l - 1), U), T);
    }

    for (int s = 0; s < q; ++s)
        if (!residual(U, pres.phi[s], s, T).is_zero()) fail("IntegrabilityFailure", "lift did not converge");
    return U;
}

}  // namespace wf
