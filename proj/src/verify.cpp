#include "weylforge/verify.hpp"

#include "weylforge/darboux.hpp"
#include "weylforge/errors.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <numeric>
#include <random>

namespace wf {

namespace {

constexpr int kT = WeylElement::kNoTrunc;

class Gen {
public:
    explicit Gen(unsigned seed) : g_(seed) {}

    int rint(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(g_); }

    Rational rrat(int lim = 5) {
        Rational q(rint(-lim, lim), rint(1, 3));
        q.canonicalize();
        return q;
    }

    Rational rrat_nz(int lim = 5) {
        Rational q;
        do q = rrat(lim);
        while (is_zero(q));
        return q;
    }

    RVec rvec(int n) {
        RVec v(n);
        for (auto& x : v) x = rrat();
        return v;
    }

    // Monomial in variables [lo, hi) of x,y degree <= maxdeg.
    WMono mono_in(int lo, int hi, int maxdeg, int cmin, int cmax) {
        WMono m;
        int deg = lo < hi ? rint(0, maxdeg) : 0;
        for (int t = 0; t < deg; ++t) {
            int v = rint(lo, hi - 1);
            if (rint(0, 1))
                m.a(v) += 1;
            else
                m.b(v) += 1;
        }
        m.c = rint(cmin, cmax);
        return m;
    }

    WeylElement weyl(int n, int wtrunc, int nterms = 5, int maxdeg = 3, int cmin = 0, int cmax = 1) {
        WeylElement a(n, wtrunc, cmin);
        for (int i = 0; i < nterms; ++i) a.add(mono_in(0, n, maxdeg, cmin, cmax), rrat());
        return a;
    }

private:
    std::mt19937 g_;
};

unsigned suite_seed(unsigned seed, const std::string& name) {
    unsigned h = 2166136261u;
    for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 16777619u;
    return seed * 2654435761u ^ h;
}

struct Props {
    std::vector<PropertyResult> list;

    PropertyResult& get(const std::string& name) {
        for (auto& p : list)
            if (p.name == name) return p;
        list.push_back(PropertyResult{name, true, 0, Json()});
        return list.back();
    }

    void check(const std::string& name, bool ok, const std::function<Json()>& ce = [] { return Json::object(); }) {
        auto& p = get(name);
        ++p.cases;
        if (!ok && p.pass) {
            p.pass = false;
            p.counterexample = ce();
        }
    }
};

int pick(int given, int fallback) { return given > 0 ? given : fallback; }

// ---- weyl

void suite_weyl_assoc(const VerifyParams& p, Gen& g, Props& r) {
    int nmax = pick(p.n, 3), cases = pick(p.cases, 200), W = 8;
    for (int n = 1; n <= nmax; ++n)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                WeylElement lhs = weyl_mul(WeylElement::y(n, i, W), WeylElement::x(n, j, W));
                WeylElement rhs = weyl_mul(WeylElement::x(n, j, W), WeylElement::y(n, i, W));
                if (i == j) rhs += WeylElement::hpow(n, 1, W);
                r.check("commutation", lhs == rhs, [&] { return Json{{"n", n}, {"i", i}, {"j", j}, {"product", to_json(lhs)}}; });
            }
    for (int t = 0; t < cases; ++t) {
        int n = g.rint(1, nmax);
        WeylElement a = g.weyl(n, W), b = g.weyl(n, W), c = g.weyl(n, W);
        bool ok = weyl_mul(weyl_mul(a, b), c).agrees(weyl_mul(a, weyl_mul(b, c)));
        r.check("associativity", ok, [&] { return Json{{"a", to_json(a)}, {"b", to_json(b)}, {"c", to_json(c)}}; });
        r.check("parallel-equals-serial", weyl_mul_parallel(a, b) == weyl_mul_serial(a, b),
                [&] { return Json{{"a", to_json(a)}, {"b", to_json(b)}}; });
    }
}

void suite_quant_symbol(const VerifyParams& p, Gen& g, Props& r) {
    int nmax = pick(p.n, 3), cases = pick(p.cases, 100);
    for (int t = 0; t < cases; ++t) {
        int n = g.rint(1, nmax);
        WeylElement a = g.weyl(n, 10), b = g.weyl(n, 10);
        QPoly lhs = principal_symbol(weyl_commutator(a, b).hshift(-1));
        QPoly rhs = poisson_bracket(principal_symbol(a), principal_symbol(b), n);
        rhs.set_trunc(lhs.trunc());
        r.check("symbol-of-commutator", lhs == rhs, [&] { return Json{{"a", to_json(a)}, {"b", to_json(b)}}; });
    }
}

// ---- genus

void suite_grr(const VerifyParams& p, Gen&, Props& r) {
    int d = pick(p.degree, 10);
    auto A = ahat_series(d), T = todd_series(d);
    RVec e(d + 1, Rational(0));
    for (int k = 0; k <= d; ++k) e[k] = Rational(k % 2 ? -1 : 1) / (factorial(k) * (Integer(1) << k));
    HUSeries lhs = A * A * series_inv(T);
    r.check("G1^2/G2=exp(-z/2)", lhs == HUSeries::zseries(e, d + 1), [&] { return Json{{"lhs", to_json(lhs)}}; });
    for (int k = 1; k <= d; k += 2)
        r.check("ahat-series-even", is_zero(A.coef(k)), [&] { return Json{{"k", k}}; });
    for (int dd = 0; dd <= std::min(d, 6); ++dd)
        for (int q = 0; q <= 3; ++q)
            for (int pp = 0; pp <= 1; ++pp)
                r.check("grr_identity_check", grr_identity_check(dd, pp, q),
                        [&] { return Json{{"d", dd}, {"p", pp}, {"q", q}}; });
    for (int rank = 1; rank <= 3; ++rank) {
        auto c = chern_classes("N", rank, d);
        std::map<std::string, ChernClassExpr> flip;
        for (int k = 1; k <= rank; ++k) flip["N.c" + std::to_string(k)] = c[k].scaled(Rational(k % 2 ? -1 : 1));
        auto a = genus_from_series(A, "N", rank, d);
        r.check("ahat-dual-invariant", a.substitute(flip) == a, [&] { return Json{{"rank", rank}, {"ahat", to_json(a)}}; });
    }
}

// ---- liecoh

Cochain rcochain(const LieAlgebra& lie, int l, Gen& g) {
    Cochain c = zero_cochain(l, lie.vdim());
    std::vector<int> all(lie.dim());
    std::iota(all.begin(), all.end(), 0);
    for (const auto& t : increasing_tuples(all, l)) c.set(t, g.rvec(lie.vdim()));
    return c;
}

LieAlgebra sl2_adjoint() {
    auto s = LieAlgebra::sl2();
    std::vector<std::vector<RVec>> sc(3, std::vector<RVec>(3));
    std::vector<RMat> ad(3, mat_zero(3, 3));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            sc[i][j] = s.bracket(i, j);
            for (int k = 0; k < 3; ++k) ad[i][k][j] = s.bracket(i, j)[k];
        }
    return LieAlgebra(3, sc, {2}, {"E", "F", "H"}, 3, ad);
}

RMat coord_projection(const LieAlgebra& lie) {
    RMat pr = mat_zero(lie.dim(), lie.dim());
    for (int i : lie.h()) pr[i][i] = 1;
    return pr;
}

void suite_lie_d2(const VerifyParams& p, Gen& g, Props& r) {
    int cases = pick(p.cases, 3);
    std::vector<std::pair<std::string, LieAlgebra>> algs{{"sl2", LieAlgebra::sl2()},
                                                         {"gl2", LieAlgebra::gl(2)},
                                                         {"b3", LieAlgebra::borel3()},
                                                         {"sl2-adjoint", sl2_adjoint()}};
    for (const auto& [name, lie] : algs)
        for (int l = 0; l < lie.dim(); ++l)
            for (int t = 0; t < cases; ++t) {
                Cochain c = rcochain(lie, l, g);
                Cochain dd = d_lie(d_lie(c, lie), lie);
                r.check("d^2=0", dd.is_zero(),
                        [&] { return Json{{"algebra", to_json(lie)}, {"cochain", to_json(c)}, {"d2", to_json(dd)}}; });
            }
}

InvariantPoly power_of_coordinate(int l, int idx) {
    return polarize(l, [l, idx](const RVec& v) -> Rational {
        Rational x = 1;
        for (int i = 0; i < l; ++i) x *= v[idx];
        return x;
    });
}

void suite_chern_weil(const VerifyParams&, Gen&, Props& r) {
    struct Case {
        std::string name;
        LieAlgebra lie;
        InvariantPoly S;
    };
    std::vector<Case> cases;
    auto s = LieAlgebra::sl2();
    cases.push_back({"sl2 H", s, power_of_coordinate(1, 2)});
    cases.push_back({"sl2 H^2", s, power_of_coordinate(2, 2)});
    auto gl2 = LieAlgebra::gl(2);
    for (int l = 1; l <= 2; ++l)
        cases.push_back({"gl2 ch" + std::to_string(l), gl2, polarize(l, [l](const RVec& v) -> Rational {
                             RMat x = mat_zero(2, 2);
                             for (int i = 0; i < 2; ++i)
                                 for (int j = 0; j < 2; ++j) x[i][j] = v[i * 2 + j];
                             return class_ch_lie(l)[l](x);
                         })});
    auto b3 = LieAlgebra::borel3();
    for (int l = 1; l <= 2; ++l) cases.push_back({"b3 I^" + std::to_string(l), b3, power_of_coordinate(l, 0)});

    for (const auto& c : cases) {
        r.check("invariant-polynomial", is_invariant(c.S, c.lie, 10), [&] { return Json{{"case", c.name}}; });
        Cochain rho = chern_weil(c.S, c.lie, coord_projection(c.lie));
        Cochain d = d_lie(rho, c.lie);
        r.check("closed", d.is_zero(), [&] { return Json{{"case", c.name}, {"cochain", to_json(rho)}, {"d", to_json(d)}}; });
        r.check("relative", is_relative(rho, c.lie), [&] { return Json{{"case", c.name}, {"cochain", to_json(rho)}}; });
    }

    RMat pr1 = coord_projection(b3), pr2 = pr1;
    pr2[0][4] = 1;
    for (int l = 1; l <= 2; ++l) {
        auto S = power_of_coordinate(l, 0);
        Cochain diff = cochain_add(chern_weil(S, b3, pr1), cochain_scale(chern_weil(S, b3, pr2), -1));
        auto res = exactness_solve(diff, b3, true);
        bool ok = !diff.is_zero() && res.exact && is_relative(res.primitive, b3) && d_lie(res.primitive, b3) == diff;
        r.check("projection-independence", ok, [&] { return Json{{"degree", 2 * l}, {"difference", to_json(diff)}}; });
    }
}

GElement gel(const MatWeyl& m) {
    GElement x{m};
    for (int i = 0; i < x.e(); ++i)
        for (int j = 0; j < x.e(); ++j) x.mat.at(i, j).set_cmin(-1);
    return x;
}

Json gjson(const GElement& x) { return to_json(x.mat); }

Json gjson(const std::vector<GElement>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(gjson(x));
    return a;
}

void suite_c0(const VerifyParams& p, Gen& g, Props& r) {
    int cases = pick(p.cases, 20);
    for (int t = 0; t < cases; ++t) {
        int q = t % 3, n = std::max(pick(p.n, 2), q);
        WeylElement d(n, kT, -1);
        Rational tr = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Rational b = g.rrat();
                WMono m;
                m.a(i) = 1;
                m.b(j) = 1;
                m.c = -1;
                d.add(m, b);
                if (i == j) tr += b;
            }
        GElement x = gel(MatWeyl::scalar(g.rint(1, 2), d));
        Rational v = projection_c0(x), w = project_components(x, q).c0;
        r.check("c0 = -tr(b)/2", v == -tr / 2 && w == v,
                [&] { return Json{{"q", q}, {"element", gjson(x)}, {"value", to_string(v)}, {"expected", to_string(-tr / 2)}}; });
    }
}

// Scalar part (1/h)(A + B) with h A normalizing J, A in the first q variables, B in the rest.
WeylElement rnormalizer(int n, int q, int nterms, Gen& g) {
    WeylElement d(n, kT, -1);
    for (int t = 0; t < nterms; ++t) {
        WMono m = g.mono_in(0, q, 3, 0, 2);
        bool xr = false, yr = false;
        for (int s = 0; s < q; ++s) {
            xr |= m.a(s) > 0;
            yr |= m.b(s) > 0;
        }
        if (xr && !yr && m.c == 0) continue;
        m.c -= 1;
        d.add(m, g.rrat());
    }
    for (int t = 0; t < nterms; ++t) d.add(g.mono_in(q, n, 3, -1, 1), g.rrat());
    return d;
}

GElement rmodel(int e, int n, int q, Gen& g) {
    MatWeyl m(e, n, kT, -1);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j)
            for (int t = 0; t < 2; ++t) m.at(i, j).add(g.mono_in(q, n, 2, 0, 1), g.rrat());
    return gel(MatWeyl::scalar(e, rnormalizer(n, q, 5, g)) + m);
}

GElement rideal(int e, int n, int q, Gen& g) {
    WeylElement j(n, kT, -1);
    for (int t = 0; t < 3; ++t) {
        WMono m = g.mono_in(0, q, 2, 0, 1);
        m.b(g.rint(0, q - 1)) += 1;
        m.c -= 1;
        j.add(m, g.rrat());
    }
    for (int t = 0; t < 3; ++t) j.add(g.mono_in(0, q, 3, 0, 1), g.rrat());
    return gel(MatWeyl::scalar(e, j));
}

void suite_ideal_vanishing(const VerifyParams& p, Gen& g, Props& r) {
    int e = 2, q = 1, n = 2, cases = pick(p.cases, 50);
    for (int t = 0; t < cases; ++t) {
        std::vector<GElement> args;
        for (int i = 0; i < 4; ++i) args.push_back(rmodel(e, n, q, g));
        int pos = g.rint(0, 3);
        args[pos] = rideal(e, n, q, g);
        std::vector<GElement> two{args[pos], args[(pos + 1) % 4]};
        if (g.rint(0, 1)) std::swap(two[0], two[1]);
        auto ce = [&] { return Json{{"q", q}, {"arguments", gjson(args)}, {"ideal_position", pos}}; };
        r.check("ahat-factor-degree-4", ahat_factor_eval(args, 2, q).is_zero(), ce);
        r.check("ch-exp-degree-4", ch_c1_c0_eval(args, 2, q).is_zero(), ce);
        r.check("ahat-factor-degree-2", ahat_factor_eval(two, 1, q).is_zero(), ce);
        r.check("ch-exp-degree-2", ch_c1_c0_eval(two, 1, q).is_zero(), ce);
    }
    bool nonzero = false;
    for (int t = 0; t < 60 && !nonzero; ++t) {
        std::vector<GElement> generic;
        for (int i = 0; i < 4; ++i) generic.push_back(rmodel(e, n, q, g));
        nonzero = !ch_c1_c0_eval(generic, 2, q).is_zero();
    }
    r.check("control-generic-nonzero", nonzero);
}

// ---- formcalc

HUSeries hu(const Rational& c, int h, int u) { return HUSeries::monomial(c, h, u); }

std::vector<FormalForm> monomial_forms(int n, int maxdeg) {
    std::vector<Exps> monos;
    std::function<void(Exps&, int, int)> rec = [&](Exps& e, int v, int left) {
        if (v == 2 * n) {
            monos.push_back(e);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            e[v] = k;
            rec(e, v + 1, left - k);
        }
        e[v] = 0;
    };
    Exps e(2 * n, 0);
    rec(e, 0, maxdeg);
    std::vector<FormalForm> out;
    for (const auto& m : monos)
        for (std::uint32_t mask = 0; mask < (1u << (2 * n)); ++mask)
            out.push_back(FormalForm::basis(n, m, mask, HUSeries::constant(1)));
    return out;
}

std::vector<int> form_ns(const VerifyParams& p) { return p.n > 0 ? std::vector<int>{p.n} : std::vector<int>{1, 2}; }

void suite_hodge_sl2(const VerifyParams& p, Gen&, Props& r) {
    int deg = p.degree >= 0 ? p.degree : 4;
    for (int n : form_ns(p)) {
        FormalForm w = omega_form(n);
        for (const auto& a : monomial_forms(n, deg)) {
            FormalForm c = wedge(w, iota_pi(a)) - iota_pi(wedge(w, a));
            int k = popcount(a.terms().begin()->first.mask);
            r.check("[omega, iota_pi] = (n - deg)", c == a.scaled(Rational(n - k)), [&] { return Json{{"form", to_json(a)}}; });
        }
    }
}

void suite_intertwine(const VerifyParams& p, Gen&, Props& r) {
    int deg = p.degree >= 0 ? p.degree : 4;
    HUSeries h = hu(1, 1, 0), u = hu(1, 0, 1);
    for (int n : form_ns(p))
        for (const auto& a : monomial_forms(n, deg)) {
            FormalForm hl_ud = lie_derivative_pi(a).scaled(h) + d_de_rham(a).scaled(u);
            auto ce = [&] { return Json{{"form", to_json(a)}}; };
            FormalForm ec = op_exp_contract_pi(hu(1, 1, -1), a);
            FormalForm ew = op_exp_wedge(hu(-1, -1, 1), a);
            r.check("contract-intertwines", op_exp_contract_pi(hu(1, 1, -1), hl_ud) == d_de_rham(ec).scaled(u), ce);
            r.check("wedge-intertwines", op_exp_wedge(hu(-1, -1, 1), hl_ud) == lie_derivative_pi(ew).scaled(h), ce);
            r.check("regrading", op_exp_wedge(hu(-1, -1, -1), regrade_h(ew, n)) == regrade_u(ec), ce);
        }
}

void suite_homotopy_phi(const VerifyParams& p, Gen&, Props& r) {
    int deg = p.degree >= 0 ? p.degree : 4;
    HUSeries c = hu(1, -1, -1);
    for (int n : form_ns(p))
        for (const auto& b : monomial_forms(n, deg)) {
            FormalForm lhs = d_de_rham(hodge_homotopy_phi(b, n)) + hodge_homotopy_phi(d_de_rham(b), n);
            r.check("d phi + phi d = exp(omega/uh) - 1", lhs == op_exp_wedge(c, b) - b,
                    [&] { return Json{{"form", to_json(b)}}; });
        }
}

// ---- cyclic

ChainTensor rchain(const FinAlgebra& A, int lmax, int nterms, Gen& g) {
    ChainTensor c;
    for (int t = 0; t < nterms; ++t) {
        int l = g.rint(0, lmax);
        ChainTensor::Word w{g.rint(0, A.dim() - 1)};
        for (int s = 0; s < l; ++s) {
            int k;
            do k = g.rint(0, A.dim() - 1);
            while (k == A.pivot());
            w.push_back(k);
        }
        c.add(w, HUSeries::constant(g.rrat_nz()));
    }
    return c;
}

void suite_cyclic(const VerifyParams& p, Gen& g, Props& r) {
    int cases = pick(p.cases, 100);
    std::vector<std::pair<std::string, FinAlgebra>> algs{{"gl2", FinAlgebra::matrices(2)},
                                                         {"Q[x]/(x^3)", FinAlgebra::truncated_poly(3)}};
    for (const auto& [name, A] : algs) {
        for (auto v : {CyclicVariant::Negative, CyclicVariant::Periodic})
            r.check("(b+uB)(1)=0", cyclic_differential(unit_chain(A), A, v).is_zero(), [&] { return Json{{"algebra", name}}; });
        for (int t = 0; t < cases; ++t) {
            ChainTensor c = rchain(A, 3, 4, g);
            ChainTensor bc = hochschild_b(c, A), Bc = connes_B(c, A);
            auto ce = [&] { return Json{{"algebra", to_json(A)}, {"chain", to_json(c)}}; };
            r.check("b^2=0", hochschild_b(bc, A).is_zero(), ce);
            r.check("B^2=0", connes_B(Bc, A).is_zero(), ce);
            r.check("bB+Bb=0", (hochschild_b(Bc, A) + connes_B(bc, A)).is_zero(), ce);
        }
    }
}

// ---- darboux

void suite_darboux(const VerifyParams& p, Gen& g, Props& r) {
    int n = 2, q = 1, T = 5, cases = pick(p.cases, 20);
    for (int t = 0; t < cases; ++t) {
        FormalForm theta(n);
        for (int k = 0; k < 5; ++k) {
            Exps e(2 * n, 0);
            int d = g.rint(2, 3);
            for (int s = 0; s < d; ++s) e[g.rint(0, 2 * n - 1)] += 1;
            int slot = g.rint(0, 2 * n - 1);
            if (slot < n) e[n + g.rint(0, q - 1)] += 1;
            theta.add(e, 1u << slot, HUSeries::constant(g.rrat()));
        }
        FormalForm alpha = omega_form(n) + d_de_rham(theta);
        auto ce = [&] { return Json{{"alpha", to_json(alpha)}, {"q", q}, {"T", T}}; };
        r.check("ideal-compatible-input", ideal_compatible(alpha, q), ce);
        FormalDiffeo phi;
        try {
            phi = darboux_normalize(alpha, q, T);
        } catch (const Error& e) {
            r.check("pullback-returns-omega", false, [&] {
                Json j = ce();
                j["error"] = e.what();
                return j;
            });
            continue;
        }
        FormalForm target = omega_form(n);
        target.set_trunc(T);
        r.check("pullback-returns-omega", apply_diffeo(phi, alpha) == target, ce);
        bool ideal = true, homog = true;
        for (std::size_t i = 0; i < phi.steps.size(); ++i) {
            ideal &= preserves_ideal(phi.steps[i], q);
            for (const auto& kv : phi.steps[i].terms()) homog &= total_degree(kv.first.mono) == phi.degrees[i];
        }
        r.check("steps-preserve-ideal", ideal, ce);
        r.check("steps-homogeneous", homog, ce);
    }
}

WeylElement hfree_random(int n, int q, int W, int nterms, int mindeg, Gen& g) {
    WeylElement f(n, W);
    for (int t = 0; t < nterms; ++t) {
        WMono m;
        int deg = g.rint(mindeg, 3);
        for (int k = 0; k < deg; ++k) {
            int v = g.rint(0, 2 * n - 1 - q);
            if (v < n)
                m.a(v) += 1;
            else
                m.b(v - n + q) += 1;
        }
        f.add(m, g.rrat());
    }
    return f;
}

bool lift_ok(const QuantModulePresentation& pres, const MatWeyl& U) {
    int W = U.wtrunc();
    for (int i = 0; i < pres.e; ++i) {
        ModuleElement u;
        u.q = pres.q;
        for (int j = 0; j < pres.e; ++j) u.comp.push_back(U.at(i, j));
        for (int s = 0; s < pres.q; ++s) {
            ModuleElement res = module_act(WeylElement::y(pres.n, s, W), u, pres.phi);
            for (const auto& f : res.comp)
                if (!mod_h(f, pres.T).is_zero()) return false;
        }
    }
    return true;
}

Json pres_json(const QuantModulePresentation& pres) {
    Json phi = Json::array();
    for (const auto& m : pres.phi) phi.push_back(to_json(m));
    return {{"e", pres.e}, {"n", pres.n}, {"q", pres.q}, {"T", pres.T}, {"phi", phi}};
}

// Presentation of V (standard module) for V = 1 + K: y_s u'_i = h (dV/dx_s V^{-1}) u'.
QuantModulePresentation gauge_presentation(int e, int q, int T, Gen& g) {
    int n = q + 1, W = 7;
    MatWeyl K(e, n, W);
    for (int i = 0; i < e; ++i)
        for (int j = 0; j < e; ++j) {
            K.at(i, j) = hfree_random(n, q, W, 2, 1, g);
            WeylElement hk = hfree_random(n, q, W, 2, 0, g).hshift(1);
            hk.set_trunc(W);
            K.at(i, j) += hk;
        }
    MatWeyl I = MatWeyl::scalar(e, WeylElement::scalar(n, 1, W));
    MatWeyl V = I + K, Vinv = I, pw = I;
    for (int k = 1; k < W + T + 1; ++k) {
        pw = mod_h(mat_mul(pw, K), T + 1) * Rational(-1);
        if (pw.is_zero()) break;
        Vinv += pw;
    }
    std::vector<MatWeyl> phi;
    for (int s = 0; s < q; ++s) {
        MatWeyl dV = V;
        for (int i = 0; i < e; ++i)
            for (int j = 0; j < e; ++j) dV.at(i, j) = V.at(i, j).dx(s).hshift(1);
        dV.set_trunc(W);
        phi.push_back(mod_h(mat_mul(dV, Vinv), T + 1));
    }
    return QuantModulePresentation{e, n, q, phi, T};
}

void suite_module_lift(const VerifyParams& p, Gen& g, Props& r) {
    int T = 4, cases = pick(p.cases, 2);
    for (int e = 1; e <= 2; ++e)
        for (int q = 1; q <= 2; ++q)
            for (int t = 0; t < cases; ++t) {
                auto pres = gauge_presentation(e, q, T, g);
                MatWeyl U = quantize_module_generators(pres);
                r.check("y_s U u_i = 0 mod h^T", lift_ok(pres, U), [&] { return pres_json(pres); });
            }
    // phi_1 = h x_1 runs the order-1 exp/log branch; U = exp(-x_1^2/2).
    int W = 9;
    WeylElement hx = weyl_mul(WeylElement::hpow(1, 1, W), WeylElement::x(1, 0, W));
    QuantModulePresentation p1{1, 1, 1, {MatWeyl::scalar(1, hx)}, T};
    MatWeyl U = quantize_module_generators(p1);
    WeylElement expect(1, W);
    Rational c = 1;
    for (int k = 0; 2 * k < W; ++k) {
        WMono m;
        m.a(0) = static_cast<std::uint8_t>(2 * k);
        expect.add(m, c);
        c *= Rational(-1, 2 * (k + 1));
    }
    r.check("exp-log-branch-closed-form", U.at(0, 0).agrees(expect), [&] { return Json{{"U", to_json(U)}}; });
    r.check("y_s U u_i = 0 mod h^T", lift_ok(p1, U), [&] { return pres_json(p1); });
}

// ---- perturbation lemma

GradedModule graded(int jmin, std::vector<int> dims, std::vector<RMat> d, std::vector<std::vector<RMat>> act) {
    GradedModule M;
    M.jmin = jmin;
    M.dims = std::move(dims);
    M.d = std::move(d);
    M.action = std::move(act);
    return M;
}

HomCochain rhom(const GradedModule& M, const LieAlgebra& lie, Gen& g) {
    HomCochain a;
    std::vector<int> all(lie.dim());
    std::iota(all.begin(), all.end(), 0);
    for (int n = 0; n <= lie.dim(); ++n)
        for (int j = M.jmin; j <= M.jmax(); ++j)
            for (const auto& t : increasing_tuples(all, n)) {
                RVec v = g.rvec(M.dim(j));
                if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return !is_zero(x); })) a.parts[{n, j}][t] = v;
            }
    return a;
}

void suite_perturbation(const VerifyParams& p, Gen& g, Props& r) {
    int cases = pick(p.cases, 8);
    Rational one(1), zero(0);
    // g = span(a, b), [a, b] = b; M^-1 = (s, t), M^0 = (m), d t = m; N = k s.
    std::vector<std::vector<RVec>> sc(2, std::vector<RVec>(2, RVec(2, zero)));
    sc[0][1][1] = 1;
    sc[1][0][1] = -1;
    LieAlgebra lie(2, sc);
    RMat ra{{one, one}, {zero, zero}}, rb{{zero, one}, {zero, zero}}, z1 = mat_zero(1, 1);
    auto M = graded(-1, {2, 1}, {RMat{{zero, one}}, RMat{}}, {{ra, rb}, {z1, z1}});
    auto N = graded(-1, {1}, {RMat{}}, {{RMat{{one}}, RMat{{zero}}}});
    check_module(M, lie);
    check_module(N, lie);
    GradedMap f{0, {RMat{{one, zero}}, RMat{}}}, gg{0, {RMat{{one}, {zero}}}}, phi{-1, {RMat{}, RMat{{zero}, {-one}}}};
    bool nontrivial = false;
    for (int t = 0; t < cases; ++t) {
        auto a = rhom(M, lie, g);
        auto ft = perturb_f_tilde(f, gg, phi, a, M, N, lie);
        auto ftd = perturb_f_tilde(f, gg, phi, d_total(a, M, lie), M, N, lie);
        r.check("f~ is a chain map", ftd == d_total(ft, N, lie), [&] { return Json{{"case", t}}; });
        nontrivial |= !apply_map(f, delta_act(apply_map(phi, a, M, M), M, lie), M, N).is_zero();
    }
    r.check("f~ series has length >= 2", nontrivial);

    // Contractible C: r -> w in degrees -2, -1 and t -> m in -1, 0; both generators send t to w.
    auto ab = LieAlgebra::abelian(2);
    RMat E{{zero, zero}, {one, zero}};
    auto C = graded(-2, {1, 2, 1}, {RMat{{zero}, {one}}, RMat{{one, zero}}, RMat{}}, {{z1, z1}, {E, E}, {z1, z1}});
    check_module(C, ab);
    GradedMap zmap{0, {RMat{{zero}}, mat_zero(2, 2), RMat{{zero}}}};
    GradedMap psi{-1, {RMat{}, RMat{{zero, -one}}, RMat{{-one}, {zero}}}};
    bool longer = false;
    for (int t = 0; t < cases; ++t) {
        auto a = rhom(C, ab, g);
        auto pt = perturb_phi_tilde(psi, a, C, ab);
        auto lhs = hom_add(d_total(pt, C, ab), perturb_phi_tilde(psi, d_total(a, C, ab), C, ab));
        r.check("phi~ is a homotopy", lhs == hom_add(apply_map(zmap, a, C, C), hom_scale(a, -1)),
                [&] { return Json{{"case", t}}; });
        longer |= !(pt == apply_map(psi, a, C, C));
    }
    r.check("phi~ series has length >= 2", longer);
}

using SuiteFn = void (*)(const VerifyParams&, Gen&, Props&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
    static const std::vector<std::pair<std::string, SuiteFn>> r{
        {"weyl-assoc", suite_weyl_assoc},
        {"quant-symbol", suite_quant_symbol},
        {"hodge-sl2", suite_hodge_sl2},
        {"intertwine", suite_intertwine},
        {"homotopy-phi", suite_homotopy_phi},
        {"lie-d2", suite_lie_d2},
        {"chern-weil-closed", suite_chern_weil},
        {"c0-projection", suite_c0},
        {"ideal-vanishing", suite_ideal_vanishing},
        {"cyclic-identities", suite_cyclic},
        {"grr-identity", suite_grr},
        {"darboux-roundtrip", suite_darboux},
        {"module-lift", suite_module_lift},
        {"perturbation", suite_perturbation},
    };
    return r;
}

}  // namespace

bool SuiteResult::pass() const {
    return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.pass; });
}

Json SuiteResult::to_json() const {
    Json props = Json::array();
    for (const auto& p : properties) {
        Json j = {{"name", p.name}, {"pass", p.pass}, {"cases", p.cases}};
        if (!p.pass) j["counterexample"] = p.counterexample;
        props.push_back(j);
    }
    return {{"suite", suite}, {"pass", pass()}, {"properties", props}};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [n, f] : registry()) v.push_back(n);
        return v;
    }();
    return names;
}

SuiteResult run_suite(const std::string& name, const VerifyParams& p) {
    for (const auto& [n, fn] : registry()) {
        if (n != name) continue;
        auto start = std::chrono::steady_clock::now();
        Gen g(suite_seed(p.seed, name));
        Props props;
        fn(p, g, props);
        SuiteResult res{name, std::move(props.list), 0};
        res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        return res;
    }
    fail("MalformedInput", "unknown suite '" + name + "'");
}

}  // namespace wf
