#include "support.hpp"

#include <doctest.h>

using namespace wft;

namespace {

HUSeries C(const Rational& q) { return HUSeries::constant(q); }
HUSeries hu(const Rational& q, int h, int u) { return HUSeries::monomial(q, h, u); }

Exps mono(int n, std::initializer_list<std::pair<int, int>> vars) {
    Exps e(2 * n, 0);
    for (auto [v, k] : vars) e[v] = k;
    return e;
}

// dx_i -> bit i, dy_i -> bit n+i
std::uint32_t dx(int i) { return 1u << i; }
std::uint32_t dy(int n, int i) { return 1u << (n + i); }

FormalForm F(int n, const Exps& m, std::uint32_t mask, const Rational& c = 1) {
    return FormalForm::basis(n, m, mask, C(c));
}

std::vector<FormalForm> monomial_forms(int n, int maxdeg) {
    std::vector<Exps> monos{Exps(2 * n, 0)};
    for (int d = 1; d <= maxdeg; ++d) {
        std::vector<Exps> next;
        for (const auto& m : monos)
            if (total_degree(m) == d - 1)
                for (int v = 0; v < 2 * n; ++v) {
                    Exps e = m;
                    e[v] += 1;
                    next.push_back(e);
                }
        for (auto& e : next)
            if (std::find(monos.begin(), monos.end(), e) == monos.end()) monos.push_back(e);
    }
    std::vector<FormalForm> out;
    for (const auto& m : monos)
        for (std::uint32_t mask = 0; mask < (1u << (2 * n)); ++mask) out.push_back(F(n, m, mask));
    return out;
}

}  // namespace

TEST_CASE("wedge") {
    int n = 1;
    Exps z = mono(n, {});
    CHECK(wedge(F(n, z, dx(0)), F(n, z, dy(n, 0))) == omega_form(1));
    CHECK(wedge(F(n, z, dx(0)), F(n, z, dx(0))).is_zero());
    CHECK(wedge(F(n, z, dy(n, 0)), F(n, z, dx(0))) == -omega_form(1));
    // omega^2 = 2 dx1 dy1 dx2 dy2 = -2 dx1 dx2 dy1 dy2 in the global order
    FormalForm w2 = wedge(omega_form(2), omega_form(2));
    Exps z2 = mono(2, {});
    FormalForm expect = wedge(wedge(F(2, z2, dx(0)), F(2, z2, dy(2, 0))), wedge(F(2, z2, dx(1)), F(2, z2, dy(2, 1))));
    CHECK(w2 == expect.scaled(Rational(2)));
    CHECK(w2 == F(2, z2, 0xF, -2));
    for (int t = 0; t < 30; ++t) {
        FormalForm a = rform(2, 2, 3), b = rform(2, 2, 3), c = rform(2, 2, 3);
        CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
        FormalForm p = rform(2, 2, 2, 1), q = rform(2, 2, 2, 2);
        CHECK(wedge(p, q) == wedge(q, p));
        FormalForm r = rform(2, 2, 2, 1);
        CHECK(wedge(p, r) == -wedge(r, p));
    }
}

TEST_CASE("de Rham differential") {
    int n = 1;
    CHECK(d_de_rham(F(n, mono(n, {{0, 1}}), dy(n, 0))) == omega_form(1));
    for (int k = 1; k <= 3; ++k) CHECK(d_de_rham(alpha_form(k)) == omega_form(k));
    for (int t = 0; t < 30; ++t) {
        FormalForm a = rform(2, 4, 6);
        CHECK(d_de_rham(d_de_rham(a)).is_zero());
        FormalForm p = rform(2, 3, 3, 1), q = rform(2, 3, 3);
        // Leibniz with Koszul sign for a 1-form
        CHECK(d_de_rham(wedge(p, q)) == wedge(d_de_rham(p), q) - wedge(p, d_de_rham(q)));
    }
}

TEST_CASE("contractions") {
    int n = 1;
    FormalForm w = omega_form(1);
    FormalForm expect = F(n, mono(n, {{0, 1}}), dy(n, 0)) - F(n, mono(n, {{1, 1}}), dx(0));
    CHECK(contract(euler_field(1), w) == expect);
    // pi = d/dx ^ d/dy, iota_{X^Y} = iota_X iota_Y
    CHECK(iota_pi(w) == FormalForm::one(1).scaled(Rational(-1)));
    CHECK(contract(euler_field(1), FormalForm::one(1)).is_zero());
    for (int t = 0; t < 20; ++t) {
        PolyVec v(2);
        v.add(mono(2, {{t % 4, 1}}), 1u << (t % 4), C(rrat()));
        FormalForm a = rform(2, 2, 3, 1), b = rform(2, 2, 3);
        // derivation rule on a 1-form times anything
        CHECK(contract(v, wedge(a, b)) == wedge(contract(v, a), b) - wedge(a, contract(v, b)));
    }
}

TEST_CASE("L_pi") {
    int n = 1;
    // L_pi = d iota - iota d with iota_pi(omega) = -1
    FormalForm a = F(n, mono(n, {{0, 1}}), dx(0) | dy(n, 0));
    CHECK(lie_derivative_pi(a) == F(n, mono(n, {}), dx(0), -1));
    CHECK(lie_derivative_pi(FormalForm::one(1).scaled(Rational(3))).is_zero());
    for (int t = 0; t < 30; ++t) {
        FormalForm b = rform(2, 4, 6);
        CHECK(lie_derivative_pi(lie_derivative_pi(b)).is_zero());
        CHECK(lie_derivative_pi(b) == d_de_rham(iota_pi(b)) - iota_pi(d_de_rham(b)));
        // anticommutes with d
        CHECK(d_de_rham(lie_derivative_pi(b)) == -lie_derivative_pi(d_de_rham(b)));
    }
}

TEST_CASE("euler primitive") {
    int n = 1;
    FormalForm g = euler_primitive(omega_form(1));
    CHECK(g == alpha_form(1));
    FormalForm b = F(n, mono(n, {{0, 1}}), dx(0) | dy(n, 0));
    FormalForm expect = (F(n, mono(n, {{0, 2}}), dy(n, 0)) - F(n, mono(n, {{0, 1}, {1, 1}}), dx(0))).scaled(Rational(1, 3));
    CHECK(euler_primitive(b) == expect);
    CHECK_THROWS_WITH_AS(euler_primitive(F(n, mono(n, {{0, 1}}), dy(n, 0))).is_zero(), doctest::Contains("NotClosed"),
                         Error);
    CHECK_THROWS_WITH_AS(euler_primitive(FormalForm::one(1)), doctest::Contains("ZeroWeight"), Error);
    for (int t = 0; t < 20; ++t) {
        FormalForm a = rform(2, 3, 4, 1).coef_degree_part(2);
        FormalForm c = d_de_rham(a);
        if (c.is_zero()) continue;
        CHECK(d_de_rham(euler_primitive(c)) == c);
    }
}

TEST_CASE("symplectic star") {
    int n = 1;
    CHECK(sympl_star(FormalForm::one(1), 1) == omega_form(1));
    CHECK(sympl_star(omega_form(1), 1) == FormalForm::one(1).scaled(Rational(-1)));
    CHECK(sympl_star(F(n, mono(n, {}), dx(0)), 1) == F(n, mono(n, {}), dx(0)));
    CHECK(sympl_star(F(n, mono(n, {}), dy(n, 0)), 1) == F(n, mono(n, {}), dy(n, 0)));
    // star(1) = omega^n / n!
    FormalForm w2 = wedge(omega_form(2), omega_form(2)).scaled(Rational(1, 2));
    CHECK(sympl_star(FormalForm::one(2), 2) == w2);
    for (int k = 1; k <= 2; ++k)
        for (const auto& f : monomial_forms(k, 1)) {
            FormalForm ss = sympl_star(sympl_star(f, k), k);
            CHECK((ss == f || ss == -f));
        }
}

TEST_CASE("exponential and regrading operators") {
    int n = 1;
    HUSeries inv_uh = hu(1, -1, -1);
    CHECK(op_exp_wedge(inv_uh, FormalForm::one(1)) == FormalForm::one(1) + omega_form(1).scaled(inv_uh));
    FormalForm a = rform(2, 2, 5);
    CHECK(op_exp_wedge(HUSeries(), a) == a);
    CHECK(op_exp_wedge(hu(1, -1, 1), op_exp_wedge(hu(-1, -1, 1), a)) == a);
    FormalForm fn = F(n, mono(n, {{0, 2}}), 0);
    CHECK(op_exp_contract_pi(hu(1, 1, -1), fn) == fn);
    CHECK(op_exp_contract_pi(hu(1, 1, -1), omega_form(1)) == omega_form(1) - FormalForm::one(1).scaled(hu(1, 1, -1)));
    CHECK(op_exp_contract_pi(hu(1, 1, -1), op_exp_contract_pi(hu(-1, 1, -1), a)) == a);

    CHECK(regrade_u(F(n, mono(n, {}), dx(0))) == F(n, mono(n, {}), dx(0)).scaled(hu(1, 0, -1)));
    CHECK(regrade_u(FormalForm::one(1)) == FormalForm::one(1));
    CHECK(regrade_h(FormalForm::one(1), 1) == omega_form(1).scaled(hu(1, -1, -1)));
    for (int t = 0; t < 20; ++t) {
        FormalForm b = rform(2, 3, 5);
        HUSeries u = hu(1, 0, 1), h = hu(1, 1, 0);
        CHECK(regrade_u(d_de_rham(b).scaled(u)) == d_de_rham(regrade_u(b)));
        CHECK(regrade_h(lie_derivative_pi(b).scaled(h), 2) == d_de_rham(regrade_h(b, 2)));
    }
    // top-degree forms shift the h exponent by n
    FormalForm top = wedge(omega_form(2), omega_form(2));
    FormalForm g = regrade_h(top, 2);
    REQUIRE(g.size() == 1);
    CHECK(g.terms().begin()->second.terms().begin()->first.first == 2);
}

TEST_CASE("Hodge homotopy phi") {
    CHECK(hodge_homotopy_phi(FormalForm::one(1), 1) == alpha_form(1).scaled(hu(1, -1, -1)));
    HUSeries c = hu(1, -1, -1);
    for (int k = 1; k <= 2; ++k)
        for (int t = 0; t < 15; ++t) {
            FormalForm b = rform(k, 3, 4);
            FormalForm lhs = d_de_rham(hodge_homotopy_phi(b, k)) + hodge_homotopy_phi(d_de_rham(b), k);
            CHECK(lhs == op_exp_wedge(c, b) - b);
        }
    FormalForm top = omega_form(1);
    CHECK(hodge_homotopy_phi(top, 1).is_zero());
}

TEST_CASE("intertwining and SL2 identities on monomial forms") {
    HUSeries h = hu(1, 1, 0), u = hu(1, 0, 1);
    for (int n = 1; n <= 2; ++n)
        for (const auto& a : monomial_forms(n, n == 1 ? 3 : 1)) {
            auto hL_ud = [&](const FormalForm& x) {
                return lie_derivative_pi(x).scaled(h) + d_de_rham(x).scaled(u);
            };
            CHECK(op_exp_contract_pi(hu(1, 1, -1), hL_ud(a)) ==
                  d_de_rham(op_exp_contract_pi(hu(1, 1, -1), a)).scaled(u));
            CHECK(op_exp_wedge(hu(-1, -1, 1), hL_ud(a)) == lie_derivative_pi(op_exp_wedge(hu(-1, -1, 1), a)).scaled(h));
            FormalForm lhs = op_exp_wedge(hu(-1, -1, -1), regrade_h(op_exp_wedge(hu(-1, -1, 1), a), n));
            FormalForm rhs = regrade_u(op_exp_contract_pi(hu(1, 1, -1), a));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("omega and iota_pi span an sl2") {
    for (int n = 1; n <= 2; ++n) {
        std::map<int, Rational> lambda;
        for (const auto& a : monomial_forms(n, 1)) {
            FormalForm c = wedge(omega_form(n), iota_pi(a)) - iota_pi(wedge(omega_form(n), a));
            int deg = popcount(a.terms().begin()->first.mask);
            // compare with the eigenvalue n - deg (up to the convention sign)
            CHECK(c == a.scaled(Rational(n - deg)));
        }
    }
}

TEST_CASE("pullback by exp of a vector field") {
    PolyVec zero(1);
    FormalForm a = rform(1, 3, 4);
    CHECK(pullback_exp(zero, a, 6) == [&] {
        FormalForm b = a;
        b.set_trunc(6);
        return b;
    }());
    PolyVec mu(1);
    mu.add(mono(1, {{0, 2}}), dx(0), C(1));
    FormalForm x = F(1, mono(1, {{0, 1}}), 0);
    FormalForm expect(1, 6);
    for (int k = 1; k < 6; ++k) expect.add(mono(1, {{0, k}}), 0, C(1));
    CHECK(pullback_exp(mu, x, 6) == expect);
    PolyVec lin(1);
    lin.add(mono(1, {{0, 1}}), dx(0), C(1));
    CHECK_THROWS_WITH_AS(pullback_exp(lin, x, 6), doctest::Contains("NonNilpotentField"), Error);
    for (int t = 0; t < 15; ++t) {
        PolyVec v(2);
        for (int i = 0; i < 3; ++i) {
            Exps e(4, 0);
            int d = rint(2, 3);
            for (int s = 0; s < d; ++s) e[rint(0, 3)] += 1;
            v.add(e, 1u << rint(0, 3), C(rrat()));
        }
        FormalForm p = rform(2, 2, 3), q = rform(2, 2, 3);
        int T = 5;
        CHECK(pullback_exp(v, wedge(p, q), T) == wedge(pullback_exp(v, p, T), pullback_exp(v, q, T)));
        FormalForm dp = pullback_exp(v, d_de_rham(p), T - 1);
        CHECK(dp == d_de_rham(pullback_exp(v, p, T)));
    }
}

TEST_CASE("hamiltonian vector fields") {
    PolyVec pi = pi_bivector(1);
    QPoly y = QPoly::var(2, 1);
    PolyVec hy = ham_field(y, pi);
    PolyVec expect(1);
    expect.add(mono(1, {}), dx(0), C(-1));
    CHECK(hy == expect);
    CHECK(ham_field(QPoly::constant(2, Rational(3)), pi).is_zero());
    for (int t = 0; t < 20; ++t) {
        QPoly f = rpoly(4, 3, 3), g = rpoly(4, 3, 3);
        PolyVec pi2 = pi_bivector(2);
        PolyVec lhs = ham_field(f * g, pi2);
        PolyVec rhs(2), hg = ham_field(g, pi2), hf = ham_field(f, pi2);
        for (const auto& [k, c] : hg.terms())
            for (const auto& [e, q] : f.terms()) {
                Exps m = k.mono;
                for (int i = 0; i < 4; ++i) m[i] += e[i];
                rhs.add(m, k.mask, c * q);
            }
        for (const auto& [k, c] : hf.terms())
            for (const auto& [e, q] : g.terms()) {
                Exps m = k.mono;
                for (int i = 0; i < 4; ++i) m[i] += e[i];
                rhs.add(m, k.mask, c * q);
            }
        CHECK(lhs == rhs);
    }
}
