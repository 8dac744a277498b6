#include "doctest.h"
#include "support.hpp"

#include "weylforge/cli.hpp"
#include "weylforge/errors.hpp"
#include "weylforge/verify.hpp"

#include <sstream>

using namespace wft;

namespace {

std::string kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    return "";
}

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return "";
}

struct Run {
    int code;
    std::string out, err;
};

Run run_cmd(CommandConfig cfg) {
    std::ostringstream out, err;
    int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
}

CommandConfig cmd(const std::string& sub, const std::string& input) {
    CommandConfig c;
    c.subcommand = sub;
    c.input = input;
    return c;
}

}  // namespace

TEST_CASE("scalar and series round trips") {
    for (int t = 0; t < 30; ++t) {
        Rational q = rrat(1000);
        CHECK(rational_from(to_json(q), "q") == q);
        HUSeries s = rseries(-2, 3, 2, rint(0, 1) ? 4 : HUSeries::kNoTrunc);
        CHECK(series_from(to_json(s)) == s);
        HUSeries z = HUSeries::zseries(RVec{1, rrat(), rrat()}, 3);
        CHECK(series_from(to_json(z)) == z);
    }
    CHECK(series_from(Json("3/6")) == HUSeries::constant(Rational(1, 2)));
    CHECK(to_json(rational_from(Json("-4/6"), "q")) == "-2/3");
    CHECK(kind_of([] { rational_from(Json(0.5), "x"); }) == "MalformedInput");
    CHECK(kind_of([] { rational_from(Json("1/0"), "x"); }) == "MalformedInput");
    CHECK(kind_of([] { series_from(parse_json(R"({"terms":[{"h":0,"coef":"1","v":2}]})")); }) == "MalformedInput");
}

TEST_CASE("weyl, module and form round trips") {
    for (int t = 0; t < 30; ++t) {
        int n = rint(1, 3);
        WeylElement a = rweyl(n, rint(0, 1) ? 9 : WeylElement::kNoTrunc, 5, 3, -1, 1);
        CHECK(weyl_from(to_json(a)) == a);
        CHECK(weyl_from(to_json(a)).wtrunc() == a.wtrunc());
        MatWeyl m(2, n, 8);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m.at(i, j) = rweyl(n, 8);
        CHECK(matweyl_from(to_json(m)) == m);
        FormalForm f = rform(n, 3, 5);
        CHECK(form_from(to_json(f)) == f);
        PolyVec v = PolyVec::basis(n, Exps(2 * n, 1), 0b1, HUSeries::monomial(rrat_nz(), 1, 2));
        CHECK(polyvec_from(to_json(v)) == v);
    }
    // Unsorted differentials pick up the permutation sign.
    auto f = form_from(parse_json(R"({"n":1,"terms":[{"mono":[0,0],"idx":["dy1","dx1"],"coef":"2"}]})"));
    CHECK(f == FormalForm::basis(1, Exps{0, 0}, 0b11, HUSeries::constant(-2)));
    ModuleElement u = module_generator(2, 1, 2, 1, 6);
    CHECK(module_element_from(to_json(u)) == u);
    CHECK(kind_of([] { weyl_from(parse_json(R"({"n":1,"terms":[{"x":[1,0],"y":[0],"coef":"1"}]})")); }) ==
          "MalformedInput");
    CHECK(kind_of([] { weyl_from(parse_json(R"({"n":1,"terms":[{"x":[1],"y":[0],"h":-1,"coef":"1"}]})")); }) ==
          "MalformedInput");
    CHECK(kind_of([] { form_from(parse_json(R"({"n":1,"terms":[{"mono":[0,0],"idx":["dx1","dx1"],"coef":"1"}]})")); }) ==
          "MalformedInput");
}

TEST_CASE("algebra, cochain, chain and class round trips") {
    for (const auto& g : {LieAlgebra::sl2(), LieAlgebra::gl(2), LieAlgebra::borel3()}) {
        LieAlgebra back = lie_from(to_json(g));
        CHECK(to_json(back) == to_json(g));
        Cochain c = zero_cochain(2, 1);
        c.set({0, 2}, RVec{rrat_nz()});
        c.set({1, 2}, RVec{rrat_nz()});
        CHECK(cochain_from(to_json(c)) == c);
    }
    // Out-of-order keys are sorted with the permutation sign.
    auto c = cochain_from(parse_json(R"({"degree":2,"table":{"2,0":["3"]}})"));
    CHECK(c.at({0, 2}) == RVec{Rational(-3)});
    const std::string open_h = R"({"dim":3,"sc":[[0,1,2,"1"]],"h":[0,1]})";
    const std::string diagonal = R"({"dim":2,"sc":[[0,0,1,"1"]]})";
    CHECK(kind_of([&] { lie_from(parse_json(open_h)); }) == "NotSubalgebra");
    CHECK(kind_of([&] { lie_from(parse_json(diagonal)); }) == "MalformedInput");

    for (const auto& A : {FinAlgebra::matrices(2), FinAlgebra::truncated_poly(3)}) {
        FinAlgebra B = finalg_from(to_json(A));
        CHECK(to_json(B) == to_json(A));
        ChainTensor ch;
        ch.add({1, 2}, HUSeries::monomial(2, 0, 1));
        ch.add({0}, HUSeries::constant(-1));
        CHECK(chain_from(to_json(ch)) == ch);
    }
    auto t = tau_Y_assemble({"Q", 2}, {"N", 1}, {"E", 2}, {{"w", -1}}, 3);
    CHECK(chern_from(to_json(t)) == t);
    CHECK(to_json(chern_from(to_json(t))) == to_json(t));
}

TEST_CASE("parse errors carry positions") {
    std::string msg = message_of([] { parse_json("{\"a\": [1, 2,]}"); });
    CHECK(msg.find("MalformedInput") != std::string::npos);
    CHECK(msg.find("byte 13") != std::string::npos);
    msg = message_of([] { matweyl_from(parse_json(R"({"n":1,"terms":[{"x":[0],"y":[0],"coef":"1"},{"x":[0],"y":[0],"coef":"a"}]})")); });
    CHECK(msg.find("weyl.terms[1].coef") != std::string::npos);
}

TEST_CASE("run: outputs, determinism and exit codes") {
    const std::string yx =
        R"({"a":{"n":1,"terms":[{"x":[0],"y":[1],"coef":"1"}]},"b":{"n":1,"terms":[{"x":[1],"y":[0],"coef":"1"}]}})";
    Run r = run_cmd(cmd("weyl-mul", yx));
    REQUIRE(r.code == 0);
    WeylElement expect = weyl_mul(WeylElement::x(1, 0, WeylElement::kNoTrunc), WeylElement::y(1, 0, WeylElement::kNoTrunc)) +
                         WeylElement::hpow(1, 1, WeylElement::kNoTrunc);
    CHECK(weyl_from(parse_json(r.out)) == expect);
    CHECK(run_cmd(cmd("weyl-mul", yx)).out == r.out);
    CHECK(dump_json(reparse_output("weyl-mul", parse_json(r.out))) == r.out);

    CommandConfig g;
    g.subcommand = "genus";
    g.series = "ahat";
    g.degree = 4;
    Run gr = run_cmd(g);
    REQUIRE(gr.code == 0);
    CHECK(parse_json(gr.out)["coefficients"] == Json{"1", "0", "-1/48", "0", "1/2560"});

    CHECK(run_cmd(cmd("weyl-mul", "{\"a\": ")).code == 2);
    CHECK(run_cmd(cmd("weyl-mul", R"({"a":{"n":1,"terms":[]}})")).code == 2);
    CHECK(run_cmd(cmd("weyl-mul", R"({"a":{"n":1,"terms":[]},"b":{"n":1,"terms":[]},"c":1})")).code == 2);
    CHECK(run_cmd(cmd("no-such-command", "{}")).code == 2);
    CHECK(run_cmd(cmd("weyl-mul", "/nonexistent/input.json")).code == 2);
    CommandConfig neg = cmd("weyl-mul", yx);
    neg.trunc = 0;
    CHECK(run_cmd(neg).code == 2);
    // Library preconditions on valid JSON are input errors too.
    const std::string open_h = R"({"algebra":{"dim":3,"sc":[[0,1,2,"1"]],"h":[0,1]},"cochain":{"degree":0,"table":{}}})";
    CHECK(run_cmd(cmd("lie-d", open_h)).code == 2);

    CommandConfig v;
    v.subcommand = "verify";
    v.suite = "nonexistent";
    CHECK(run_cmd(v).code == 2);
    v.suite = "perturbation";
    Run vr = run_cmd(v);
    CHECK(vr.code == 0);
    CHECK(parse_json(vr.out)["pass"] == true);
}

TEST_CASE("term cap exits 3") {
    std::size_t old = max_terms();
    set_max_terms(10);
    const std::string big = R"({"a":{"n":2,"terms":[{"x":[0,0],"y":[3,3],"coef":"1"}]},)"
                            R"("b":{"n":2,"terms":[{"x":[3,3],"y":[0,0],"coef":"1"}]}})";
    Run r = run_cmd(cmd("weyl-mul", big));
    set_max_terms(old);
    CHECK(r.code == 3);
    CHECK(r.err.find("TermCapExceeded") != std::string::npos);
}

TEST_CASE("every suite is registered and passes at small size") {
    CHECK(suite_names().size() == 14);
    VerifyParams p;
    p.cases = 2;
    p.degree = 2;
    for (const auto& name : suite_names()) {
        auto r = run_suite(name, p);
        CHECK_MESSAGE(r.pass(), name);
        CHECK(r.to_json()["suite"] == name);
    }
}
