#include "weylforge/cli.hpp"

#include "weylforge/darboux.hpp"
#include "weylforge/errors.hpp"
#include "weylforge/verify.hpp"

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace wf {

namespace {

Json read_input(const CommandConfig& cfg) {
    std::string text;
    std::size_t first = cfg.input.find_first_not_of(" \t\r\n");
    if (cfg.input.empty()) {
        std::stringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
    } else if (first != std::string::npos && (cfg.input[first] == '{' || cfg.input[first] == '[')) {
        text = cfg.input;
    } else {
        std::ifstream f(cfg.input);
        if (!f) fail("MalformedInput", "cannot read input file '" + cfg.input + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    return parse_json(text);
}

GElement as_g(MatWeyl m) {
    for (int i = 0; i < m.e(); ++i)
        for (int j = 0; j < m.e(); ++j) m.at(i, j).set_cmin(std::min(m.at(i, j).cmin(), -1));
    GElement g{m};
    if (!g.valid()) fail("MalformedInput", "element is not in (1/h)D + gl_e(D)");
    return g;
}

void retrunc(MatWeyl& m, const CommandConfig& cfg) {
    if (cfg.trunc) m.set_trunc(*cfg.trunc);
}

Json cmd_weyl_mul(const Json& in, const CommandConfig& cfg) {
    check_keys(in, {"a", "b"}, "input");
    MatWeyl a = matweyl_from(field(in, "a", "input"), "input.a"), b = matweyl_from(field(in, "b", "input"), "input.b");
    if (a.e() != b.e() || a.n() != b.n()) fail("MalformedInput", "input: a and b must have equal n and e");
    retrunc(a, cfg);
    retrunc(b, cfg);
    if (a.e() == 1) return to_json(weyl_mul(a.at(0, 0), b.at(0, 0)));
    return to_json(mat_mul(a, b));
}

Json cmd_weyl_bracket(const Json& in, const CommandConfig& cfg) {
    check_keys(in, {"a", "b"}, "input");
    MatWeyl a = matweyl_from(field(in, "a", "input"), "input.a"), b = matweyl_from(field(in, "b", "input"), "input.b");
    if (a.e() != b.e() || a.n() != b.n()) fail("MalformedInput", "input: a and b must have equal n and e");
    retrunc(a, cfg);
    retrunc(b, cfg);
    return to_json(g_bracket(as_g(a), as_g(b)).mat);
}

std::vector<MatWeyl> phi_list(const Json& in, const std::string& where) {
    std::vector<MatWeyl> phi;
    if (!in.contains("phi")) return phi;
    const Json& arr = in["phi"];
    if (!arr.is_array()) fail("MalformedInput", where + ".phi: expected array");
    for (std::size_t s = 0; s < arr.size(); ++s)
        phi.push_back(matweyl_from(arr[s], where + ".phi[" + std::to_string(s) + "]"));
    return phi;
}

Json cmd_module_act(const Json& in, const CommandConfig& cfg) {
    check_keys(in, {"d", "m", "phi"}, "input");
    WeylElement d = weyl_from(field(in, "d", "input"), "input.d");
    ModuleElement m = module_element_from(field(in, "m", "input"), "input.m");
    if (cfg.trunc) {
        d.set_trunc(*cfg.trunc);
        for (auto& c : m.comp) c.set_trunc(*cfg.trunc);
    }
    auto phi = phi_list(in, "input");
    if (!phi.empty() && static_cast<int>(phi.size()) != m.q) fail("MalformedInput", "input.phi: need one matrix per y_s, s < q");
    return to_json(module_act(d, m, phi));
}

Json cmd_darboux(const Json& in, const CommandConfig& cfg) {
    check_keys(in, {"alpha", "q", "T"}, "input");
    FormalForm alpha = form_from(field(in, "alpha", "input"), "input.alpha");
    int q = int_field(in, "q", "input");
    int T = cfg.trunc ? *cfg.trunc : int_field(in, "T", "input");
    FormalDiffeo phi = darboux_normalize(alpha, q, T);
    Json steps = Json::array();
    for (const auto& s : phi.steps) steps.push_back(to_json(s));
    return {{"n", phi.n}, {"T", phi.T}, {"degrees", phi.degrees}, {"steps", steps}};
}

Json cmd_module_lift(const Json& in, const CommandConfig& cfg) {
    check_keys(in, {"e", "n", "q", "T", "phi"}, "input");
    QuantModulePresentation pres;
    pres.e = int_field(in, "e", "input");
    pres.n = int_field(in, "n", "input");
    pres.q = int_field(in, "q", "input");
    pres.T = cfg.trunc ? *cfg.trunc : int_field(in, "T", "input");
    pres.phi = phi_list(in, "input");
    return {{"U", to_json(quantize_module_generators(pres))}};
}

Json cmd_lie_d(const Json& in, const CommandConfig&) {
    check_keys(in, {"algebra", "cochain"}, "input");
    LieAlgebra g = lie_from(field(in, "algebra", "input"), "input.algebra");
    Cochain c = cochain_from(field(in, "cochain", "input"), "input.cochain");
    if (c.vdim != g.vdim()) fail("MalformedInput", "input.cochain: vdim differs from the module dimension");
    for (const auto& [idx, v] : c.table)
        for (int i : idx)
            if (i >= g.dim()) fail("MalformedInput", "input.cochain: index out of range");
    return to_json(d_lie(c, g));
}

Json cmd_chern_weil(const Json& in, const CommandConfig&) {
    check_keys(in, {"algebra", "projection", "poly"}, "input");
    LieAlgebra g = lie_from(field(in, "algebra", "input"), "input.algebra");
    RMat pr = mat_zero(g.dim(), g.dim());
    if (in.contains("projection")) {
        pr = rmat_from(in["projection"], "input.projection");
        if (static_cast<int>(pr.size()) != g.dim() || static_cast<int>(pr[0].size()) != g.dim())
            fail("MalformedInput", "input.projection: expected a dim x dim matrix");
    } else {
        for (int i : g.h()) pr[i][i] = 1;
    }
    const Json& poly = field(in, "poly", "input");
    check_keys(poly, {"degree", "terms"}, "input.poly");
    int l = int_field(poly, "degree", "input.poly");
    if (l < 1) fail("MalformedInput", "input.poly.degree: must be positive");
    std::vector<std::pair<std::vector<int>, Rational>> terms;
    const Json& list = field(poly, "terms", "input.poly");
    if (!list.is_array()) fail("MalformedInput", "input.poly.terms: expected array");
    for (std::size_t t = 0; t < list.size(); ++t) {
        std::string w = "input.poly.terms[" + std::to_string(t) + "]";
        check_keys(list[t], {"mono", "coef"}, w);
        const Json& m = field(list[t], "mono", w);
        if (!m.is_array() || static_cast<int>(m.size()) != g.dim()) fail("MalformedInput", w + ".mono: expected dim exponents");
        std::vector<int> e;
        int deg = 0;
        for (const auto& x : m) {
            if (!x.is_number_integer() || x.get<int>() < 0) fail("MalformedInput", w + ".mono: bad exponent");
            e.push_back(x.get<int>());
            deg += e.back();
        }
        if (deg != l) fail("MalformedInput", w + ": polynomial must be homogeneous of the given degree");
        terms.push_back({e, rational_from(field(list[t], "coef", w), w + ".coef")});
    }
    auto P = [terms](const RVec& v) {
        Rational s = 0;
        for (const auto& [e, c] : terms) {
            Rational x = c;
            for (std::size_t i = 0; i < e.size(); ++i)
                for (int k = 0; k < e[i]; ++k) x *= v[i];
            s += x;
        }
        return s;
    };
    return to_json(chern_weil(polarize(l, P), g, pr));
}

Json cmd_c0_eval(const Json& in, const CommandConfig&) {
    check_keys(in, {"g", "g1", "g2", "q"}, "input");
    if (in.contains("g")) {
        GElement x = as_g(matweyl_from(in["g"], "input.g"));
        return {{"pr0", to_string(projection_c0(x))}};
    }
    GElement a = as_g(matweyl_from(field(in, "g1", "input"), "input.g1"));
    GElement b = as_g(matweyl_from(field(in, "g2", "input"), "input.g2"));
    int q = in.contains("q") ? int_field(in, "q", "input") : 0;
    return {{"c0", to_json(extension_cocycle_c0(a, b, q))}};
}

Json cmd_tau_dp(const Json& in, const CommandConfig&) {
    check_keys(in, {"args", "k", "e", "p"}, "input");
    const Json& args = field(in, "args", "input");
    if (!args.is_array()) fail("MalformedInput", "input.args: expected array");
    std::vector<GElement> xs;
    for (std::size_t i = 0; i < args.size(); ++i)
        xs.push_back(as_g(matweyl_from(args[i], "input.args[" + std::to_string(i) + "]")));
    int k = int_field(in, "k", "input"), e = int_field(in, "e", "input"), p = int_field(in, "p", "input");
    return {{"value", to_json(tau_dp_component(xs, k, e, p))}};
}

Json cmd_cyclic(const Json& in, const CommandConfig& cfg, bool big_b) {
    check_keys(in, {"algebra", "chain"}, "input");
    FinAlgebra A = finalg_from(field(in, "algebra", "input"), "input.algebra");
    ChainTensor c = chain_from(field(in, "chain", "input"), "input.chain");
    for (const auto& [w, s] : c.terms())
        for (int i : w)
            if (i < 0 || i >= A.dim()) fail("MalformedInput", "input.chain: index out of range");
    if (cfg.utrunc) {
        ChainTensor t;
        for (const auto& [w, s] : c.terms()) t.add(w, s.truncated(s.h_trunc(), *cfg.utrunc));
        c = t;
    }
    return to_json(big_b ? connes_B(c, A) : hochschild_b(c, A));
}

HUSeries named_series(const std::string& name, int d) {
    if (name == "ahat") return ahat_series(d);
    if (name == "todd") return todd_series(d);
    fail("MalformedInput", "unknown series '" + name + "' (expected ahat or todd)");
}

Json cmd_genus(const Json* in, const CommandConfig& cfg) {
    if (!in) {
        if (cfg.series.empty()) fail("MalformedInput", "genus needs --series or --in");
        int d = cfg.degree ? *cfg.degree : 6;
        if (d < 0) fail("MalformedInput", "--degree must be non-negative");
        return {{"series", cfg.series}, {"degree", d}, {"coefficients", to_json(zcoeffs(named_series(cfg.series, d)))}};
    }
    check_keys(*in, {"series", "bundle", "d"}, "input");
    int d = cfg.degree ? *cfg.degree : int_field(*in, "d", "input");
    const Json& s = field(*in, "series", "input");
    HUSeries G = s.is_string() && (s == "ahat" || s == "todd") ? named_series(s.get<std::string>(), d)
                                                               : series_from(s, "input.series").with_ring(HUSeries::Ring::Z);
    const Json& b = field(*in, "bundle", "input");
    check_keys(b, {"name", "rank"}, "input.bundle");
    const Json& name = field(b, "name", "input.bundle");
    if (!name.is_string()) fail("MalformedInput", "input.bundle.name: expected string");
    return to_json(genus_from_series(G, name.get<std::string>(), int_field(b, "rank", "input.bundle"), d));
}

Json cmd_tau_y(const Json& in, const CommandConfig& cfg) {
    check_keys(in, {"bundles", "abstract2", "d"}, "input");
    const Json& bundles = field(in, "bundles", "input");
    if (!bundles.is_array() || bundles.size() != 3) fail("MalformedInput", "input.bundles: expected [Q, N, E]");
    std::vector<BundleSymbol> bs;
    for (std::size_t i = 0; i < 3; ++i) {
        std::string w = "input.bundles[" + std::to_string(i) + "]";
        check_keys(bundles[i], {"name", "rank"}, w);
        const Json& name = field(bundles[i], "name", w);
        if (!name.is_string()) fail("MalformedInput", w + ".name: expected string");
        bs.push_back({name.get<std::string>(), int_field(bundles[i], "rank", w)});
    }
    std::vector<QuantClassTerm> quant;
    if (in.contains("abstract2")) {
        const Json& list = in["abstract2"];
        if (!list.is_array()) fail("MalformedInput", "input.abstract2: expected array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            std::string w = "input.abstract2[" + std::to_string(i) + "]";
            check_keys(list[i], {"name", "hpow"}, w);
            const Json& name = field(list[i], "name", w);
            if (!name.is_string()) fail("MalformedInput", w + ".name: expected string");
            quant.push_back({name.get<std::string>(), int_field(list[i], "hpow", w)});
        }
    }
    int d = cfg.degree ? *cfg.degree : int_field(in, "d", "input");
    return to_json(tau_Y_assemble(bs[0], bs[1], bs[2], quant, d));
}

Json cmd_verify(const CommandConfig& cfg, std::ostream& err, bool& ok) {
    std::vector<std::string> names;
    if (cfg.suite == "all")
        names = suite_names();
    else
        names.push_back(cfg.suite);
    VerifyParams p;
    p.n = cfg.n;
    p.degree = cfg.degree ? *cfg.degree : -1;
    p.cases = cfg.cases;
    p.seed = cfg.seed;
    Json suites = Json::array();
    ok = true;
    for (const auto& name : names) {
        SuiteResult r = run_suite(name, p);
        ok &= r.pass();
        if (cfg.verbose) err << name << ": " << (r.pass() ? "pass" : "FAIL") << " (" << r.seconds << " s)\n";
        suites.push_back(r.to_json());
    }
    return {{"pass", ok}, {"suites", suites}};
}

int exit_code(const Error& e) {
    const std::string& k = e.kind();
    if (k == "TermCapExceeded" || k == "InvariantViolation" || k == "Internal") return 3;
    return 2;
}

}  // namespace

const std::vector<std::string>& subcommands() {
    static const std::vector<std::string> s{"weyl-mul", "weyl-bracket", "module-act", "darboux", "module-lift",
                                            "lie-d",    "chern-weil",   "c0-eval",    "tau-dp-eval", "cyclic-b",
                                            "cyclic-B", "genus",        "tau-y",      "verify"};
    return s;
}

int run(const CommandConfig& cfg, std::ostream& out, std::ostream& err) {
    try {
        for (auto t : {cfg.trunc, cfg.utrunc})
            if (t && *t <= 0) fail("MalformedInput", "truncation overrides must be positive");
        auto start = std::chrono::steady_clock::now();
        const std::string& s = cfg.subcommand;
        Json result;
        bool ok = true;
        if (s == "verify") {
            result = cmd_verify(cfg, err, ok);
        } else if (s == "genus" && cfg.input.empty()) {
            result = cmd_genus(nullptr, cfg);
        } else {
            Json in = read_input(cfg);
            if (s == "weyl-mul")
                result = cmd_weyl_mul(in, cfg);
            else if (s == "weyl-bracket")
                result = cmd_weyl_bracket(in, cfg);
            else if (s == "module-act")
                result = cmd_module_act(in, cfg);
            else if (s == "darboux")
                result = cmd_darboux(in, cfg);
            else if (s == "module-lift")
                result = cmd_module_lift(in, cfg);
            else if (s == "lie-d")
                result = cmd_lie_d(in, cfg);
            else if (s == "chern-weil")
                result = cmd_chern_weil(in, cfg);
            else if (s == "c0-eval")
                result = cmd_c0_eval(in, cfg);
            else if (s == "tau-dp-eval")
                result = cmd_tau_dp(in, cfg);
            else if (s == "cyclic-b" || s == "cyclic-B")
                result = cmd_cyclic(in, cfg, s == "cyclic-B");
            else if (s == "genus")
                result = cmd_genus(&in, cfg);
            else if (s == "tau-y")
                result = cmd_tau_y(in, cfg);
            else
                fail("MalformedInput", "unknown subcommand '" + s + "'");
        }
        std::string text = dump_json(result);
        if (cfg.output.empty()) {
            out << text;
        } else {
            std::ofstream f(cfg.output);
            if (!f) fail("MalformedInput", "cannot write output file '" + cfg.output + "'");
            f << text;
        }
        if (cfg.verbose)
            err << s << " finished in " << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
                << " s\n";
        return ok ? 0 : 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code(e);
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return 3;
    }
}

Json reparse_output(const std::string& s, const Json& o) {
    if (s == "weyl-mul" || s == "weyl-bracket") return to_json(matweyl_from(o, "output"));
    if (s == "module-act") return to_json(module_element_from(o, "output"));
    if (s == "darboux") {
        check_keys(o, {"n", "T", "degrees", "steps"}, "output");
        Json steps = Json::array();
        for (const auto& x : field(o, "steps", "output")) steps.push_back(to_json(polyvec_from(x, "output.steps")));
        return {{"n", int_field(o, "n", "output")}, {"T", int_field(o, "T", "output")}, {"degrees", field(o, "degrees", "output")},
                {"steps", steps}};
    }
    if (s == "module-lift") return {{"U", to_json(matweyl_from(field(o, "U", "output"), "output.U"))}};
    if (s == "lie-d" || s == "chern-weil") return to_json(cochain_from(o, "output"));
    if (s == "c0-eval") {
        if (o.contains("pr0")) return {{"pr0", to_string(rational_from(o["pr0"], "output.pr0"))}};
        return {{"c0", to_json(series_from(field(o, "c0", "output"), "output.c0"))}};
    }
    if (s == "tau-dp-eval") return {{"value", to_json(series_from(field(o, "value", "output"), "output.value"))}};
    if (s == "cyclic-b" || s == "cyclic-B") return to_json(chain_from(o, "output"));
    if (s == "genus") {
        if (o.contains("coefficients"))
            return {{"series", field(o, "series", "output")}, {"degree", int_field(o, "degree", "output")},
                    {"coefficients", to_json(rvec_from(o["coefficients"], "output.coefficients"))}};
        return to_json(chern_from(o, "output"));
    }
    if (s == "tau-y") return to_json(chern_from(o, "output"));
    if (s == "verify") return o;
    fail("MalformedInput", "unknown subcommand '" + s + "'");
}

}  // namespace wf
