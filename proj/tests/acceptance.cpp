// Acceptance run: one pass/fail line per criterion, exact checks only.
// usage: acceptance <path-to-weylforge> <golden-dir>

#include "weylforge/cli.hpp"
#include "weylforge/verify.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace wf;

namespace {

struct Outcome {
    bool pass = true;
    std::string note;
};

Outcome suites(const std::vector<std::pair<std::string, VerifyParams>>& list, double limit_s = 0) {
    Outcome o;
    double total = 0;
    for (const auto& [name, p] : list) {
        SuiteResult r = run_suite(name, p);
        total += r.seconds;
        for (const auto& prop : r.properties)
            if (!prop.pass) {
                o.pass = false;
                o.note += name + "/" + prop.name + " failed: " + prop.counterexample.dump() + "; ";
            }
    }
    std::ostringstream t;
    t.precision(3);
    t << total << " s";
    if (limit_s > 0 && total >= limit_s) {
        o.pass = false;
        o.note += "time limit " + std::to_string(static_cast<int>(limit_s)) + " s exceeded; ";
    }
    o.note += t.str();
    return o;
}

VerifyParams params(int n, int degree, int cases) {
    VerifyParams p;
    p.n = n;
    p.degree = degree;
    p.cases = cases;
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::pair<int, std::string> shell(const std::string& cmd) {
    std::string out;
    FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
    if (!pipe) return {-1, ""};
    char buf[4096];
    std::size_t k;
    while ((k = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, k);
    int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

Outcome cli_checks(const std::string& bin, const fs::path& golden) {
    Outcome o;
    std::vector<fs::path> cases;
    for (const auto& e : fs::directory_iterator(golden))
        if (e.path().extension() == ".args") cases.push_back(e.path());
    std::sort(cases.begin(), cases.end());
    int checked = 0;
    for (const auto& a : cases) {
        std::string stem = a.stem().string();
        std::string args = slurp(a);
        args.erase(args.find_last_not_of(" \n") + 1);
        std::string cmd = bin + " " + args;
        fs::path in = golden / (stem + ".in.json");
        if (fs::exists(in)) cmd += " --in " + in.string();
        auto [code1, out1] = shell(cmd);
        auto [code2, out2] = shell(cmd);
        std::string expected = slurp(golden / (stem + ".expected.json"));
        int want = std::stoi(slurp(golden / (stem + ".exit")));
        auto bad = [&](const std::string& why) {
            o.pass = false;
            o.note += stem + ": " + why + "; ";
        };
        if (out1 != out2 || code1 != code2) bad("outputs differ between runs");
        if (code1 != want) bad("exit " + std::to_string(code1) + ", expected " + std::to_string(want));
        if (out1 != expected) bad("output differs from the golden file");
        if (code1 == 0) {
            try {
                std::string sub = args.substr(0, args.find(' '));
                if (dump_json(reparse_output(sub, parse_json(out1))) != out1) bad("JSON round trip changed the output");
            } catch (const std::exception& e) {
                bad(std::string("round trip failed: ") + e.what());
            }
        }
        ++checked;
    }
    if (checked == 0) {
        o.pass = false;
        o.note += "empty golden corpus; ";
    }
    auto [code, out] = shell(bin + " verify --suite all");
    if (code != 0) {
        o.pass = false;
        o.note += "verify --suite all exited " + std::to_string(code) + "; ";
    }
    o.note += std::to_string(checked) + " golden cases";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <weylforge> <golden-dir>\n";
        return 2;
    }
    std::string bin = argv[1];
    fs::path golden = argv[2];

    struct Criterion {
        std::string title;
        std::function<Outcome()> run;
    };
    std::vector<Criterion> list{
        {"Weyl relations and associativity (200 triples, n <= 3, weight 8, < 30 s)",
         [] { return suites({{"weyl-assoc", params(3, -1, 200)}}, 30); }},
        {"symbol of [a,b]/h is the Poisson bracket (100 pairs)", [] { return suites({{"quant-symbol", params(3, -1, 100)}}); }},
        {"genus identities to degree 10, GRR check d <= 6, q <= 3, A-hat duality",
         [] { return suites({{"grr-identity", params(0, 10, 0)}}); }},
        {"d^2 = 0, Chern-Weil closed and relative, projection independence",
         [] { return suites({{"lie-d2", params(0, -1, 5)}, {"chern-weil-closed", params(0, -1, 0)}}); }},
        {"c0 projection equals -1/2 tr b (20 matrices, q <= 2)", [] { return suites({{"c0-projection", params(0, -1, 20)}}); }},
        {"ideal arguments give vanishing cochains (50 tuples, p = q = 1, e = 2)",
         [] { return suites({{"ideal-vanishing", params(0, -1, 50)}}); }},
        {"Hodge identities for n in {1,2}, coefficient degree <= 4 (< 60 s)",
         [] {
             std::vector<std::pair<std::string, VerifyParams>> l;
             for (int n = 1; n <= 2; ++n)
                 for (const char* s : {"hodge-sl2", "intertwine", "homotopy-phi"}) l.push_back({s, params(n, 4, 0)});
             return suites(l, 60);
         }},
        {"cyclic identities b^2 = B^2 = bB + Bb = 0, (b+uB)(1) = 0 (100 chains)",
         [] { return suites({{"cyclic-identities", params(0, -1, 100)}}); }},
        {"Darboux round trip (20 perturbations, n = 2, q = 1, T = 5, < 120 s)",
         [] { return suites({{"darboux-roundtrip", params(0, -1, 20)}}, 120); }},
        {"module lift annihilated mod h^4, exp/log branch included", [] { return suites({{"module-lift", params(0, -1, 0)}}); }},
        {"perturbation lemma: chain map and homotopy with series length >= 2",
         [] { return suites({{"perturbation", params(0, -1, 0)}}); }},
        {"CLI determinism, golden corpus, JSON round trip, verify --suite all",
         [&] { return cli_checks(bin, golden); }},
    };

    bool all = true;
    for (std::size_t i = 0; i < list.size(); ++i) {
        Outcome o;
        try {
            o = list[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all &= o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << (i + 1) << ". " << list[i].title << " [" << o.note << "]"
                  << std::endl;
    }
    return all ? 0 : 1;
}
