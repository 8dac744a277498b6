#include "weylforge/cli.hpp"
#include "weylforge/verify.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    wf::CommandConfig cfg;
    CLI::App app{"weylforge: exact Weyl-algebra, form and Lie-cochain computations (JSON in, JSON out)"};
    app.require_subcommand(1);
    int trunc = 0, utrunc = 0, degree = -1;

    for (const auto& name : wf::subcommands()) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--in", cfg.input, "input file or inline JSON (default: stdin)");
        sub->add_option("--out", cfg.output, "output file (default: stdout)");
        sub->add_option("--trunc", trunc, "truncation override");
        sub->add_option("--utrunc", utrunc, "u-truncation override");
        sub->add_option("--degree", degree, "degree override")->check(CLI::NonNegativeNumber);
        sub->add_flag("-v,--verbose", cfg.verbose, "timing on stderr");
        if (name == "verify") {
            sub->add_option("--suite", cfg.suite, "suite name or all")
                ->check(CLI::IsMember([] {
                    auto v = wf::suite_names();
                    v.push_back("all");
                    return v;
                }()));
            sub->add_option("--n", cfg.n, "variable count")->check(CLI::PositiveNumber);
            sub->add_option("--cases", cfg.cases, "random cases per property")->check(CLI::PositiveNumber);
            sub->add_option("--seed", cfg.seed, "random seed");
        }
        if (name == "genus") sub->add_option("--series", cfg.series, "ahat or todd")->check(CLI::IsMember({"ahat", "todd"}));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    for (auto* sub : app.get_subcommands()) {
        cfg.subcommand = sub->get_name();
        if (sub->count("--trunc")) cfg.trunc = trunc;
        if (sub->count("--utrunc")) cfg.utrunc = utrunc;
        if (sub->count("--degree")) cfg.degree = degree;
    }
    return wf::run(cfg, std::cout, std::cerr);
}
