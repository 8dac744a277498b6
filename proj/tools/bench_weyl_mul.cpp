#include "weylforge/weyl.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

wf::WeylElement random_element(int n, int wtrunc, int nterms, std::mt19937& g) {
    std::uniform_int_distribution<int> var(0, 2 * n - 1), deg(1, 4), num(-9, 9);
    wf::WeylElement a(n, wtrunc);
    for (int t = 0; t < nterms; ++t) {
        wf::WMono m;
        for (int k = deg(g); k > 0; --k) {
            int v = var(g);
            if (v < n)
                m.a(v) += 1;
            else
                m.b(v - n) += 1;
        }
        a.add(m, wf::Rational(num(g), 7));
    }
    return a;
}

template <wf::WeylElement (*Mul)(const wf::WeylElement&, const wf::WeylElement&)>
void bench(benchmark::State& state) {
    std::mt19937 g(7);
    int n = static_cast<int>(state.range(0)), terms = static_cast<int>(state.range(1));
    auto a = random_element(n, 12, terms, g), b = random_element(n, 12, terms, g);
    for (auto _ : state) benchmark::DoNotOptimize(Mul(a, b));
    state.SetItemsProcessed(state.iterations() * terms * terms);
}

}  // namespace

BENCHMARK(bench<wf::weyl_mul_serial>)->Name("weyl_mul_serial")->Args({2, 40})->Args({3, 120})->Args({4, 300});
BENCHMARK(bench<wf::weyl_mul_parallel>)->Name("weyl_mul_parallel")->Args({2, 40})->Args({3, 120})->Args({4, 300});

BENCHMARK_MAIN();
