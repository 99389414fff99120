#include <benchmark/benchmark.h>

#include "relhorn/relhorn.hpp"

using namespace relhorn;

namespace {

Structure chain(const SignaturePtr& sig, std::size_t n) {
    std::vector<Edge> es;
    for (ElementId a = 0; a < n; ++a) {
        for (ElementId b = a; b < n; ++b) {
            es.push_back({0, {a, b}});
        }
    }
    return Structure(sig, numbered_carrier(n), es);
}

Structure discrete(const SignaturePtr& sig, std::size_t n) {
    std::vector<Edge> es;
    for (ElementId a = 0; a < n; ++a) {
        es.push_back({0, {a, a}});
    }
    return Structure(sig, numbered_carrier(n), es);
}

void enumerate_serial(benchmark::State& state) {
    auto sig = theories::preord().signature_ptr();
    auto x = discrete(sig, static_cast<std::size_t>(state.range(0)));
    auto y = chain(sig, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_maps(x, y));
    }
}

void enumerate_parallel(benchmark::State& state) {
    auto sig = theories::preord().signature_ptr();
    auto x = discrete(sig, static_cast<std::size_t>(state.range(0)));
    auto y = chain(sig, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_maps_parallel(x, y));
    }
}

template <bool Parallel>
void verify_exp(benchmark::State& state) {
    auto t = theories::preord();
    auto sig = t.signature_ptr();
    auto e = exponential_object(chain(sig, 3), chain(sig, 3));
    auto family = model_family(t, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? verify_exponential_parallel(e, family) : verify_exponential(e, family));
    }
}

template <bool Parallel>
void verify_pp(benchmark::State& state) {
    auto t = theories::preord();
    auto sig = t.signature_ptr();
    auto three = chain(sig, 3);
    Morphism f{three, chain(sig, 2), {0, 0, 1}};
    auto pp = partial_product_refl(chain(sig, 2), f);
    auto family = model_family(t, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(Parallel ? verify_partial_product_parallel(pp, family)
                                          : verify_partial_product(pp, family));
    }
}

} // namespace

BENCHMARK(enumerate_serial)->Arg(6)->Arg(8);
BENCHMARK(enumerate_parallel)->Arg(6)->Arg(8);
BENCHMARK(verify_exp<false>)->Arg(2)->Arg(3);
BENCHMARK(verify_exp<true>)->Arg(2)->Arg(3);
BENCHMARK(verify_pp<false>)->Arg(2)->Arg(3);
BENCHMARK(verify_pp<true>)->Arg(2)->Arg(3);

BENCHMARK_MAIN();
