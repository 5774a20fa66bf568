#include <benchmark/benchmark.h>

#include <random>

#include "mengerkit/instance_forge.hpp"
#include "mengerkit/relation_lab.hpp"
#include "mengerkit/representation.hpp"
#include "mengerkit/theorem_suite.hpp"

using namespace mengerkit;

namespace {

AbstractAlgebra sample(std::uint64_t seed, std::size_t base, std::size_t gens, std::size_t cap) {
    GeneratorConfig cfg;
    cfg.base_size = base;
    cfg.generator_count = gens;
    cfg.seed = seed;
    cfg.closure_cap = cap;
    cfg.max_retries = 256;
    return abstract_from_concrete(generate_concrete(cfg));
}

void BM_Generate(benchmark::State& state) {
    std::uint64_t seed = 0;
    for (auto _ : state) {
        GeneratorConfig cfg;
        cfg.base_size = 2;
        cfg.generator_count = 2;
        cfg.seed = seed++;
        cfg.closure_cap = 24;
        cfg.max_retries = 256;
        benchmark::DoNotOptimize(generate_concrete(cfg));
    }
}
BENCHMARK(BM_Generate);

void BM_ReachableFrames(benchmark::State& state) {
    const auto a = sample(11, 2, 2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        // A fresh copy has an empty frame cache.
        AbstractAlgebra copy(a.tables());
        benchmark::DoNotOptimize(reachable_frames(copy));
    }
    state.counters["m"] = static_cast<double>(a.size());
}
BENCHMARK(BM_ReachableFrames)->Arg(8)->Arg(24);

void BM_ClosureChi0(benchmark::State& state) {
    const auto a = sample(11, 2, 2, static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(closure_chi(a, std::nullopt, ClosureKind::chi0));
    state.counters["m"] = static_cast<double>(a.size());
}
BENCHMARK(BM_ClosureChi0)->Arg(8)->Arg(24);

void BM_TransitiveClosure(benchmark::State& state) {
    const auto m = static_cast<std::size_t>(state.range(0));
    std::mt19937_64 rng(1);
    BinRelation r(m);
    for (Element a = 0; a < m; ++a)
        for (int k = 0; k < 2; ++k) r.insert(a, static_cast<Element>(rng() % m));
    for (auto _ : state) benchmark::DoNotOptimize(transitive_closure(r));
}
BENCHMARK(BM_TransitiveClosure)->Arg(64)->Arg(256)->Arg(1024);

void BM_Roundtrip(benchmark::State& state) {
    GeneratorConfig cfg;
    cfg.generator_count = 2;
    cfg.seed = 3;
    cfg.closure_cap = 12;
    cfg.max_retries = 256;
    const auto phi = generate_concrete(cfg);
    const auto a = abstract_from_concrete(phi);
    const auto rel = concrete_projection_relations(phi);
    const auto target = Target::triplet(rel.chi, rel.gamma, rel.pi);
    for (auto _ : state) benchmark::DoNotOptimize(roundtrip(a, target));
}
BENCHMARK(BM_Roundtrip);

}  // namespace
BENCHMARK_MAIN();
