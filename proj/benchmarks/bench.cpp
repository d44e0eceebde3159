#include <vector>

#include <benchmark/benchmark.h>

#include <gifnet/analysis.hpp>
#include <gifnet/gauss.hpp>
#include <gifnet/kernel.hpp>
#include <gifnet/trace.hpp>

#include "instances.hpp"

using namespace gifnet;

namespace {

void BM_GaussianTail(benchmark::State& st) {
    double x = -6, acc = 0;
    for (auto _: st) {
        acc += gaussian_tail(x);
        x = x > 6? -6: x + 0.01;
    }
    benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_GaussianTail);

void BM_LogGaussianTail(benchmark::State& st) {
    double x = 20, acc = 0;
    for (auto _: st) {
        acc += log_gaussian_tail(x);
        x = x > 60? 20: x + 0.01;
    }
    benchmark::DoNotOptimize(acc);
}
BENCHMARK(BM_LogGaussianTail);

// one integrate + apply of the incremental engine, alternating patterns
void BM_TraceStep(benchmark::State& st) {
    auto vp = validate(fixtures::pair());
    network_trace tr(vp);
    tr.reset_silent(0);
    std::vector<std::uint8_t> a = {1, 0}, b = {0, 1};
    bool flip = false;
    for (auto _: st) {
        tr.advance(flip? a: b);
        flip = !flip;
        benchmark::DoNotOptimize(tr.v_det(0));
    }
}
BENCHMARK(BM_TraceStep);

void BM_Simulate(benchmark::State& st) {
    auto vp = validate(fixtures::pair());
    simulation_options opt;
    opt.steps = st.range(0);
    opt.seed = 9;
    opt.workers = 1;
    for (auto _: st) benchmark::DoNotOptimize(simulate(vp, opt));
    st.SetItemsProcessed(st.iterations()*st.range(0));
}
BENCHMARK(BM_Simulate)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

// full agreement-block enumeration of every quantity at depth m
void BM_VariationEnumeration(benchmark::State& st) {
    auto vp = validate(fixtures::pair());
    enumeration_options opt;
    opt.workers = 1;
    for (auto _: st) benchmark::DoNotOptimize(measure_variation(vp, int(st.range(0)), 2, opt));
}
BENCHMARK(BM_VariationEnumeration)->DenseRange(0, 3)->Unit(benchmark::kMillisecond);

void BM_MarkovError(benchmark::State& st) {
    auto vp = validate(fixtures::pair());
    for (auto _: st) benchmark::DoNotOptimize(markov_error(vp, int(st.range(0)), 16, 4, 1));
}
BENCHMARK(BM_MarkovError)->Arg(2)->Arg(6)->Unit(benchmark::kMillisecond);

}
BENCHMARK_MAIN();
