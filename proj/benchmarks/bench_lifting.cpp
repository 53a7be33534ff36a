#include <benchmark/benchmark.h>

#include "conlift/lifting.hpp"

using namespace conlift;

namespace {

FamilyPtr family(int i) { return i == 0 ? make_tanh_family() : make_algebraic_family(); }

void BM_Lift(benchmark::State& state) {
    const SafeSet s(2.0, 1.0);
    const FamilyPair fp(family(static_cast<int>(state.range(0))));
    double x1 = -1.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(lift({x1, 0.5}, s, fp));
        x1 = x1 > 1.9 ? -1.9 : x1 + 1e-3;
    }
}
BENCHMARK(BM_Lift)->Arg(0)->Arg(1);

void BM_RoundTrip(benchmark::State& state) {
    const SafeSet s(2.0, 1.0);
    const FamilyPair fp(family(static_cast<int>(state.range(0))));
    double x1 = -1.9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(unlift(lift({x1, 0.5}, s, fp).z(), s, fp));
        x1 = x1 > 1.9 ? -1.9 : x1 + 1e-3;
    }
}
BENCHMARK(BM_RoundTrip)->Arg(0)->Arg(1);

}  // namespace
