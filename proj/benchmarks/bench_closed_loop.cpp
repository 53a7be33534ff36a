#include <benchmark/benchmark.h>

#include "conlift/simulator.hpp"

using namespace conlift;

namespace {

void BM_ControllerEvaluate(benchmark::State& state) {
    const ClosedLoop loop(dc_motor_setpoint_config());
    const auto frame = loop.controller().fields().lift({0.3, 0.4});
    for (auto _ : state) {
        benchmark::DoNotOptimize(loop.controller().evaluate(frame, {1.0, -2.0}));
    }
}
BENCHMARK(BM_ControllerEvaluate);

void BM_Rk4Step(benchmark::State& state) {
    const ClosedLoop loop(dc_motor_setpoint_config());
    const AugmentedState s{0.3, 0.4, 1.0, -2.0};
    for (auto _ : state) benchmark::DoNotOptimize(step(loop, 0.0, s, 1e-3));
}
BENCHMARK(BM_Rk4Step);

void BM_DcMotorRun(benchmark::State& state) {
    SimConfig cfg = dc_motor_setpoint_config();
    cfg.t_final = static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(run(cfg));
    state.SetItemsProcessed(state.iterations() * cfg.step_count());
}
BENCHMARK(BM_DcMotorRun)->Arg(30)->Unit(benchmark::kMillisecond);

}  // namespace
