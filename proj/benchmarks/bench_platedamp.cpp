#include <benchmark/benchmark.h>

#include "platedamp/platedamp.hpp"

using namespace platedamp;

namespace {

PlateSpec plate() { return {0.54, 0.58, 0.0019, 70e9, 0.33, 2700.0, 0.01}; }

std::vector<PatchSpec> patches() {
    std::vector<PatchSpec> out;
    for (auto [x, y] : {std::pair{0.207, 0.094}, {0.169, 0.300}, {0.412, 0.344}}) {
        PatchSpec p = PatchSpec::from_isotropic(69e9, 0.31, 0.0, 9.57e-9, 7800.0, 0.000267, {x, x + 0.0724, y, y + 0.0724});
        p.e31_bar = PatchSpec::e31_from_d31(-190e-12, p.c11_bar, p.c12_bar);
        out.push_back(p);
    }
    return out;
}

const ForceSpec kForce{1.0, {0.30, 0.34}};
const Point kTarget{0.37, 0.51};

void BM_Assemble(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const auto ps = patches();
    for (auto _ : state) benchmark::DoNotOptimize(assemble_system(plate(), ps, BasisSpec{n, n, 10}));
}
BENCHMARK(BM_Assemble)->Arg(8)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_Eigensolve(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const RitzSystem sys = assemble_system(plate(), patches(), BasisSpec{n, n, 10});
    for (auto _ : state) benchmark::DoNotOptimize(solve_modes(sys.mass, sys.stiffness, 0.01));
}
BENCHMARK(BM_Eigensolve)->Arg(8)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

void BM_FrfSeparated(benchmark::State& state) {
    set_thread_count(static_cast<int>(state.range(0)));
    const ModalModel m = build_modal_model(plate(), patches(), BasisSpec{10, 10, 10});
    const auto grid = linear_grid(1.0, 250.0, 2491);
    const auto topo = ShuntTopology::separated_uniform(3, ImpedanceLaw::resistor(1e4));
    for (auto _ : state) benchmark::DoNotOptimize(frf(m, topo, kForce, kTarget, grid));
    state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_FrfSeparated)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Sweep(benchmark::State& state) {
    set_thread_count(static_cast<int>(state.range(0)));
    const ModalModel m = build_modal_model(plate(), patches(), BasisSpec{10, 10, 10});
    const Scenario s{&m, ShuntTopology::Mode::separated, kForce, kTarget, linear_grid(1.0, 250.0, 2491)};
    SweepSpec spec;
    spec.objective_bands = {{1.0, 79.8}};
    for (auto _ : state) benchmark::DoNotOptimize(sweep_resistance(s, spec));
}
BENCHMARK(BM_Sweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
