// OpenMP kernels against their serial references.
#include "refresh/composer.hpp"
#include "refresh/lifecycle.hpp"
#include "refresh/sweep.hpp"

#include <benchmark/benchmark.h>

using namespace refresh;

namespace
{

// Crossing at t = 30 y, so the scan walks most of a 40 y grid.
const RateTerms kOpt0{10, 0, 2};
const RateTerms kOpt1{4, 30, 10};

ScanOptions scanOptions(double dt)
{
    ScanOptions o;
    o.tMaxYears = 40;
    o.dtYears = dt;
    return o;
}

OptionSource refreshSource()
{
    DeviceProfile::Params z;
    z.id = "zcu102";
    z.displayName = "ZCU102";
    z.techNodeNm = 16;
    z.unitWorkLatencyNs = 4.60;
    z.power = PowerProfile(21.410, 0.920);
    z.embodiedKgCo2e = 25;
    z.lifetimeYears = 2;
    Composition::Params p;
    p.dies = {{DeviceProfile(z), 4}};
    p.interposer = InterposerSpec({5.0, 0.75, 4.0, 4096});
    p.lifetimeYears = 6;
    return OptionSource{"refresh", Composition(p)};
}

OptionSource versalSource()
{
    DeviceProfile::Params v;
    v.id = "vm1802";
    v.displayName = "VM1802";
    v.techNodeNm = 7;
    v.unitWorkLatencyNs = 3.99;
    v.power = PowerProfile(12.738, 9.384);
    v.embodiedKgCo2e = 15;
    v.lifetimeYears = 6;
    return OptionSource{"vm1802", DeviceProfile(v)};
}

std::vector<double> renewableValues(std::size_t n)
{
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = 0.99 * static_cast<double>(i) / static_cast<double>(n);
    return v;
}

void BM_ScanParallel(benchmark::State& state)
{
    const auto o = scanOptions(1.0 / static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(crossoverScan(kOpt0, kOpt1, o));
}

void BM_ScanSerial(benchmark::State& state)
{
    const auto o = scanOptions(1.0 / static_cast<double>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(crossoverScanSerial(kOpt0, kOpt1, o));
}

void BM_SweepParallel(benchmark::State& state)
{
    const auto values = renewableValues(static_cast<std::size_t>(state.range(0)));
    const DeploymentScenario s(GridProfile(400, 0, 0), DutyCycle(0.25, 0.25));
    const auto a = refreshSource(), b = versalSource();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sweep(a, b, s, SweepParameter::RenewableFraction, values));
}

void BM_SweepSerial(benchmark::State& state)
{
    const auto values = renewableValues(static_cast<std::size_t>(state.range(0)));
    const DeploymentScenario s(GridProfile(400, 0, 0), DutyCycle(0.25, 0.25));
    const auto a = refreshSource(), b = versalSource();
    for (auto _ : state)
        benchmark::DoNotOptimize(
            sweepSerial(a, b, s, SweepParameter::RenewableFraction, values));
}

} // namespace

BENCHMARK(BM_ScanParallel)->Arg(1000)->Arg(10000)->Arg(100000);
BENCHMARK(BM_ScanSerial)->Arg(1000)->Arg(10000)->Arg(100000);
BENCHMARK(BM_SweepParallel)->Arg(100)->Arg(10000);
BENCHMARK(BM_SweepSerial)->Arg(100)->Arg(10000);

BENCHMARK_MAIN();
