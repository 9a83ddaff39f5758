#include "refresh/core_model.hpp"

#include "validate.hpp"

namespace refresh
{

using detail::requireFraction;
using detail::requireNonNegative;
using detail::requirePositive;

PowerProfile::PowerProfile(double dynamicW, double staticW, double sleepW) :
    dynamicW_(dynamicW), staticW_(staticW), sleepW_(sleepW)
{
    requireNonNegative(dynamicW_, "p_dynamic_w");
    requireNonNegative(staticW_, "p_static_w");
    requireNonNegative(sleepW_, "p_sleep_w");
    if (sleepW_ > dynamicW_ + staticW_)
    {
        throw ValidationError("p_sleep_w",
                              "must not exceed p_dynamic_w + p_static_w");
    }
}

DeviceProfile::DeviceProfile(Params params) : p_(std::move(params))
{
    if (p_.id.empty())
    {
        throw ValidationError("id", "must not be empty");
    }
    requirePositive(p_.techNodeNm, "tech_node_nm");
    requirePositive(p_.unitWorkLatencyNs, "unit_work_latency_ns");
    if (p_.parallelUnits < 1)
    {
        throw ValidationError("parallel_units", "must be >= 1");
    }
    requireNonNegative(p_.embodiedKgCo2e, "embodied_kgco2e");
    requirePositive(p_.lifetimeYears, "lifetime_years");
}

DutyCycle::DutyCycle(double rSleep, double rActive) :
    rSleep_(rSleep), rActive_(rActive)
{
    requireFraction(rSleep_, "r_sleep");
    requireFraction(rActive_, "r_active");
}

std::optional<DutyCycle> dutyPreset(std::string_view name)
{
    if (name == "case1")
    {
        return DutyCycle(0.25, 0.25);
    }
    if (name == "case2")
    {
        return DutyCycle(0.50, 0.50);
    }
    if (name == "case3")
    {
        return DutyCycle(0.25, 0.75);
    }
    return std::nullopt;
}

GridProfile::GridProfile(double baseIntensityGPerKwh, double renewableFraction,
                         double renewableIntensityGPerKwh) :
    base_(baseIntensityGPerKwh),
    renewableFraction_(renewableFraction),
    renewable_(renewableIntensityGPerKwh)
{
    requireNonNegative(base_, "base_intensity_g_per_kwh");
    requireFraction(renewableFraction_, "renewable_fraction");
    requireNonNegative(renewable_, "renewable_intensity_g_per_kwh");
}

std::string_view toString(ComparisonMode mode)
{
    return mode == ComparisonMode::EqualWork ? "equal-work" : "equal-time";
}

std::optional<ComparisonMode> parseComparisonMode(std::string_view text)
{
    if (text == "equal-time")
    {
        return ComparisonMode::EqualTime;
    }
    if (text == "equal-work")
    {
        return ComparisonMode::EqualWork;
    }
    return std::nullopt;
}

DeploymentScenario::DeploymentScenario(GridProfile grid, DutyCycle duty,
                                       ComparisonMode mode,
                                       double horizonYears) :
    grid_(grid), duty_(duty), mode_(mode), horizonYears_(horizonYears)
{
    requirePositive(horizonYears_, "horizon_years");
}

DeploymentScenario DeploymentScenario::withGrid(GridProfile grid) const
{
    return DeploymentScenario(grid, duty_, mode_, horizonYears_);
}

DeploymentScenario DeploymentScenario::withDuty(DutyCycle duty) const
{
    return DeploymentScenario(grid_, duty, mode_, horizonYears_);
}

StateFractions stateFractions(const DutyCycle& duty) noexcept
{
    // idle is taken as the remainder of awake time so the three fractions
    // sum to one without accumulated rounding.
    const double awake = 1.0 - duty.rSleep();
    const double active = duty.rActive() * awake;
    return {active, awake - active, duty.rSleep()};
}

double effectiveIntensity(const GridProfile& grid) noexcept
{
    const double r = grid.renewableFraction();
    return (1.0 - r) * grid.baseIntensityGPerKwh() +
           r * grid.renewableIntensityGPerKwh();
}

double averagePowerW(const DeviceProfile& device,
                     const DutyCycle& duty) noexcept
{
    const auto f = stateFractions(duty);
    const auto& p = device.power();
    return f.active * p.activeW() + f.idle * p.staticW() +
           f.sleep * p.sleepW();
}

double annualOperationalCarbon(const DeviceProfile& device,
                               const DutyCycle& duty,
                               const GridProfile& grid) noexcept
{
    const double kw = averagePowerW(device, duty) / 1000.0;
    return kw * kHoursPerYear * effectiveIntensity(grid) / 1000.0;
}

double annualOperationalCarbon(const DeviceProfile& device,
                               const DeploymentScenario& scenario) noexcept
{
    return annualOperationalCarbon(device, scenario.duty(), scenario.grid());
}

double annualWork(const DeviceProfile& device, const DutyCycle& duty) noexcept
{
    const double latencyS = device.unitWorkLatencyNs() * 1e-9;
    return stateFractions(duty).active * kSecondsPerYear *
           static_cast<double>(device.parallelUnits()) / latencyS;
}

} // namespace refresh
