#include "refresh/composer.hpp"

#include "validate.hpp"

#include <algorithm>

namespace refresh
{

InterposerSpec::InterposerSpec(Params params) : p_(std::move(params))
{
    detail::requireNonNegative(p_.embodiedKgCo2e, "embodied_kgco2e");
    detail::requireFinite(p_.sdllEfficiency, "sdll_efficiency");
    if (p_.sdllEfficiency <= 0.0 || p_.sdllEfficiency > 1.0)
    {
        throw ValidationError("sdll_efficiency", "must be in (0, 1]");
    }
    detail::requireNonNegative(p_.powerOverheadW, "power_overhead_watts");
    if (p_.sdllCapacity && *p_.sdllCapacity < 1)
    {
        throw ValidationError("sdll_capacity", "must be a positive integer");
    }
}

InterposerSpec InterposerSpec::ideal()
{
    return InterposerSpec(Params{});
}

Composition::Composition(Params params) : p_(std::move(params))
{
    if (p_.dies.empty())
    {
        throw EmptyComposition();
    }
    for (std::size_t i = 0; i < p_.dies.size(); ++i)
    {
        if (p_.dies[i].count < 1)
        {
            throw ValidationError("dies[" + std::to_string(i) + "].count",
                                  "must be >= 1");
        }
    }
    detail::requireFraction(p_.residualEmbodiedFraction,
                            "residual_embodied_fraction");
    detail::requirePositive(p_.lifetimeYears, "lifetime_years");
    if (p_.sdllRequired && *p_.sdllRequired < 1)
    {
        throw ValidationError("sdll_required", "must be a positive integer");
    }
}

Composition Composition::withDieCount(int count) const
{
    Params next = p_;
    for (auto& entry : next.dies)
    {
        entry.count = count;
    }
    return Composition(std::move(next));
}

void validateComposition(const Composition& c)
{
    const auto& required = c.params().sdllRequired;
    const auto& capacity = c.interposer().sdllCapacity();
    if (required && capacity && *required > *capacity)
    {
        throw SdllBudgetExceeded(*required, *capacity);
    }
}

DeviceProfile compose(const Composition& c)
{
    validateComposition(c);

    const auto& dies = c.dies();
    const double efficiency = c.interposer().sdllEfficiency();

    double latencyNs = 0.0;
    if (dies.size() == 1)
    {
        // Homogeneous case in closed form, so a single die at efficiency 1
        // keeps its latency bit-for-bit.
        const auto& d = dies.front();
        latencyNs = d.die.unitWorkLatencyNs() /
                    (efficiency * d.count * d.die.parallelUnits());
    }
    else
    {
        double throughput = 0.0;
        for (const auto& d : dies)
        {
            throughput += d.count * d.die.throughputPerNs();
        }
        latencyNs = 1.0 / (efficiency * throughput);
    }

    double dynamicW = 0.0;
    double staticW = c.interposer().powerOverheadW();
    double sleepW = 0.0;
    double dieEmbodied = 0.0;
    double techNode = 0.0;
    for (const auto& d : dies)
    {
        const auto& p = d.die.power();
        dynamicW += d.count * p.dynamicW();
        staticW += d.count * p.staticW();
        sleepW += d.count * p.sleepW();
        dieEmbodied += d.count * d.die.embodiedKgCo2e();
        // Mixed generations report the oldest node.
        techNode = std::max(techNode, d.die.techNodeNm());
    }

    DeviceProfile::Params out;
    out.id = c.params().id;
    out.displayName = c.params().displayName;
    out.techNodeNm = techNode;
    out.unitWorkLatencyNs = latencyNs;
    out.parallelUnits = 1;
    out.power = PowerProfile(dynamicW, staticW, sleepW);
    out.embodiedKgCo2e = c.interposer().embodiedKgCo2e() +
                         c.params().residualEmbodiedFraction * dieEmbodied;
    out.lifetimeYears = c.params().lifetimeYears;
    return DeviceProfile(std::move(out));
}

} // namespace refresh
