#include "refresh/lifecycle.hpp"

#include "refresh/error.hpp"
#include "validate.hpp"

#include <algorithm>

namespace refresh
{

CrossoverTimes crossoverTimes(const RateTerms& opt0, const RateTerms& opt1)
{
    CrossoverTimes out;
    const double numerator = opt1.embodiedKg - opt0.embodiedKg;
    const double denominator = opt0.rate() - opt1.rate();

    if (denominator > 0.0)
    {
        out.breakevenYears = opt1.embodiedKg / denominator;
    }

    if (numerator == 0.0)
    {
        out.indifferenceYears = 0.0;
    }
    else if (denominator > 0.0)
    {
        if (numerator > 0.0)
        {
            out.indifferenceYears = numerator / denominator;
        }
        else
        {
            out.indifferenceYears = 0.0;
            out.diagnostics.emplace_back(
                "option 1 has lower embodied carbon and a lower total rate; "
                "it dominates from t = 0");
        }
    }
    else
    {
        out.diagnostics.emplace_back(
            "no indifference point: option 1's total rate is not below "
            "option 0's, so its embodied carbon is never recouped");
        if (numerator < 0.0)
        {
            out.diagnostics.emplace_back(
                "option 1 has lower embodied carbon than option 0; the "
                "comparison expects the higher-embodied candidate as option 1");
        }
    }
    return out;
}

std::optional<double> indifferenceTime(const RateTerms& opt0,
                                       const RateTerms& opt1)
{
    return crossoverTimes(opt0, opt1).indifferenceYears;
}

std::optional<double> breakevenTime(const RateTerms& opt0,
                                    const RateTerms& opt1)
{
    return crossoverTimes(opt0, opt1).breakevenYears;
}

double cumulativeCarbon(const RateTerms& terms, double tYears,
                        bool includeUpfront)
{
    detail::requireNonNegative(tYears, "t_years");
    return (includeUpfront ? terms.embodiedKg : 0.0) + terms.rate() * tYears;
}

RateTerms rateTerms(const SystemOption& option,
                    const DeploymentScenario& scenario)
{
    return RateTerms{
        annualOperationalCarbon(option.device, option.effectiveDuty(scenario),
                                scenario.grid()),
        option.device.embodiedKgCo2e(), option.device.lifetimeYears()};
}

double totalRate(const SystemOption& option,
                 const DeploymentScenario& scenario)
{
    return rateTerms(option, scenario).rate();
}

std::optional<double> indifferenceTime(const SystemOption& opt0,
                                       const SystemOption& opt1,
                                       const DeploymentScenario& scenario)
{
    return indifferenceTime(rateTerms(opt0, scenario),
                            rateTerms(opt1, scenario));
}

std::optional<double> breakevenTime(const SystemOption& opt0,
                                    const SystemOption& opt1,
                                    const DeploymentScenario& scenario)
{
    return breakevenTime(rateTerms(opt0, scenario), rateTerms(opt1, scenario));
}

double cumulativeCarbon(const SystemOption& option,
                        const DeploymentScenario& scenario, double tYears,
                        bool includeUpfront)
{
    return cumulativeCarbon(rateTerms(option, scenario), tYears,
                            includeUpfront);
}

double defaultScanHorizon(const RateTerms& opt0, const RateTerms& opt1)
{
    return 4.0 * std::max(opt0.lifetimeYears, opt1.lifetimeYears);
}

std::optional<double> crossoverScan(const SystemOption& opt0,
                                    const SystemOption& opt1,
                                    const DeploymentScenario& scenario,
                                    double tMaxYears, double dtYears)
{
    ScanOptions options;
    options.tMaxYears = tMaxYears;
    options.dtYears = dtYears;
    return crossoverScan(rateTerms(opt0, scenario), rateTerms(opt1, scenario),
                         options);
}

DutyCycle equalWorkAdjust(const SystemOption& base, const SystemOption& target,
                          const DutyCycle& duty)
{
    const double awake = 1.0 - duty.rSleep();
    const double ratio =
        base.device.throughputPerNs() / target.device.throughputPerNs();
    if (ratio == 1.0 || awake == 0.0)
    {
        return duty;
    }

    const double requiredActive = stateFractions(duty).active * ratio;
    // Allow a few ulps of slack so an exactly-saturating request is feasible.
    if (requiredActive > awake * (1.0 + 1e-12))
    {
        throw InfeasibleDutyCycle(requiredActive, awake);
    }
    return DutyCycle(duty.rSleep(), std::min(1.0, requiredActive / awake));
}

std::pair<SystemOption, SystemOption>
    prepareOptions(const SystemOption& opt0, const SystemOption& opt1,
                   const DeploymentScenario& scenario)
{
    SystemOption first = opt0;
    SystemOption second = opt1;
    if (scenario.mode() == ComparisonMode::EqualWork)
    {
        second.dutyOverride = equalWorkAdjust(
            first, second, first.effectiveDuty(scenario));
    }
    return {std::move(first), std::move(second)};
}

LifecycleResult evaluate(const SystemOption& opt0, const SystemOption& opt1,
                         const DeploymentScenario& scenario)
{
    const RateTerms t0 = rateTerms(opt0, scenario);
    const RateTerms t1 = rateTerms(opt1, scenario);
    CrossoverTimes times = crossoverTimes(t0, t1);

    LifecycleResult r;
    r.tIndifferenceYears = times.indifferenceYears;
    r.tBreakevenYears = times.breakevenYears;
    r.rate0KgPerYear = t0.rate();
    r.rate1KgPerYear = t1.rate();
    r.o0KgPerYear = t0.operationalKgPerYear;
    r.o1KgPerYear = t1.operationalKgPerYear;
    r.e0Kg = t0.embodiedKg;
    r.e1Kg = t1.embodiedKg;
    r.diagnostics = std::move(times.diagnostics);
    return r;
}

CarbonCurve carbonCurve(const SystemOption& option,
                        const DeploymentScenario& scenario, double tEndYears,
                        int samples, bool includeUpfront)
{
    detail::requirePositive(tEndYears, "t_end_years");
    if (samples < 2)
    {
        throw ValidationError("curve_samples", "must be >= 2");
    }
    const RateTerms terms = rateTerms(option, scenario);
    CarbonCurve curve;
    curve.optionLabel = option.label;
    curve.includesUpfront = includeUpfront;
    curve.samples.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i)
    {
        const double t =
            i + 1 == samples ? tEndYears : tEndYears * i / (samples - 1);
        curve.samples.emplace_back(t,
                                   cumulativeCarbon(terms, t, includeUpfront));
    }
    return curve;
}

} // namespace refresh
