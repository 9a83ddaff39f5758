#include "refresh/sweep.hpp"

#include "refresh/error.hpp"

#include <cmath>

namespace refresh
{

SystemOption OptionSource::resolve() const
{
    if (const auto* c = std::get_if<Composition>(&source))
    {
        return SystemOption{label, compose(*c), std::nullopt};
    }
    return SystemOption{label, std::get<DeviceProfile>(source), std::nullopt};
}

std::string_view toString(SweepParameter p)
{
    switch (p)
    {
        case SweepParameter::RenewableFraction:
            return "renewable_fraction";
        case SweepParameter::RActive:
            return "r_active";
        case SweepParameter::RSleep:
            return "r_sleep";
        case SweepParameter::DieCount:
            return "die_count";
    }
    return "unknown";
}

std::optional<SweepParameter> parseSweepParameter(std::string_view text)
{
    for (auto p : {SweepParameter::RenewableFraction, SweepParameter::RActive,
                   SweepParameter::RSleep, SweepParameter::DieCount})
    {
        if (toString(p) == text)
        {
            return p;
        }
    }
    return std::nullopt;
}

LifecycleResult analyzePair(const OptionSource& opt0, const OptionSource& opt1,
                            const DeploymentScenario& scenario)
{
    const auto [first, second] =
        prepareOptions(opt0.resolve(), opt1.resolve(), scenario);
    return evaluate(first, second, scenario);
}

namespace
{

OptionSource withDieCount(const OptionSource& src, int count)
{
    if (const auto* c = std::get_if<Composition>(&src.source))
    {
        return OptionSource{src.label, c->withDieCount(count)};
    }
    return src;
}

SweepRow evaluateRow(const OptionSource& opt0, const OptionSource& opt1,
                     const DeploymentScenario& scenario,
                     SweepParameter parameter, double value)
{
    SweepRow row;
    row.parameterValue = value;
    try
    {
        DeploymentScenario s = scenario;
        OptionSource a = opt0;
        OptionSource b = opt1;
        const auto& grid = scenario.grid();
        const auto& duty = scenario.duty();
        switch (parameter)
        {
            case SweepParameter::RenewableFraction:
                s = scenario.withGrid(
                    GridProfile(grid.baseIntensityGPerKwh(), value,
                                grid.renewableIntensityGPerKwh()));
                break;
            case SweepParameter::RActive:
                s = scenario.withDuty(DutyCycle(duty.rSleep(), value));
                break;
            case SweepParameter::RSleep:
                s = scenario.withDuty(DutyCycle(value, duty.rActive()));
                break;
            case SweepParameter::DieCount:
            {
                if (!(value >= 1.0) || std::floor(value) != value ||
                    value > 1e6)
                {
                    throw ValidationError("die_count",
                                          "must be a positive integer");
                }
                if (!a.isComposition() && !b.isComposition())
                {
                    throw ValidationError(
                        "die_count", "neither option is a composition");
                }
                const int count = static_cast<int>(value);
                a = withDieCount(a, count);
                b = withDieCount(b, count);
                break;
            }
        }
        const LifecycleResult r = analyzePair(a, b, s);
        row.tIndifferenceYears = r.tIndifferenceYears;
        row.tBreakevenYears = r.tBreakevenYears;
    }
    catch (const Error& e)
    {
        row.error = RowError{e.code(), e.what()};
    }
    return row;
}

void requireAscending(std::span<const double> values)
{
    for (std::size_t i = 0; i < values.size(); ++i)
    {
        if (!std::isfinite(values[i]))
        {
            throw ValidationError("values[" + std::to_string(i) + "]",
                                  "must be finite");
        }
        if (i > 0 && !(values[i] > values[i - 1]))
        {
            throw ValidationError("values", "must be strictly increasing");
        }
    }
}

} // namespace

SweepResult sweepSerial(const OptionSource& opt0, const OptionSource& opt1,
                        const DeploymentScenario& scenario,
                        SweepParameter parameter,
                        std::span<const double> values)
{
    requireAscending(values);
    SweepResult result{std::string(toString(parameter)), {}};
    result.rows.reserve(values.size());
    for (double v : values)
    {
        result.rows.push_back(evaluateRow(opt0, opt1, scenario, parameter, v));
    }
    return result;
}

SweepResult sweep(const OptionSource& opt0, const OptionSource& opt1,
                  const DeploymentScenario& scenario, SweepParameter parameter,
                  std::span<const double> values)
{
    requireAscending(values);
    SweepResult result{std::string(toString(parameter)), {}};
    result.rows.resize(values.size());
    const auto n = static_cast<long>(values.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i)
    {
        result.rows[static_cast<std::size_t>(i)] =
            evaluateRow(opt0, opt1, scenario, parameter,
                        values[static_cast<std::size_t>(i)]);
    }
    return result;
}

} // namespace refresh
