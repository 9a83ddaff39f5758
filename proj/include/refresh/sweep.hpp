#pragma once

#include "refresh/composer.hpp"
#include "refresh/core_model.hpp"
#include "refresh/lifecycle.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace refresh
{

/// Where an option's device comes from. Compositions are kept unresolved so
/// a die-count sweep can rebuild them.
struct OptionSource
{
    std::string label;
    std::variant<DeviceProfile, Composition> source;

    SystemOption resolve() const;
    bool isComposition() const noexcept
    {
        return std::holds_alternative<Composition>(source);
    }
};

enum class SweepParameter
{
    RenewableFraction,
    RActive,
    RSleep,
    DieCount,
};

std::string_view toString(SweepParameter p);
std::optional<SweepParameter> parseSweepParameter(std::string_view text);

struct RowError
{
    std::string code;
    std::string message;
};

struct SweepRow
{
    double parameterValue = 0.0;
    std::optional<double> tIndifferenceYears;
    std::optional<double> tBreakevenYears;
    std::optional<RowError> error;
};

struct SweepResult
{
    std::string parameterName;
    std::vector<SweepRow> rows;
};

/// Resolves both options, applies the equal-work adjustment when the
/// scenario asks for it and evaluates the pair. Any library error
/// propagates.
LifecycleResult analyzePair(const OptionSource& opt0, const OptionSource& opt1,
                            const DeploymentScenario& scenario);

/// One row per value, each equal to a direct analysis with the parameter
/// substituted. Domain failures are reported on the row; only a value list
/// that is not strictly increasing throws (ValidationError).
///
/// Rows are evaluated concurrently with OpenMP and written back in input
/// order; `sweepSerial` is the reference loop.
SweepResult sweep(const OptionSource& opt0, const OptionSource& opt1,
                  const DeploymentScenario& scenario, SweepParameter parameter,
                  std::span<const double> values);
SweepResult sweepSerial(const OptionSource& opt0, const OptionSource& opt1,
                        const DeploymentScenario& scenario,
                        SweepParameter parameter,
                        std::span<const double> values);

} // namespace refresh
