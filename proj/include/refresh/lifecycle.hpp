#pragma once

#include "refresh/core_model.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace refresh
{

/// Cumulative-carbon curve model shared by the closed forms and the scan
/// oracle. Each option is a straight line
///
///     C_i(t) = E_i * [upfront] + (O_i + E_i / L_i) * t
///
/// i.e. the first unit is bought at t = 0 and replacements are amortized
/// continuously at E_i / L_i per year. Setting both lines equal with both
/// upfront terms present gives
///
///     t_I = (E_1 - E_0) / ((O_0 + E_0/L_0) - (O_1 + E_1/L_1))
///
/// and dropping option 0's upfront term (the incumbent is already owned)
/// gives
///
///     t_B = E_1 / ((O_0 + E_0/L_0) - (O_1 + E_1/L_1)).
///
/// By convention option 1 is the candidate with the higher embodied carbon.
struct RateTerms
{
    double operationalKgPerYear = 0.0;
    double embodiedKg = 0.0;
    double lifetimeYears = 1.0;

    double rate() const noexcept
    {
        return operationalKgPerYear + embodiedKg / lifetimeYears;
    }
};

struct CrossoverTimes
{
    std::optional<double> indifferenceYears;
    std::optional<double> breakevenYears;
    std::vector<std::string> diagnostics;
};

CrossoverTimes crossoverTimes(const RateTerms& opt0, const RateTerms& opt1);

std::optional<double> indifferenceTime(const RateTerms& opt0,
                                       const RateTerms& opt1);
std::optional<double> breakevenTime(const RateTerms& opt0,
                                    const RateTerms& opt1);

/// Throws ValidationError for negative t.
double cumulativeCarbon(const RateTerms& terms, double tYears,
                        bool includeUpfront);

RateTerms rateTerms(const SystemOption& option,
                    const DeploymentScenario& scenario);

/// O_i + E_i / L_i under the option's effective duty cycle.
double totalRate(const SystemOption& option,
                 const DeploymentScenario& scenario);

std::optional<double> indifferenceTime(const SystemOption& opt0,
                                       const SystemOption& opt1,
                                       const DeploymentScenario& scenario);
std::optional<double> breakevenTime(const SystemOption& opt0,
                                    const SystemOption& opt1,
                                    const DeploymentScenario& scenario);

double cumulativeCarbon(const SystemOption& option,
                        const DeploymentScenario& scenario, double tYears,
                        bool includeUpfront);

enum class ReplacementMode
{
    Continuous,
    /// Replacement purchases land as steps at t = L, 2L, ...
    Discrete,
};

struct ScanOptions
{
    double tMaxYears = 0.0;
    double dtYears = 1e-4;
    /// false treats option 0's first unit as sunk (break-even scan).
    bool option0Upfront = true;
    ReplacementMode replacement = ReplacementMode::Continuous;
};

inline constexpr double kDefaultScanDt = 1e-4;

/// Default scan horizon: four times the longer of the two lifetimes.
double defaultScanHorizon(const RateTerms& opt0, const RateTerms& opt1);

/// Brute-force crossover search. Samples C_0 - C_1 on the grid
/// {0, dt, 2 dt, ..., t_max} and returns the linear-interpolated root inside
/// the first bracketing interval, 0 if the curves start equal, nullopt if
/// their order never changes. Throws ValidationError unless
/// 0 < dt <= t_max.
///
/// Blocks of grid points are evaluated with OpenMP; `crossoverScanSerial`
/// is the straight loop it is tested against.
std::optional<double> crossoverScan(const RateTerms& opt0,
                                    const RateTerms& opt1,
                                    const ScanOptions& options);
std::optional<double> crossoverScanSerial(const RateTerms& opt0,
                                          const RateTerms& opt1,
                                          const ScanOptions& options);

/// Option-level scan with t_max and dt given explicitly.
std::optional<double> crossoverScan(const SystemOption& opt0,
                                    const SystemOption& opt1,
                                    const DeploymentScenario& scenario,
                                    double tMaxYears, double dtYears);

/// Duty cycle for `target` that delivers the same annual work as `base`
/// running `duty`. r_sleep is kept; the active fraction scales by the
/// throughput ratio. Throws InfeasibleDutyCycle when the target would need
/// more active time than it is awake.
DutyCycle equalWorkAdjust(const SystemOption& base, const SystemOption& target,
                          const DutyCycle& duty);

/// Option 0 keeps the scenario duty. In equal-work mode option 1 receives
/// an adjusted duty override; in equal-time mode both are returned as-is.
std::pair<SystemOption, SystemOption>
    prepareOptions(const SystemOption& opt0, const SystemOption& opt1,
                   const DeploymentScenario& scenario);

struct LifecycleResult
{
    std::optional<double> tIndifferenceYears;
    std::optional<double> tBreakevenYears;
    double rate0KgPerYear = 0.0;
    double rate1KgPerYear = 0.0;
    double o0KgPerYear = 0.0;
    double o1KgPerYear = 0.0;
    double e0Kg = 0.0;
    double e1Kg = 0.0;
    std::vector<std::string> diagnostics;
};

/// Full comparison of two options whose duty overrides are already set
/// (see `prepareOptions`).
LifecycleResult evaluate(const SystemOption& opt0, const SystemOption& opt1,
                         const DeploymentScenario& scenario);

struct CarbonCurve
{
    std::string optionLabel;
    std::vector<std::pair<double, double>> samples;
    bool includesUpfront = true;
};

/// `samples` evenly spaced points on [0, tEndYears]; samples >= 2.
CarbonCurve carbonCurve(const SystemOption& option,
                        const DeploymentScenario& scenario, double tEndYears,
                        int samples, bool includeUpfront = true);

} // namespace refresh
