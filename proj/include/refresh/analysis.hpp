#pragma once

#include "refresh/ingest.hpp"
#include "refresh/lifecycle.hpp"
#include "refresh/serialization.hpp"
#include "refresh/sweep.hpp"

#include <optional>
#include <string>
#include <vector>

namespace refresh
{

/// Grid used when none is given: 400 gCO2e/kWh, no renewables.
GridProfile defaultGrid();

/// Lifetime given to compositions written inline on the command line.
inline constexpr double kDefaultCompositionLifetimeYears = 6.0;

struct AnalysisRequest
{
    OptionSource option0;
    OptionSource option1;
    DeploymentScenario scenario;
    bool includeCurves = false;
    int curveSamples = 200;
};

struct AnalysisOutcome
{
    SystemOption option0;
    SystemOption option1;
    DeploymentScenario scenario;
    LifecycleResult result;
    std::vector<CarbonCurve> curves;
};

/// Throws InfeasibleDutyCycle in equal-work mode when option 1 cannot match
/// option 0's work, and SdllBudgetExceeded for infeasible compositions.
AnalysisOutcome runAnalysis(const AnalysisRequest& request);

/// The response document shared by `refresh analyze --format json` and
/// POST /api/v1/analyze.
json analysisToJson(const AnalysisOutcome& outcome);

json sweepToJson(const SweepResult& result);

/// `id` from the catalog, or an inline composition
/// `die x count [+ die x count ...] [@interposer] [:lifetime_years]`,
/// for example `zcu102x4@std:6`.
OptionSource optionFromSpec(const std::string& spec, const Catalog& catalog);

/// A catalog id string, or {"composition": {...}} (see compositionFromJson).
OptionSource optionFromJson(const json& j, const std::string& path,
                            const Catalog& catalog);

/// {"grid": {...}, "duty": {...} | "case1".."case3",
///  "comparison_mode": "equal-time" | "equal-work", "horizon_years": n}
/// Every member is optional.
DeploymentScenario scenarioFromJson(const json& j, const std::string& path);

AnalysisRequest analysisRequestFromJson(const json& body,
                                        const Catalog& catalog);

} // namespace refresh
