#include "refresh/analysis.hpp"

#include "refresh/error.hpp"

#include <regex>

namespace refresh
{

GridProfile defaultGrid()
{
    return GridProfile(400.0, 0.0, 0.0);
}

AnalysisOutcome runAnalysis(const AnalysisRequest& request)
{
    auto [opt0, opt1] = prepareOptions(request.option0.resolve(),
                                       request.option1.resolve(),
                                       request.scenario);
    LifecycleResult result = evaluate(opt0, opt1, request.scenario);

    std::vector<CarbonCurve> curves;
    if (request.includeCurves)
    {
        const double end = request.scenario.horizonYears();
        curves.push_back(carbonCurve(opt0, request.scenario, end,
                                     request.curveSamples, true));
        curves.push_back(carbonCurve(opt1, request.scenario, end,
                                     request.curveSamples, true));
    }
    return AnalysisOutcome{std::move(opt0), std::move(opt1), request.scenario,
                           std::move(result), std::move(curves)};
}

namespace
{

json optionToJson(const SystemOption& option, const DeploymentScenario& s)
{
    return {{"label", option.label},
            {"device", toJson(option.device)},
            {"duty", toJson(option.effectiveDuty(s))},
            {"duty_adjusted", option.dutyOverride.has_value()},
            {"average_power_w",
             averagePowerW(option.device, option.effectiveDuty(s))},
            {"annual_work_units",
             annualWork(option.device, option.effectiveDuty(s))}};
}

} // namespace

json analysisToJson(const AnalysisOutcome& outcome)
{
    const auto& r = outcome.result;
    json j = {{"t_indifference_years", optionalNumber(r.tIndifferenceYears)},
              {"t_breakeven_years", optionalNumber(r.tBreakevenYears)},
              {"rate0_kg_per_year", r.rate0KgPerYear},
              {"rate1_kg_per_year", r.rate1KgPerYear},
              {"o0_kg_per_year", r.o0KgPerYear},
              {"o1_kg_per_year", r.o1KgPerYear},
              {"e0_kg", r.e0Kg},
              {"e1_kg", r.e1Kg},
              {"diagnostics", r.diagnostics},
              {"resolved",
               {{"option0", optionToJson(outcome.option0, outcome.scenario)},
                {"option1", optionToJson(outcome.option1, outcome.scenario)},
                {"scenario", toJson(outcome.scenario)}}}};
    if (!outcome.curves.empty())
    {
        json curves = json::array();
        for (const auto& c : outcome.curves)
        {
            curves.push_back(toJson(c));
        }
        j["curves"] = std::move(curves);
    }
    return j;
}

json sweepToJson(const SweepResult& result)
{
    json rows = json::array();
    for (const auto& row : result.rows)
    {
        json entry = {{"parameter_value", row.parameterValue},
                      {"t_indifference_years",
                       optionalNumber(row.tIndifferenceYears)},
                      {"t_breakeven_years", optionalNumber(row.tBreakevenYears)},
                      {"error", nullptr}};
        if (row.error)
        {
            entry["error"] = {{"code", row.error->code},
                              {"message", row.error->message}};
        }
        rows.push_back(std::move(entry));
    }
    return {{"parameter_name", result.parameterName}, {"rows", std::move(rows)}};
}

OptionSource optionFromSpec(const std::string& spec, const Catalog& catalog)
{
    if (catalog.contains(spec))
    {
        return catalog.option(spec);
    }

    static const std::regex term(R"(^([A-Za-z0-9_.\-]+?)x([0-9]+)$)");
    static const std::regex whole(
        R"(^([^@:]+)(?:@([A-Za-z0-9_.\-]+))?(?::([0-9]*\.?[0-9]+))?$)");
    std::smatch m;
    if (!std::regex_match(spec, m, whole))
    {
        throw UnknownId(spec);
    }

    Composition::Params p;
    p.id = spec;
    p.displayName = spec;
    p.lifetimeYears = m[3].matched ? std::stod(m[3].str())
                                   : kDefaultCompositionLifetimeYears;
    if (m[2].matched)
    {
        const std::string interposer = m[2].str();
        if (!catalog.interposers.contains(interposer))
        {
            throw DanglingReference(spec, interposer);
        }
        p.interposer = catalog.interposers.at(interposer);
    }

    const std::string dies = m[1].str();
    std::size_t start = 0;
    while (start <= dies.size())
    {
        const std::size_t plus = dies.find('+', start);
        const std::string item = dies.substr(
            start, plus == std::string::npos ? std::string::npos : plus - start);
        std::smatch t;
        if (!std::regex_match(item, t, term))
        {
            throw UnknownId(spec);
        }
        const std::string id = t[1].str();
        if (!catalog.devices.contains(id))
        {
            throw DanglingReference(spec, id);
        }
        p.dies.push_back(
            DieEntry{catalog.devices.at(id), std::stoi(t[2].str())});
        if (plus == std::string::npos)
        {
            break;
        }
        start = plus + 1;
    }
    return OptionSource{spec, Composition(std::move(p))};
}

OptionSource optionFromJson(const json& j, const std::string& path,
                            const Catalog& catalog)
{
    if (j.is_string())
    {
        return catalog.option(j.get<std::string>());
    }
    FieldReader r(j, path);
    Composition c = compositionFromJson(r.at("composition"),
                                        r.child("composition"), &catalog);
    const std::string label = r.optionalString("label").value_or(c.params().id);
    return OptionSource{label, std::move(c)};
}

DeploymentScenario scenarioFromJson(const json& j, const std::string& path)
{
    FieldReader r(j, path);

    GridProfile grid = defaultGrid();
    if (r.has("grid"))
    {
        const json& g = r.at("grid");
        FieldReader gr(g, r.child("grid"));
        grid = withFieldPrefix(gr.path(), [&] {
            const GridProfile d = defaultGrid();
            return GridProfile(
                gr.number("base_intensity_g_per_kwh",
                          d.baseIntensityGPerKwh()),
                gr.number("renewable_fraction", d.renewableFraction()),
                gr.number("renewable_intensity_g_per_kwh",
                          d.renewableIntensityGPerKwh()));
        });
    }

    DutyCycle duty = *dutyPreset("case1");
    if (r.has("duty"))
    {
        const json& d = r.at("duty");
        if (d.is_string())
        {
            auto preset = dutyPreset(d.get<std::string>());
            if (!preset)
            {
                throw ValidationError(r.child("duty"),
                                      "unknown preset (case1|case2|case3)");
            }
            duty = *preset;
        }
        else
        {
            duty = dutyFromJson(d, r.child("duty"));
        }
    }

    ComparisonMode mode = ComparisonMode::EqualTime;
    if (auto m = r.optionalString("comparison_mode"))
    {
        auto parsed = parseComparisonMode(*m);
        if (!parsed)
        {
            throw ValidationError(r.child("comparison_mode"),
                                  "expected equal-time or equal-work");
        }
        mode = *parsed;
    }

    const double horizon = r.number("horizon_years", 10.0);
    return withFieldPrefix(path, [&] {
        return DeploymentScenario(grid, duty, mode, horizon);
    });
}

AnalysisRequest analysisRequestFromJson(const json& body,
                                        const Catalog& catalog)
{
    FieldReader r(body, "");
    OptionSource option0 = optionFromJson(r.at("option0"), "option0", catalog);
    OptionSource option1 = optionFromJson(r.at("option1"), "option1", catalog);
    const json emptyScenario = json::object();
    DeploymentScenario scenario = scenarioFromJson(
        r.has("scenario") ? r.at("scenario") : emptyScenario, "scenario");

    const long samples = r.integer("curve_samples", 200);
    if (samples < 2 || samples > 10000)
    {
        throw ValidationError("curve_samples", "must be in [2, 10000]");
    }
    return AnalysisRequest{std::move(option0), std::move(option1),
                           std::move(scenario),
                           r.boolean("include_curves", false),
                           static_cast<int>(samples)};
}

} // namespace refresh
