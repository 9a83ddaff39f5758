#include "refresh/serialization.hpp"

#include "refresh/error.hpp"

#include <cmath>

namespace refresh
{

FieldReader::FieldReader(const json& object, std::string path) :
    object_(object), path_(std::move(path))
{
    if (!object_.is_object())
    {
        throw ValidationError(path_.empty() ? "<root>" : path_,
                              "expected a JSON object");
    }
}

std::string FieldReader::child(const std::string& key) const
{
    return path_.empty() ? key : path_ + "." + key;
}

bool FieldReader::has(const std::string& key) const
{
    auto it = object_.find(key);
    return it != object_.end() && !it->is_null();
}

const json& FieldReader::at(const std::string& key) const
{
    auto it = object_.find(key);
    if (it == object_.end() || it->is_null())
    {
        throw ValidationError(child(key), "required field is missing");
    }
    return *it;
}

std::string FieldReader::string(const std::string& key) const
{
    const json& v = at(key);
    if (!v.is_string())
    {
        throw ValidationError(child(key), "expected a string");
    }
    return v.get<std::string>();
}

std::optional<std::string> FieldReader::optionalString(
    const std::string& key) const
{
    if (!has(key))
    {
        return std::nullopt;
    }
    return string(key);
}

double FieldReader::number(const std::string& key) const
{
    const json& v = at(key);
    if (!v.is_number())
    {
        throw ValidationError(child(key), "expected a number");
    }
    return v.get<double>();
}

double FieldReader::number(const std::string& key, double fallback) const
{
    return has(key) ? number(key) : fallback;
}

std::optional<double> FieldReader::optionalNumber(const std::string& key) const
{
    if (!has(key))
    {
        return std::nullopt;
    }
    return number(key);
}

long FieldReader::integer(const std::string& key) const
{
    const json& v = at(key);
    if (v.is_number_integer())
    {
        return v.get<long>();
    }
    if (v.is_number_float())
    {
        const double d = v.get<double>();
        if (std::isfinite(d) && std::floor(d) == d && std::fabs(d) < 1e15)
        {
            return static_cast<long>(d);
        }
    }
    throw ValidationError(child(key), "expected an integer");
}

long FieldReader::integer(const std::string& key, long fallback) const
{
    return has(key) ? integer(key) : fallback;
}

std::optional<long> FieldReader::optionalInteger(const std::string& key) const
{
    if (!has(key))
    {
        return std::nullopt;
    }
    return integer(key);
}

bool FieldReader::boolean(const std::string& key, bool fallback) const
{
    if (!has(key))
    {
        return fallback;
    }
    const json& v = at(key);
    if (!v.is_boolean())
    {
        throw ValidationError(child(key), "expected true or false");
    }
    return v.get<bool>();
}

json toJson(const PowerProfile& p)
{
    return {{"p_dynamic_w", p.dynamicW()},
            {"p_static_w", p.staticW()},
            {"p_sleep_w", p.sleepW()}};
}

json toJson(const DeviceProfile& d)
{
    return {{"id", d.id()},
            {"display_name", d.displayName()},
            {"tech_node_nm", d.techNodeNm()},
            {"unit_work_latency_ns", d.unitWorkLatencyNs()},
            {"parallel_units", d.parallelUnits()},
            {"power", toJson(d.power())},
            {"embodied_kgco2e", d.embodiedKgCo2e()},
            {"lifetime_years", d.lifetimeYears()}};
}

json toJson(const InterposerSpec& i)
{
    json j = {{"embodied_kgco2e", i.embodiedKgCo2e()},
              {"sdll_efficiency", i.sdllEfficiency()},
              {"power_overhead_watts", i.powerOverheadW()},
              {"sdll_capacity", nullptr}};
    if (i.sdllCapacity())
    {
        j["sdll_capacity"] = *i.sdllCapacity();
    }
    return j;
}

json toJson(const Composition& c)
{
    const auto& p = c.params();
    json dies = json::array();
    for (const auto& d : p.dies)
    {
        dies.push_back({{"device", toJson(d.die)}, {"count", d.count}});
    }
    json j = {{"id", p.id},
              {"display_name", p.displayName},
              {"dies", std::move(dies)},
              {"interposer", toJson(p.interposer)},
              {"residual_embodied_fraction", p.residualEmbodiedFraction},
              {"lifetime_years", p.lifetimeYears},
              {"sdll_required", nullptr}};
    if (p.sdllRequired)
    {
        j["sdll_required"] = *p.sdllRequired;
    }
    return j;
}

json toJson(const DutyCycle& d)
{
    const auto f = stateFractions(d);
    return {{"r_sleep", d.rSleep()},
            {"r_active", d.rActive()},
            {"f_active", f.active},
            {"f_idle", f.idle},
            {"f_sleep", f.sleep}};
}

json toJson(const GridProfile& g)
{
    return {{"base_intensity_g_per_kwh", g.baseIntensityGPerKwh()},
            {"renewable_fraction", g.renewableFraction()},
            {"renewable_intensity_g_per_kwh", g.renewableIntensityGPerKwh()},
            {"effective_intensity_g_per_kwh", effectiveIntensity(g)}};
}

json toJson(const DeploymentScenario& s)
{
    return {{"grid", toJson(s.grid())},
            {"duty", toJson(s.duty())},
            {"comparison_mode", std::string(toString(s.mode()))},
            {"horizon_years", s.horizonYears()}};
}

json toJson(const CarbonCurve& c)
{
    json samples = json::array();
    for (const auto& [t, kg] : c.samples)
    {
        samples.push_back({t, kg});
    }
    return {{"option_label", c.optionLabel},
            {"includes_upfront", c.includesUpfront},
            {"samples", std::move(samples)}};
}

json optionalNumber(const std::optional<double>& v)
{
    return v ? json(*v) : json(nullptr);
}

PowerProfile powerFromJson(const json& j, const std::string& path)
{
    FieldReader r(j, path);
    return withFieldPrefix(path, [&] {
        return PowerProfile(r.number("p_dynamic_w"), r.number("p_static_w"),
                            r.number("p_sleep_w", 0.0));
    });
}

DeviceProfile deviceFromJson(const json& j, const std::string& path)
{
    FieldReader r(j, path);
    DeviceProfile::Params p;
    p.id = r.string("id");
    p.displayName = r.optionalString("display_name").value_or(p.id);
    p.techNodeNm = r.number("tech_node_nm");
    p.unitWorkLatencyNs = r.number("unit_work_latency_ns");
    p.parallelUnits = static_cast<int>(r.integer("parallel_units", 1));
    p.power = powerFromJson(r.at("power"), r.child("power"));
    p.embodiedKgCo2e = r.number("embodied_kgco2e");
    p.lifetimeYears = r.number("lifetime_years");
    return withFieldPrefix(path, [&] { return DeviceProfile(std::move(p)); });
}

InterposerSpec interposerFromJson(const json& j, const std::string& path)
{
    FieldReader r(j, path);
    InterposerSpec::Params p;
    p.embodiedKgCo2e = r.number("embodied_kgco2e");
    p.sdllEfficiency = r.number("sdll_efficiency", 1.0);
    p.powerOverheadW = r.number("power_overhead_watts", 0.0);
    p.sdllCapacity = r.optionalInteger("sdll_capacity");
    return withFieldPrefix(path, [&] { return InterposerSpec(std::move(p)); });
}

DutyCycle dutyFromJson(const json& j, const std::string& path)
{
    FieldReader r(j, path);
    return withFieldPrefix(path, [&] {
        return DutyCycle(r.number("r_sleep"), r.number("r_active"));
    });
}

GridProfile gridFromJson(const json& j, const std::string& path)
{
    FieldReader r(j, path);
    return withFieldPrefix(path, [&] {
        return GridProfile(r.number("base_intensity_g_per_kwh"),
                           r.number("renewable_fraction"),
                           r.number("renewable_intensity_g_per_kwh", 0.0));
    });
}

} // namespace refresh
