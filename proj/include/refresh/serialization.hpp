#pragma once

#include "refresh/composer.hpp"
#include "refresh/core_model.hpp"
#include "refresh/error.hpp"
#include "refresh/lifecycle.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace refresh
{

using json = nlohmann::json;

/// Typed access to the members of one JSON object. Every failure is raised
/// as ValidationError naming the full field path.
class FieldReader
{
  public:
    FieldReader(const json& object, std::string path);

    const std::string& path() const noexcept
    {
        return path_;
    }
    std::string child(const std::string& key) const;

    bool has(const std::string& key) const;
    const json& at(const std::string& key) const;

    std::string string(const std::string& key) const;
    std::optional<std::string> optionalString(const std::string& key) const;
    double number(const std::string& key) const;
    double number(const std::string& key, double fallback) const;
    std::optional<double> optionalNumber(const std::string& key) const;
    long integer(const std::string& key) const;
    long integer(const std::string& key, long fallback) const;
    std::optional<long> optionalInteger(const std::string& key) const;
    bool boolean(const std::string& key, bool fallback) const;

  private:
    const json& object_;
    std::string path_;
};

/// Re-raises a ValidationError from a domain constructor with `path`
/// prefixed to its field name.
template <typename F>
auto withFieldPrefix(const std::string& path, F&& build) -> decltype(build())
{
    try
    {
        return build();
    }
    catch (const ValidationError& e)
    {
        throw ValidationError(path.empty() ? e.field()
                                           : path + "." + e.field(),
                              e.reason());
    }
}

json toJson(const PowerProfile& p);
json toJson(const DeviceProfile& d);
json toJson(const InterposerSpec& i);
json toJson(const DutyCycle& d);
json toJson(const GridProfile& g);
json toJson(const DeploymentScenario& s);
json toJson(const CarbonCurve& c);

/// Inline form: dies carry full device objects and the interposer is
/// embedded, so the value can be re-read without a catalog.
json toJson(const Composition& c);

/// `null` for nullopt.
json optionalNumber(const std::optional<double>& v);

PowerProfile powerFromJson(const json& j, const std::string& path);
DeviceProfile deviceFromJson(const json& j, const std::string& path);
InterposerSpec interposerFromJson(const json& j, const std::string& path);
DutyCycle dutyFromJson(const json& j, const std::string& path);
GridProfile gridFromJson(const json& j, const std::string& path);

} // namespace refresh
