#pragma once

#include "refresh/composer.hpp"
#include "refresh/core_model.hpp"
#include "refresh/serialization.hpp"
#include "refresh/sweep.hpp"

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace refresh
{

inline constexpr int kSchemaVersion = 1;

/// Shares of a product's lifecycle CO2e, in percent.
class LcaBreakdown
{
  public:
    LcaBreakdown(std::string product, double manufacturingPct,
                 double operationalPct, double supplyChainPct,
                 double disposalPct);

    const std::string& product() const noexcept
    {
        return product_;
    }
    double manufacturingPct() const noexcept
    {
        return manufacturing_;
    }
    double operationalPct() const noexcept
    {
        return operational_;
    }
    double supplyChainPct() const noexcept
    {
        return supplyChain_;
    }
    double disposalPct() const noexcept
    {
        return disposal_;
    }
    double totalPct() const noexcept
    {
        return manufacturing_ + operational_ + supplyChain_ + disposal_;
    }

    bool operator==(const LcaBreakdown&) const = default;

  private:
    std::string product_;
    double manufacturing_;
    double operational_;
    double supplyChain_;
    double disposal_;
};

struct Catalog
{
    std::map<std::string, DeviceProfile> devices;
    std::map<std::string, InterposerSpec> interposers;
    std::map<std::string, Composition> compositions;
    std::vector<LcaBreakdown> lcaReference;
    /// Ids (of any kind) whose carbon/lifetime values are synthetic
    /// calibration inputs rather than measurements.
    std::set<std::string> synthetic;

    bool operator==(const Catalog&) const = default;

    bool contains(const std::string& id) const;

    /// Device or composition by id; throws UnknownId.
    OptionSource option(const std::string& id) const;
};

/// Throws FileNotFound, ParseError (with line and column), ValidationError
/// (with the field path) or DanglingReference.
Catalog loadCatalog(const std::filesystem::path& path);
Catalog parseCatalog(const std::string& text,
                     const std::string& sourceName = "<memory>");

/// Canonical JSON form; `parseCatalog(catalogToJson(c).dump()) == c`.
json catalogToJson(const Catalog& catalog);

/// Reads a composition object. Die entries name a catalog device
/// (`"device": "zcu102"`) or embed one; the interposer is an id or an
/// inline object. `catalog` may be null when everything is inline.
Composition compositionFromJson(const json& j, const std::string& path,
                                const Catalog* catalog);

GridProfile loadGrid(const std::filesystem::path& path);
GridProfile parseGrid(const std::string& text,
                      const std::string& sourceName = "<memory>");

struct GridFetchResult
{
    GridProfile grid;
    /// "remote" or "fallback".
    std::string provenance;
};

/// GET {endpoint}/v1/intensity?region={region}, expecting
/// {"region", "intensity_g_per_kwh", "renewable_fraction"}.
///
/// On any network or schema failure the fallback grid file is loaded when
/// given; otherwise NetworkError or RemoteSchemaError is thrown.
GridFetchResult fetchGridIntensity(
    const std::string& endpoint, const std::string& region,
    const std::optional<std::filesystem::path>& fallback = std::nullopt,
    std::chrono::milliseconds timeout = std::chrono::seconds(5));

/// $REFRESH_CATALOG if set, else the bundled catalog.
std::filesystem::path defaultCatalogPath();
std::filesystem::path bundledDataDir();

} // namespace refresh
