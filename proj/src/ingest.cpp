#include "refresh/ingest.hpp"

#include "refresh/error.hpp"
#include "validate.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef REFRESH_DATA_DIR
#define REFRESH_DATA_DIR "data"
#endif

namespace refresh
{

LcaBreakdown::LcaBreakdown(std::string product, double manufacturingPct,
                           double operationalPct, double supplyChainPct,
                           double disposalPct) :
    product_(std::move(product)),
    manufacturing_(manufacturingPct), operational_(operationalPct),
    supplyChain_(supplyChainPct), disposal_(disposalPct)
{
    if (product_.empty())
    {
        throw ValidationError("product", "must not be empty");
    }
    detail::requireNonNegative(manufacturing_, "manufacturing_pct");
    detail::requireNonNegative(operational_, "operational_pct");
    detail::requireNonNegative(supplyChain_, "supply_chain_pct");
    detail::requireNonNegative(disposal_, "disposal_pct");
    // Published shares carry rounding, so the total is only required to be
    // near 100.
    const double total = totalPct();
    if (total < 98.0 || total > 103.0)
    {
        throw ValidationError("total_pct", "percentages sum to " +
                                               std::to_string(total) +
                                               ", expected [98, 103]");
    }
}

bool Catalog::contains(const std::string& id) const
{
    return devices.contains(id) || compositions.contains(id);
}

OptionSource Catalog::option(const std::string& id) const
{
    if (auto it = devices.find(id); it != devices.end())
    {
        return OptionSource{id, it->second};
    }
    if (auto it = compositions.find(id); it != compositions.end())
    {
        return OptionSource{id, it->second};
    }
    throw UnknownId(id);
}

namespace
{

std::string readFile(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
    {
        throw FileNotFound(path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

json parseJson(const std::string& text, const std::string& sourceName)
{
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        std::size_t line = 1;
        std::size_t column = 1;
        const std::size_t end = std::min<std::size_t>(
            e.byte > 0 ? e.byte - 1 : 0, text.size());
        for (std::size_t i = 0; i < end; ++i)
        {
            if (text[i] == '\n')
            {
                ++line;
                column = 1;
            }
            else
            {
                ++column;
            }
        }
        throw ParseError(sourceName, line, column, e.what());
    }
}

void checkSchemaVersion(const FieldReader& root)
{
    if (root.integer("schema_version") != kSchemaVersion)
    {
        throw ValidationError("schema_version",
                              "unsupported version (expected 1)");
    }
}

const json& arrayField(const FieldReader& r, const std::string& key)
{
    static const json empty = json::array();
    if (!r.has(key))
    {
        return empty;
    }
    const json& v = r.at(key);
    if (!v.is_array())
    {
        throw ValidationError(r.child(key), "expected an array");
    }
    return v;
}

std::string indexed(const std::string& key, std::size_t i)
{
    return key + "[" + std::to_string(i) + "]";
}

void parseDevices(const FieldReader& root, Catalog& c)
{
    const json& devices = arrayField(root, "devices");
    std::vector<std::pair<std::size_t, const json*>> aliases;

    auto insert = [&](std::size_t i, DeviceProfile d, const json& entry) {
        const std::string path = indexed("devices", i);
        if (c.devices.contains(d.id()))
        {
            throw ValidationError(path + ".id", "duplicate id '" + d.id() + "'");
        }
        if (FieldReader(entry, path).boolean("synthetic_calibration", false))
        {
            c.synthetic.insert(d.id());
        }
        c.devices.emplace(d.id(), std::move(d));
    };

    for (std::size_t i = 0; i < devices.size(); ++i)
    {
        const std::string path = indexed("devices", i);
        FieldReader r(devices[i], path);
        if (r.has("alias_of"))
        {
            aliases.emplace_back(i, &devices[i]);
            continue;
        }
        insert(i, deviceFromJson(devices[i], path), devices[i]);
    }

    // An alias reuses the measured latency and power of another row and
    // supplies its own identity, embodied carbon and lifetime.
    for (const auto& [i, entry] : aliases)
    {
        const std::string path = indexed("devices", i);
        FieldReader r(*entry, path);
        const std::string target = r.string("alias_of");
        auto it = c.devices.find(target);
        if (it == c.devices.end())
        {
            throw ValidationError(r.child("alias_of"),
                                  "unknown device '" + target + "'");
        }
        DeviceProfile::Params p = it->second.params();
        p.id = r.string("id");
        p.displayName = r.optionalString("display_name").value_or(p.id);
        p.embodiedKgCo2e = r.number("embodied_kgco2e", p.embodiedKgCo2e);
        p.lifetimeYears = r.number("lifetime_years", p.lifetimeYears);
        insert(i,
               withFieldPrefix(path,
                               [&] { return DeviceProfile(std::move(p)); }),
               *entry);
    }
}

void parseInterposers(const FieldReader& root, Catalog& c)
{
    const json& interposers = arrayField(root, "interposers");
    for (std::size_t i = 0; i < interposers.size(); ++i)
    {
        const std::string path = indexed("interposers", i);
        FieldReader r(interposers[i], path);
        const std::string id = r.string("id");
        if (c.interposers.contains(id))
        {
            throw ValidationError(path + ".id", "duplicate id '" + id + "'");
        }
        if (r.boolean("synthetic_calibration", false))
        {
            c.synthetic.insert(id);
        }
        c.interposers.emplace(id, interposerFromJson(interposers[i], path));
    }
}

void parseCompositions(const FieldReader& root, Catalog& c)
{
    const json& compositions = arrayField(root, "compositions");
    for (std::size_t i = 0; i < compositions.size(); ++i)
    {
        const std::string path = indexed("compositions", i);
        FieldReader r(compositions[i], path);
        const std::string id = r.string("id");
        if (c.compositions.contains(id) || c.devices.contains(id))
        {
            throw ValidationError(path + ".id", "duplicate id '" + id + "'");
        }
        if (r.boolean("synthetic_calibration", false))
        {
            c.synthetic.insert(id);
        }
        c.compositions.emplace(id,
                               compositionFromJson(compositions[i], path, &c));
    }
}

void parseLca(const FieldReader& root, Catalog& c)
{
    const json& rows = arrayField(root, "lca_reference");
    for (std::size_t i = 0; i < rows.size(); ++i)
    {
        const std::string path = indexed("lca_reference", i);
        FieldReader r(rows[i], path);
        c.lcaReference.push_back(withFieldPrefix(path, [&] {
            return LcaBreakdown(r.string("product"),
                                r.number("manufacturing_pct"),
                                r.number("operational_pct"),
                                r.number("supply_chain_pct"),
                                r.number("disposal_pct"));
        }));
    }
}

} // namespace

Composition compositionFromJson(const json& j, const std::string& path,
                                const Catalog* catalog)
{
    FieldReader r(j, path);
    Composition::Params p;
    p.id = r.optionalString("id").value_or("composed");
    p.displayName = r.optionalString("display_name").value_or(p.id);

    const json& dies = r.at("dies");
    if (!dies.is_array())
    {
        throw ValidationError(r.child("dies"), "expected an array");
    }
    for (std::size_t i = 0; i < dies.size(); ++i)
    {
        const std::string diePath = r.child(indexed("dies", i));
        FieldReader d(dies[i], diePath);
        const json& device = d.at("device");
        const int count = static_cast<int>(d.integer("count", 1));
        if (device.is_string())
        {
            const auto id = device.get<std::string>();
            if (!catalog || !catalog->devices.contains(id))
            {
                throw DanglingReference(p.id, id);
            }
            p.dies.push_back(DieEntry{catalog->devices.at(id), count});
        }
        else
        {
            p.dies.push_back(
                DieEntry{deviceFromJson(device, d.child("device")), count});
        }
    }

    if (r.has("interposer"))
    {
        const json& interposer = r.at("interposer");
        if (interposer.is_string())
        {
            const auto id = interposer.get<std::string>();
            if (!catalog || !catalog->interposers.contains(id))
            {
                throw DanglingReference(p.id, id);
            }
            p.interposer = catalog->interposers.at(id);
        }
        else
        {
            p.interposer =
                interposerFromJson(interposer, r.child("interposer"));
        }
    }
    p.residualEmbodiedFraction = r.number("residual_embodied_fraction", 0.0);
    p.lifetimeYears = r.number("lifetime_years");
    p.sdllRequired = r.optionalInteger("sdll_required");
    return withFieldPrefix(path, [&] { return Composition(std::move(p)); });
}

Catalog parseCatalog(const std::string& text, const std::string& sourceName)
{
    const json root = parseJson(text, sourceName);
    FieldReader r(root, "");
    checkSchemaVersion(r);

    Catalog c;
    parseDevices(r, c);
    parseInterposers(r, c);
    parseCompositions(r, c);
    parseLca(r, c);
    return c;
}

Catalog loadCatalog(const std::filesystem::path& path)
{
    return parseCatalog(readFile(path), path.string());
}

json catalogToJson(const Catalog& catalog)
{
    auto flag = [&](json entry, const std::string& id) {
        entry["synthetic_calibration"] = catalog.synthetic.contains(id);
        return entry;
    };

    json devices = json::array();
    for (const auto& [id, d] : catalog.devices)
    {
        devices.push_back(flag(toJson(d), id));
    }
    json interposers = json::array();
    for (const auto& [id, i] : catalog.interposers)
    {
        json entry = toJson(i);
        entry["id"] = id;
        interposers.push_back(flag(std::move(entry), id));
    }
    json compositions = json::array();
    for (const auto& [id, comp] : catalog.compositions)
    {
        compositions.push_back(flag(toJson(comp), id));
    }
    json lca = json::array();
    for (const auto& row : catalog.lcaReference)
    {
        lca.push_back({{"product", row.product()},
                       {"manufacturing_pct", row.manufacturingPct()},
                       {"operational_pct", row.operationalPct()},
                       {"supply_chain_pct", row.supplyChainPct()},
                       {"disposal_pct", row.disposalPct()}});
    }
    return {{"schema_version", kSchemaVersion},
            {"devices", std::move(devices)},
            {"interposers", std::move(interposers)},
            {"compositions", std::move(compositions)},
            {"lca_reference", std::move(lca)}};
}

GridProfile parseGrid(const std::string& text, const std::string& sourceName)
{
    const json root = parseJson(text, sourceName);
    FieldReader r(root, "");
    checkSchemaVersion(r);
    return gridFromJson(root, "");
}

GridProfile loadGrid(const std::filesystem::path& path)
{
    return parseGrid(readFile(path), path.string());
}

std::filesystem::path bundledDataDir()
{
    return std::filesystem::path(REFRESH_DATA_DIR);
}

std::filesystem::path defaultCatalogPath()
{
    if (const char* env = std::getenv("REFRESH_CATALOG"); env && *env)
    {
        return env;
    }
    return bundledDataDir() / "catalog.json";
}

} // namespace refresh
