// Acceptance checks A1-A8. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Tolerances are fixed here, not configurable.
#include "refresh/analysis.hpp"
#include "refresh/api_service.hpp"
#include "refresh/cli.hpp"
#include "refresh/composer.hpp"
#include "refresh/ingest.hpp"
#include "refresh/lifecycle.hpp"
#include "refresh/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

using namespace refresh;

namespace
{

constexpr double kScanTolYears = 1e-4;
constexpr double kIdentityRelTol = 1e-9;
constexpr double kA1BudgetSeconds = 10.0;
constexpr double kPowerTolW = 1e-9;
constexpr double kComposeRelTol = 1e-12;
// Bit equality is out of reach once the work is divided by latency; four
// ulps is the same bound gtest's EXPECT_DOUBLE_EQ uses.
constexpr double kWorkRatioRelTol = 4 * std::numeric_limits<double>::epsilon();
constexpr double kBandLow = 2.0, kBandHigh = 4.0;
constexpr double kCleanGridMaxYears = 1.0;

struct Check
{
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what)
    {
        if (!cond && ok)
        {
            ok = false;
            detail = what;
        }
    }
};

const Catalog& catalog()
{
    static const Catalog c =
        loadCatalog(std::string(REFRESH_TEST_DATA_DIR) + "/catalog.json");
    return c;
}

DeploymentScenario scenarioAt(double renewables, const char* preset)
{
    return DeploymentScenario(GridProfile(400, renewables, 0),
                              *dutyPreset(preset));
}

std::optional<double> tI(double renewables, const char* preset)
{
    return analyzePair(catalog().option("refresh_4x_zcu102"),
                       catalog().option("vm1802"),
                       scenarioAt(renewables, preset))
        .tIndifferenceYears;
}

bool relClose(double a, double b, double rel)
{
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

std::string num(double v)
{
    return fullPrecision(v);
}

// A1: closed form against the brute-force scan on random pairs whose total
// rates differ in option 1's favour.
Check a1()
{
    Check c;
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> o(0.0, 50.0);
    std::uniform_real_distribution<double> e(0.0, 200.0);
    std::uniform_real_distribution<double> l(0.5, 10.0);
    constexpr int kPairs = 1000;
    constexpr double kMaxHorizonYears = 1e5;
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int i = 0; i < kPairs;)
    {
        double e0 = e(rng), e1 = e(rng);
        if (e1 < e0)
            std::swap(e0, e1);
        const RateTerms a{o(rng), e0, l(rng)};
        const RateTerms b{o(rng), e1, l(rng)};
        const double d = a.rate() - b.rate();
        if (!(d > 0.0))
            continue;
        const std::string tag = "pair " + std::to_string(i);
        ++i;

        const auto closed = crossoverTimes(a, b);
        // Widen the scan until it brackets a crossing on its own.
        ScanOptions so;
        so.tMaxYears = defaultScanHorizon(a, b);
        so.dtYears = kDefaultScanDt;
        std::optional<double> scanned = crossoverScan(a, b, so);
        while (!scanned && so.tMaxYears < kMaxHorizonYears)
        {
            so.tMaxYears *= 2;
            scanned = crossoverScan(a, b, so);
        }
        c.require(closed.indifferenceYears.has_value(),
                  tag + ": closed form undefined");
        c.require(scanned.has_value(), tag + ": scan found no crossing");
        if (closed.indifferenceYears && scanned)
        {
            const double err = std::abs(*scanned - *closed.indifferenceYears);
            worst = std::max(worst, err);
            c.require(err <= kScanTolYears, tag + " differs by " + num(err));
        }
        if (closed.indifferenceYears && closed.breakevenYears)
        {
            c.require(relClose(*closed.breakevenYears -
                                   *closed.indifferenceYears,
                               a.embodiedKg / d, kIdentityRelTol),
                      tag + ": t_B - t_I != E0/D");
        }
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    c.require(secs < kA1BudgetSeconds, "took " + num(secs) + " s");
    if (c.ok)
    {
        std::ostringstream os;
        os << kPairs << " pairs, max |dt| " << worst << " y, " << secs << " s";
        c.detail = os.str();
    }
    return c;
}

// A2: measured device rows.
Check a2()
{
    Check c;
    struct Row
    {
        const char* id;
        double node, latency, dyn, stat, active;
    };
    for (const Row& r : {Row{"vc709", 28, 6.09, 21.835, 0.799, 22.634},
                         Row{"zcu102", 16, 4.60, 21.410, 0.920, 22.330},
                         Row{"vmk180", 7, 3.99, 12.738, 9.384, 22.122}})
    {
        const auto& d = catalog().devices.at(r.id);
        c.require(d.techNodeNm() == r.node, std::string(r.id) + " node");
        c.require(d.unitWorkLatencyNs() == r.latency,
                  std::string(r.id) + " latency");
        c.require(d.power().dynamicW() == r.dyn,
                  std::string(r.id) + " dynamic power");
        c.require(d.power().staticW() == r.stat,
                  std::string(r.id) + " static power");
        c.require(std::abs(d.power().activeW() - r.active) <= kPowerTolW,
                  std::string(r.id) + " active power " +
                      num(d.power().activeW()));
    }
    return c;
}

// A3: annual work of the duty presets, on the catalog parts and on random
// devices.
Check a3()
{
    Check c;
    std::vector<DeviceProfile> devices;
    for (const auto& [id, d] : catalog().devices)
        devices.push_back(d);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> lat(0.05, 100.0);
    std::uniform_int_distribution<int> units(1, 64);
    for (int i = 0; i < 1000; ++i)
    {
        DeviceProfile::Params p = devices.front().params();
        p.id = "random" + std::to_string(i);
        p.unitWorkLatencyNs = lat(rng);
        p.parallelUnits = units(rng);
        devices.emplace_back(p);
    }
    for (const auto& d : devices)
    {
        const double w1 = annualWork(d, *dutyPreset("case1"));
        const double w2 = annualWork(d, *dutyPreset("case2"));
        const double w3 = annualWork(d, *dutyPreset("case3"));
        c.require(relClose(w3, 3.0 * w1, kWorkRatioRelTol),
                  d.id() + " case3/case1 = " + num(w3 / w1));
        c.require(relClose(w2, 4.0 / 3.0 * w1, kWorkRatioRelTol),
                  d.id() + " case2/case1 = " + num(w2 / w1));
    }
    return c;
}

// A4: t_I never decreases as renewables rise.
Check a4()
{
    Check c;
    std::vector<double> values;
    for (int k = 0; k < 20; ++k)
        values.push_back(0.05 * k);
    for (const char* preset : {"case1", "case2", "case3"})
    {
        const auto r = sweep(catalog().option("refresh_4x_zcu102"),
                             catalog().option("vm1802"),
                             scenarioAt(0.0, preset),
                             SweepParameter::RenewableFraction, values);
        double previous = -1.0;
        for (const auto& row : r.rows)
        {
            c.require(!row.error && row.tIndifferenceYears.has_value(),
                      std::string(preset) + " undefined at " +
                          num(row.parameterValue));
            if (row.tIndifferenceYears)
            {
                c.require(*row.tIndifferenceYears >= previous,
                          std::string(preset) + " decreases at " +
                              num(row.parameterValue));
                previous = *row.tIndifferenceYears;
            }
        }
    }
    return c;
}

// A5: calibrated case studies.
Check a5()
{
    Check c;
    std::ostringstream os;
    for (const char* preset : {"case1", "case2", "case3"})
    {
        const auto clean = tI(0.0, preset);
        const auto green = tI(0.9, preset);
        c.require(clean && *clean <= kCleanGridMaxYears,
                  std::string(preset) + " at 0% renewables: " +
                      (clean ? num(*clean) : "none"));
        c.require(green.has_value(), std::string(preset) + " undefined at 90%");
        os << (os.tellp() > 0 ? ", " : "") << preset << " "
           << (green ? humanNumber(*green) : "none") << " y";
    }
    for (const char* preset : {"case1", "case2"})
    {
        const auto t = tI(0.9, preset);
        c.require(t && *t >= kBandLow && *t <= kBandHigh,
                  std::string(preset) + " at 90% outside [2, 4]: " +
                      (t ? num(*t) : "none"));
    }
    const auto t1 = tI(0.9, "case1"), t3 = tI(0.9, "case3");
    c.require(t1 && t3 && *t3 < *t1, "case3 not earlier than case1");
    if (c.ok)
        c.detail = "at 90% renewables: " + os.str();
    return c;
}

// A6: composition arithmetic.
Check a6()
{
    Check c;
    const auto& z = catalog().devices.at("zcu102");
    for (const auto& [id, die] : catalog().devices)
    {
        Composition::Params p;
        p.dies = {{die, 1}};
        p.lifetimeYears = die.lifetimeYears();
        const DeviceProfile one = compose(Composition(p));
        c.require(one.unitWorkLatencyNs() == die.unitWorkLatencyNs(),
                  id + " single-die latency changed");
        c.require(one.power() == die.power(), id + " single-die power changed");
    }
    Composition::Params p;
    p.dies = {{z, 4}};
    p.lifetimeYears = 6;
    const DeviceProfile four = compose(Composition(p));
    c.require(relClose(four.unitWorkLatencyNs(), 1.15, kComposeRelTol),
              "4x latency " + num(four.unitWorkLatencyNs()));
    c.require(relClose(four.power().dynamicW(), 4 * z.power().dynamicW(),
                       kComposeRelTol),
              "4x dynamic power");
    c.require(relClose(four.power().staticW(), 4 * z.power().staticW(),
                       kComposeRelTol),
              "4x static power");
    return c;
}

// A7: lifecycle-share reference table.
Check a7()
{
    Check c;
    const auto& rows = catalog().lcaReference;
    c.require(rows.size() == 8, "expected 8 rows");
    bool iphone = false, dell = false;
    for (const auto& r : rows)
    {
        c.require(r.totalPct() >= 98.0 && r.totalPct() <= 103.0,
                  r.product() + " total " + num(r.totalPct()));
        if (r.product() == "iPhone 14")
        {
            iphone = r.manufacturingPct() == 79 && r.operationalPct() == 18 &&
                     r.supplyChainPct() == 2 && r.disposalPct() == 0;
        }
        if (r.product() == "Dell PowerEdge R740")
        {
            dell = r.manufacturingPct() == 49.7 && r.operationalPct() == 52.5 &&
                   r.supplyChainPct() == 0 && r.disposalPct() == 0;
        }
    }
    c.require(iphone, "iPhone 14 row is not 79/18/2/0");
    c.require(dell, "Dell PowerEdge R740 row is not 49.7/52.5/0/0");
    c.require(lcaHuman(rows).find("Google Pixel 7, 84, 12, 3, 1") !=
                  std::string::npos,
              "human table row");
    return c;
}

// A8: CLI JSON and the HTTP API agree on random requests.
Check a8()
{
    Check c;
    const auto shared = std::make_shared<const Catalog>(catalog());
    const ApiHandler api(shared);
    const std::vector<std::string> ids = {"refresh_4x_zcu102",
                                          "refresh_2x_vc709_2x_zcu102",
                                          "zcu102", "vc709", "vmk180",
                                          "vm1802"};
    std::mt19937_64 rng(8);
    std::uniform_int_distribution<std::size_t> pick(0, ids.size() - 1);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int none = 0;
    const std::string catalogPath =
        std::string(REFRESH_TEST_DATA_DIR) + "/catalog.json";
    for (int i = 0; i < 10; ++i)
    {
        const std::string a = ids[pick(rng)], b = ids[pick(rng)];
        const double ren = std::round(u(rng) * 100) / 100;
        const double rs = std::round(u(rng) * 100) / 100;
        const double ra = std::round(u(rng) * 100) / 100;
        // Every fourth request is fully renewable, where no pair crosses.
        const double renewables = i % 4 == 3 ? 1.0 : ren;

        std::vector<std::string> args = {
            "refresh",      "--catalog",    catalogPath, "analyze",
            "--opt0",       a,              "--opt1",    b,
            "--renewables", num(renewables), "--r-sleep", num(rs),
            "--r-active",   num(ra),        "--format",  "json"};
        std::vector<const char*> argv;
        for (const auto& s : args)
            argv.push_back(s.c_str());
        std::ostringstream out, err;
        const int code =
            runCli(static_cast<int>(argv.size()), argv.data(), out, err);

        const json request = {
            {"option0", a},
            {"option1", b},
            {"scenario",
             {{"grid", {{"renewable_fraction", renewables}}},
              {"duty", {{"r_sleep", rs}, {"r_active", ra}}}}}};
        const ApiResponse resp =
            api.handle("POST", "/api/v1/analyze", request.dump());
        const std::string tag = "request " + std::to_string(i) + " (" + a +
                                " vs " + b + ")";
        c.require(resp.status == 200, tag + ": API status " +
                                          std::to_string(resp.status));
        c.require(code == kExitOk || code == kExitNoIndifference,
                  tag + ": CLI exit " + std::to_string(code) + " " + err.str());
        if (resp.status != 200 || (code != kExitOk && code != kExitNoIndifference))
            continue;
        const json cliDoc = json::parse(out.str());
        const json apiDoc = json::parse(resp.body);
        c.require(cliDoc == apiDoc, tag + ": documents differ");
        const bool isNull = apiDoc["t_indifference_years"].is_null();
        c.require(isNull == (code == kExitNoIndifference),
                  tag + ": exit code does not match null t_I");
        none += isNull ? 1 : 0;
    }
    c.require(none > 0, "no request exercised the no-crossover path");
    if (c.ok)
        c.detail = "10 requests, " + std::to_string(none) + " without t_I";
    return c;
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Check()>>> checks = {
        {"A1 closed form matches brute-force scan", a1},
        {"A2 measured device table", a2},
        {"A3 duty-preset work ratios", a3},
        {"A4 t_I monotone in renewables", a4},
        {"A5 calibrated case studies", a5},
        {"A6 composition arithmetic", a6},
        {"A7 LCA reference table", a7},
        {"A8 CLI and API agree", a8},
    };
    int failures = 0;
    for (const auto& [name, fn] : checks)
    {
        Check c;
        try
        {
            c = fn();
        }
        catch (const std::exception& e)
        {
            c.ok = false;
            c.detail = std::string("exception: ") + e.what();
        }
        std::cout << (c.ok ? "PASS " : "FAIL ") << name;
        if (!c.detail.empty())
            std::cout << ": " << c.detail;
        std::cout << "\n";
        failures += c.ok ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}
