#include "refresh/cli.hpp"

#include "refresh/analysis.hpp"
#include "refresh/api_service.hpp"
#include "refresh/error.hpp"
#include "refresh/report.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <pthread.h>
#include <thread>

namespace refresh
{

namespace
{

struct ScenarioFlags
{
    std::string opt0;
    std::string opt1;
    std::string duty = "case1";
    std::optional<double> rSleep;
    std::optional<double> rActive;
    std::optional<double> renewables;
    std::optional<double> baseIntensity;
    std::optional<double> renewableIntensity;
    std::string gridFile;
    std::string gridEndpoint;
    std::string region;
    std::string mode = "equal-time";
    double horizon = 10.0;
};

struct SweepFlags
{
    std::string param;
    std::optional<double> from;
    std::optional<double> to;
    int steps = 10;
};

void addScenarioFlags(CLI::App* cmd, ScenarioFlags& f)
{
    cmd->add_option("--opt0", f.opt0,
                    "Option 0: catalog id or inline composition "
                    "(e.g. zcu102x4@std:6)")
        ->required();
    cmd->add_option("--opt1", f.opt1, "Option 1 (higher embodied carbon)")
        ->required();
    cmd->add_option("--duty", f.duty, "Duty-cycle preset: case1|case2|case3");
    cmd->add_option("--r-sleep", f.rSleep, "Sleep time over total time");
    cmd->add_option("--r-active", f.rActive,
                    "Compute time over non-sleep time");
    cmd->add_option("--renewables", f.renewables,
                    "Renewable fraction of grid electricity [0, 1]");
    cmd->add_option("--base-intensity", f.baseIntensity,
                    "Non-renewable grid intensity, gCO2e/kWh");
    cmd->add_option("--renewable-intensity", f.renewableIntensity,
                    "Renewable electricity intensity, gCO2e/kWh");
    cmd->add_option("--grid", f.gridFile,
                    "Grid profile JSON (fallback when --region is used)");
    cmd->add_option("--grid-endpoint", f.gridEndpoint,
                    "Remote grid-intensity service base URL")
        ->envname("REFRESH_GRID_ENDPOINT");
    cmd->add_option("--region", f.region,
                    "Region to query on the grid-intensity service");
    cmd->add_option("--mode", f.mode, "equal-time|equal-work");
    cmd->add_option("--horizon", f.horizon, "Plot/curve horizon in years");
}

void addSweepFlags(CLI::App* cmd, SweepFlags& f, bool required)
{
    auto* param = cmd->add_option(
        "--param", f.param,
        "renewable_fraction|r_active|r_sleep|die_count");
    auto* from = cmd->add_option("--from", f.from, "First parameter value");
    auto* to = cmd->add_option("--to", f.to, "Last parameter value");
    cmd->add_option("--steps", f.steps, "Number of evenly spaced values");
    if (required)
    {
        param->required();
        from->required();
        to->required();
    }
}

GridProfile buildGrid(const ScenarioFlags& f)
{
    GridProfile grid = defaultGrid();
    if (!f.region.empty())
    {
        if (f.gridEndpoint.empty())
        {
            throw ValidationError("--grid-endpoint",
                                  "required with --region (or set "
                                  "REFRESH_GRID_ENDPOINT)");
        }
        std::optional<std::filesystem::path> fallback;
        if (!f.gridFile.empty())
        {
            fallback = f.gridFile;
        }
        grid = fetchGridIntensity(f.gridEndpoint, f.region, fallback).grid;
    }
    else if (!f.gridFile.empty())
    {
        grid = loadGrid(f.gridFile);
    }
    return GridProfile(
        f.baseIntensity.value_or(grid.baseIntensityGPerKwh()),
        f.renewables.value_or(grid.renewableFraction()),
        f.renewableIntensity.value_or(grid.renewableIntensityGPerKwh()));
}

DeploymentScenario buildScenario(const ScenarioFlags& f)
{
    auto preset = dutyPreset(f.duty);
    if (!preset)
    {
        throw ValidationError("--duty", "expected case1, case2 or case3");
    }
    const DutyCycle duty(f.rSleep.value_or(preset->rSleep()),
                         f.rActive.value_or(preset->rActive()));
    auto mode = parseComparisonMode(f.mode);
    if (!mode)
    {
        throw ValidationError("--mode", "expected equal-time or equal-work");
    }
    return DeploymentScenario(buildGrid(f), duty, *mode, f.horizon);
}

OutputFormat parseFormat(const std::string& text, bool allowSvg)
{
    auto format = parseOutputFormat(text);
    if (!format)
    {
        throw ValidationError("--format", "expected human, json, csv or svg");
    }
    if (*format == OutputFormat::Svg && !allowSvg)
    {
        throw ValidationError("--format",
                              "svg is only available for the plot command");
    }
    return *format;
}

std::vector<double> sweepValues(const SweepFlags& f)
{
    if (f.steps < 1)
    {
        throw ValidationError("--steps", "must be >= 1");
    }
    const double from = *f.from;
    const double to = *f.to;
    if (!(from < to) && !(f.steps == 1 && from == to))
    {
        throw ValidationError("--from", "must be below --to");
    }
    if (f.steps == 1)
    {
        return {from};
    }
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(f.steps));
    for (int i = 0; i < f.steps; ++i)
    {
        values.push_back(i + 1 == f.steps
                             ? to
                             : from + (to - from) * i / (f.steps - 1));
    }
    return values;
}

SweepParameter parseParam(const std::string& name)
{
    auto p = parseSweepParameter(name);
    if (!p)
    {
        throw ValidationError("--param", "expected renewable_fraction, "
                                         "r_active, r_sleep or die_count");
    }
    return *p;
}

void writeFile(const std::string& path, const std::string& content)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
    {
        throw Error("unwritable_path", "cannot write to '" + path + "'");
    }
    file << content;
    if (!file)
    {
        throw Error("unwritable_path", "failed writing '" + path + "'");
    }
}

std::string parseDieList(const std::vector<std::string>& dies)
{
    std::string spec;
    for (const auto& entry : dies)
    {
        std::string item = entry;
        for (char& c : item)
        {
            if (c == ',')
                c = '+';
        }
        spec += (spec.empty() ? "" : "+") + item;
    }
    return spec;
}

int serve(const Catalog& catalog, const ServiceOptions& options,
          std::ostream& out, std::ostream& err)
{
    sigset_t signals;
    sigemptyset(&signals);
    sigaddset(&signals, SIGINT);
    sigaddset(&signals, SIGTERM);
    pthread_sigmask(SIG_BLOCK, &signals, nullptr);

    ApiService service(std::make_shared<const Catalog>(catalog), options);
    if (!service.bind())
    {
        err << "error: cannot bind " << options.host << ":" << options.port
            << "\n";
        return kExitInputError;
    }
    out << "serving on http://" << options.host << ":" << service.port()
        << std::endl;

    std::thread waiter([&] {
        int received = 0;
        sigwait(&signals, &received);
        service.stop();
    });
    service.run();
    // run() can also end without a signal; wake the waiter in that case.
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
    return kExitOk;
}

} // namespace

int runCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err)
{
    CLI::App app{"Lifecycle-carbon comparison of new and REFRESH FPGA devices",
                 "refresh"};
    app.require_subcommand(1);

    std::string catalogPath;
    app.add_option("--catalog", catalogPath, "Catalog JSON file")
        ->envname("REFRESH_CATALOG");

    ScenarioFlags analyzeFlags;
    std::string analyzeFormat = "human";
    auto* analyze = app.add_subcommand(
        "analyze", "Indifference and break-even times for two options");
    addScenarioFlags(analyze, analyzeFlags);
    analyze->add_option("--format", analyzeFormat, "human|json|csv");

    ScenarioFlags sweepScenario;
    SweepFlags sweepFlags;
    std::string sweepFormat = "human";
    auto* sweepCmd = app.add_subcommand(
        "sweep", "Indifference times across a parameter range");
    addScenarioFlags(sweepCmd, sweepScenario);
    addSweepFlags(sweepCmd, sweepFlags, true);
    sweepCmd->add_option("--format", sweepFormat, "human|json|csv");

    ScenarioFlags plotScenario;
    SweepFlags plotSweep;
    std::string plotOutput;
    std::string plotFormat = "svg";
    int plotSamples = 200;
    auto* plot = app.add_subcommand(
        "plot", "SVG of cumulative-carbon curves, or of a sweep with --param");
    addScenarioFlags(plot, plotScenario);
    addSweepFlags(plot, plotSweep, false);
    plot->add_option("-o,--output", plotOutput, "Output SVG path")->required();
    plot->add_option("--samples", plotSamples, "Samples per curve");
    plot->add_option("--format", plotFormat, "svg");

    std::vector<std::string> composeDies;
    std::string composeInterposer;
    std::optional<double> composeEfficiency;
    std::optional<double> composeInterposerEmbodied;
    std::optional<double> composePowerOverhead;
    std::optional<long> composeSdllCapacity;
    std::optional<long> composeSdllRequired;
    double composeResidual = 0.0;
    double composeLifetime = kDefaultCompositionLifetimeYears;
    std::string composeId = "composed";
    std::string composeName = "REFRESH composition";
    std::string composeFormat = "human";
    auto* composeCmd =
        app.add_subcommand("compose", "Aggregate profile of retired dies");
    composeCmd
        ->add_option("--dies", composeDies,
                     "Die list, e.g. zcu102x4 or vc709x2,zcu102x2")
        ->required();
    composeCmd->add_option("--interposer", composeInterposer,
                           "Interposer id from the catalog");
    composeCmd->add_option("--efficiency", composeEfficiency,
                           "SDLL throughput efficiency (0, 1]");
    composeCmd->add_option("--interposer-embodied", composeInterposerEmbodied,
                           "Interposer embodied carbon, kgCO2e");
    composeCmd->add_option("--power-overhead", composePowerOverhead,
                           "Interposer static power overhead, W");
    composeCmd->add_option("--sdll-capacity", composeSdllCapacity,
                           "SDLLs the interposer provides");
    composeCmd->add_option("--sdll-required", composeSdllRequired,
                           "SDLLs the design needs");
    composeCmd->add_option("--residual", composeResidual,
                           "Fraction of die embodied carbon charged [0, 1]");
    composeCmd->add_option("--lifetime", composeLifetime,
                           "Service lifetime of the composed device, years");
    composeCmd->add_option("--id", composeId, "Id of the composed device");
    composeCmd->add_option("--name", composeName, "Display name");
    composeCmd->add_option("--format", composeFormat, "human|json|csv");

    std::string lcaFormat = "human";
    auto* lca = app.add_subcommand(
        "lca-reference", "Lifecycle CO2e shares of reference products");
    lca->add_option("--format", lcaFormat, "human|json|csv");

    std::string listFormat = "human";
    auto* list = app.add_subcommand("list", "Catalog devices and compositions");
    list->add_option("--format", listFormat, "human|json");

    ServiceOptions serveOptions;
    std::string corsOrigin;
    auto* serveCmd = app.add_subcommand("serve", "Run the JSON HTTP API");
    serveCmd->add_option("--port", serveOptions.port, "TCP port");
    serveCmd->add_option("--host", serveOptions.host, "Bind address");
    serveCmd->add_option("--cors-origin", corsOrigin,
                         "Origin allowed to call the API cross-origin");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try
    {
        const Catalog catalog = loadCatalog(
            catalogPath.empty() ? defaultCatalogPath()
                                : std::filesystem::path(catalogPath));

        if (*analyze)
        {
            const OutputFormat format = parseFormat(analyzeFormat, false);
            AnalysisRequest request{
                optionFromSpec(analyzeFlags.opt0, catalog),
                optionFromSpec(analyzeFlags.opt1, catalog),
                buildScenario(analyzeFlags)};
            const AnalysisOutcome outcome = runAnalysis(request);
            if (format == OutputFormat::Json)
                out << analysisToJson(outcome).dump(2) << "\n";
            else if (format == OutputFormat::Csv)
                out << analysisCsv(outcome);
            else
                out << analysisHuman(outcome);
            return outcome.result.tIndifferenceYears ? kExitOk
                                                     : kExitNoIndifference;
        }

        if (*sweepCmd)
        {
            const OutputFormat format = parseFormat(sweepFormat, false);
            const auto values = sweepValues(sweepFlags);
            const SweepResult result =
                sweep(optionFromSpec(sweepScenario.opt0, catalog),
                      optionFromSpec(sweepScenario.opt1, catalog),
                      buildScenario(sweepScenario),
                      parseParam(sweepFlags.param), values);
            if (format == OutputFormat::Json)
                out << sweepToJson(result).dump(2) << "\n";
            else if (format == OutputFormat::Csv)
                out << sweepCsv(result);
            else
                out << sweepHuman(result);
            return kExitOk;
        }

        if (*plot)
        {
            parseFormat(plotFormat, true);
            if (plotFormat != "svg")
            {
                throw ValidationError("--format", "plot only writes svg");
            }
            if (plotSamples < 2 || plotSamples > 10000)
            {
                throw ValidationError("--samples", "must be in [2, 10000]");
            }
            const OptionSource opt0 = optionFromSpec(plotScenario.opt0, catalog);
            const OptionSource opt1 = optionFromSpec(plotScenario.opt1, catalog);
            const DeploymentScenario scenario = buildScenario(plotScenario);
            std::string svg;
            if (!plotSweep.param.empty())
            {
                if (!plotSweep.from || !plotSweep.to)
                {
                    throw ValidationError("--from",
                                          "--from and --to are required "
                                          "with --param");
                }
                svg = sweepSvg(sweep(opt0, opt1, scenario,
                                     parseParam(plotSweep.param),
                                     sweepValues(plotSweep)));
            }
            else
            {
                svg = curvesSvg(runAnalysis({opt0, opt1, scenario}),
                                plotSamples);
            }
            writeFile(plotOutput, svg);
            out << "wrote " << plotOutput << "\n";
            return kExitOk;
        }

        if (*composeCmd)
        {
            const OutputFormat format = parseFormat(composeFormat, false);
            const OptionSource parsed =
                optionFromSpec(parseDieList(composeDies), catalog);
            const auto* base = std::get_if<Composition>(&parsed.source);
            if (!base)
            {
                throw ValidationError("--dies", "expected die x count terms");
            }
            InterposerSpec::Params ip;
            if (!composeInterposer.empty())
            {
                auto it = catalog.interposers.find(composeInterposer);
                if (it == catalog.interposers.end())
                {
                    throw UnknownId(composeInterposer);
                }
                ip = it->second.params();
            }
            if (composeEfficiency)
                ip.sdllEfficiency = *composeEfficiency;
            if (composeInterposerEmbodied)
                ip.embodiedKgCo2e = *composeInterposerEmbodied;
            if (composePowerOverhead)
                ip.powerOverheadW = *composePowerOverhead;
            if (composeSdllCapacity)
                ip.sdllCapacity = *composeSdllCapacity;

            Composition::Params cp = base->params();
            cp.id = composeId;
            cp.displayName = composeName;
            cp.interposer = withFieldPrefix(
                "interposer", [&] { return InterposerSpec(ip); });
            cp.residualEmbodiedFraction = composeResidual;
            cp.lifetimeYears = composeLifetime;
            cp.sdllRequired = composeSdllRequired;
            const DeviceProfile device = compose(Composition(std::move(cp)));

            if (format == OutputFormat::Json)
                out << toJson(device).dump(2) << "\n";
            else if (format == OutputFormat::Csv)
                out << deviceCsv(device);
            else
                out << deviceHuman(device);
            return kExitOk;
        }

        if (*lca)
        {
            const OutputFormat format = parseFormat(lcaFormat, false);
            if (format == OutputFormat::Json)
                out << lcaJson(catalog.lcaReference).dump(2) << "\n";
            else if (format == OutputFormat::Csv)
                out << lcaCsv(catalog.lcaReference);
            else
                out << lcaHuman(catalog.lcaReference);
            return kExitOk;
        }

        if (*list)
        {
            const OutputFormat format = parseFormat(listFormat, false);
            if (format == OutputFormat::Json)
            {
                out << catalogToJson(catalog).dump(2) << "\n";
                return kExitOk;
            }
            out << "devices:\n";
            for (const auto& [id, d] : catalog.devices)
            {
                out << "  " << id << "  " << d.displayName() << "  "
                    << humanNumber(d.unitWorkLatencyNs()) << " ns  "
                    << humanNumber(d.power().activeW()) << " W active"
                    << (catalog.synthetic.contains(id) ? "  [synthetic]" : "")
                    << "\n";
            }
            out << "compositions:\n";
            for (const auto& [id, c] : catalog.compositions)
            {
                out << "  " << id << "  " << c.params().displayName << "\n";
            }
            out << "interposers:\n";
            for (const auto& [id, i] : catalog.interposers)
            {
                out << "  " << id << "  efficiency "
                    << humanNumber(i.sdllEfficiency()) << "\n";
            }
            return kExitOk;
        }

        if (*serveCmd)
        {
            if (!corsOrigin.empty())
            {
                serveOptions.corsOrigin = corsOrigin;
            }
            return serve(catalog, serveOptions, out, err);
        }
    }
    catch (const Error& e)
    {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    catch (const std::exception& e)
    {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

} // namespace refresh
