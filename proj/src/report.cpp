#include "refresh/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace refresh
{

std::optional<OutputFormat> parseOutputFormat(std::string_view text)
{
    if (text == "human")
        return OutputFormat::Human;
    if (text == "json")
        return OutputFormat::Json;
    if (text == "csv")
        return OutputFormat::Csv;
    if (text == "svg")
        return OutputFormat::Svg;
    return std::nullopt;
}

std::string fullPrecision(double v)
{
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

std::string humanNumber(double v)
{
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

namespace
{

std::string humanOptional(const std::optional<double>& v)
{
    return v ? humanNumber(*v) : std::string("none");
}

std::string csvOptional(const std::optional<double>& v)
{
    return v ? fullPrecision(*v) : std::string();
}

std::string csvQuote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
    {
        return s;
    }
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

std::string xmlEscape(const std::string& s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string analysisHuman(const AnalysisOutcome& outcome)
{
    const auto& r = outcome.result;
    const auto& s = outcome.scenario;
    std::ostringstream os;
    os << "option 0: " << outcome.option0.label << " ("
       << outcome.option0.device.displayName() << ")\n"
       << "option 1: " << outcome.option1.label << " ("
       << outcome.option1.device.displayName() << ")\n"
       << "grid: " << humanNumber(effectiveIntensity(s.grid()))
       << " gCO2e/kWh effective (renewables "
       << humanNumber(s.grid().renewableFraction() * 100.0) << "%)\n";
    for (const auto* o : {&outcome.option0, &outcome.option1})
    {
        const auto& d = o->effectiveDuty(s);
        os << "duty " << o->label << ": r_sleep " << humanNumber(d.rSleep())
           << ", r_active " << humanNumber(d.rActive())
           << (o->dutyOverride ? " (equal-work adjusted)" : "") << "\n";
    }
    os << "O0: " << humanNumber(r.o0KgPerYear) << " kgCO2e/yr  E0: "
       << humanNumber(r.e0Kg) << " kgCO2e  rate0: "
       << humanNumber(r.rate0KgPerYear) << " kgCO2e/yr\n"
       << "O1: " << humanNumber(r.o1KgPerYear) << " kgCO2e/yr  E1: "
       << humanNumber(r.e1Kg) << " kgCO2e  rate1: "
       << humanNumber(r.rate1KgPerYear) << " kgCO2e/yr\n"
       << "indifference time: " << humanOptional(r.tIndifferenceYears)
       << (r.tIndifferenceYears ? " years" : "") << "\n"
       << "break-even time:   " << humanOptional(r.tBreakevenYears)
       << (r.tBreakevenYears ? " years" : "") << "\n";
    for (const auto& d : r.diagnostics)
    {
        os << "note: " << d << "\n";
    }
    return os.str();
}

std::string analysisCsv(const AnalysisOutcome& outcome)
{
    const auto& r = outcome.result;
    std::ostringstream os;
    os << "t_indifference_years,t_breakeven_years,rate0_kg_per_year,"
          "rate1_kg_per_year,o0_kg_per_year,o1_kg_per_year,e0_kg,e1_kg\n"
       << csvOptional(r.tIndifferenceYears) << ','
       << csvOptional(r.tBreakevenYears) << ','
       << fullPrecision(r.rate0KgPerYear) << ','
       << fullPrecision(r.rate1KgPerYear) << ','
       << fullPrecision(r.o0KgPerYear) << ',' << fullPrecision(r.o1KgPerYear)
       << ',' << fullPrecision(r.e0Kg) << ',' << fullPrecision(r.e1Kg) << '\n';
    return os.str();
}

std::string sweepHuman(const SweepResult& result)
{
    std::ostringstream os;
    os << std::left << std::setw(20) << result.parameterName << std::setw(16)
       << "t_I (years)" << std::setw(16) << "t_B (years)" << "error\n";
    for (const auto& row : result.rows)
    {
        os << std::setw(20) << humanNumber(row.parameterValue) << std::setw(16)
           << humanOptional(row.tIndifferenceYears) << std::setw(16)
           << humanOptional(row.tBreakevenYears)
           << (row.error ? row.error->message : std::string()) << "\n";
    }
    return os.str();
}

std::string sweepCsv(const SweepResult& result)
{
    std::ostringstream os;
    os << "parameter_value,t_indifference_years,t_breakeven_years,error\n";
    for (const auto& row : result.rows)
    {
        os << fullPrecision(row.parameterValue) << ','
           << csvOptional(row.tIndifferenceYears) << ','
           << csvOptional(row.tBreakevenYears) << ','
           << (row.error ? csvQuote(row.error->code) : std::string()) << '\n';
    }
    return os.str();
}

std::string deviceHuman(const DeviceProfile& d)
{
    std::ostringstream os;
    os << "id: " << d.id() << "\n"
       << "name: " << d.displayName() << "\n"
       << "tech node: " << humanNumber(d.techNodeNm()) << " nm\n"
       << "latency: " << humanNumber(d.unitWorkLatencyNs()) << " ns\n"
       << "parallel units: " << d.parallelUnits() << "\n"
       << "dynamic power: " << humanNumber(d.power().dynamicW()) << " W\n"
       << "static power: " << humanNumber(d.power().staticW()) << " W\n"
       << "sleep power: " << humanNumber(d.power().sleepW()) << " W\n"
       << "embodied: " << humanNumber(d.embodiedKgCo2e()) << " kgCO2e\n"
       << "lifetime: " << humanNumber(d.lifetimeYears()) << " years\n";
    return os.str();
}

std::string deviceCsv(const DeviceProfile& d)
{
    std::ostringstream os;
    os << "id,display_name,tech_node_nm,unit_work_latency_ns,parallel_units,"
          "p_dynamic_w,p_static_w,p_sleep_w,embodied_kgco2e,lifetime_years\n"
       << csvQuote(d.id()) << ',' << csvQuote(d.displayName()) << ','
       << fullPrecision(d.techNodeNm()) << ','
       << fullPrecision(d.unitWorkLatencyNs()) << ',' << d.parallelUnits()
       << ',' << fullPrecision(d.power().dynamicW()) << ','
       << fullPrecision(d.power().staticW()) << ','
       << fullPrecision(d.power().sleepW()) << ','
       << fullPrecision(d.embodiedKgCo2e()) << ','
       << fullPrecision(d.lifetimeYears()) << '\n';
    return os.str();
}

std::string lcaHuman(const std::vector<LcaBreakdown>& rows)
{
    std::ostringstream os;
    for (const auto& r : rows)
    {
        os << r.product() << ", " << humanNumber(r.manufacturingPct()) << ", "
           << humanNumber(r.operationalPct()) << ", "
           << humanNumber(r.supplyChainPct()) << ", "
           << humanNumber(r.disposalPct()) << "\n";
    }
    return os.str();
}

std::string lcaCsv(const std::vector<LcaBreakdown>& rows)
{
    std::ostringstream os;
    os << "product,manufacturing_pct,operational_pct,supply_chain_pct,"
          "disposal_pct\n";
    for (const auto& r : rows)
    {
        os << csvQuote(r.product()) << ',' << fullPrecision(r.manufacturingPct())
           << ',' << fullPrecision(r.operationalPct()) << ','
           << fullPrecision(r.supplyChainPct()) << ','
           << fullPrecision(r.disposalPct()) << '\n';
    }
    return os.str();
}

json lcaJson(const std::vector<LcaBreakdown>& rows)
{
    json out = json::array();
    for (const auto& r : rows)
    {
        out.push_back({{"product", r.product()},
                       {"manufacturing_pct", r.manufacturingPct()},
                       {"operational_pct", r.operationalPct()},
                       {"supply_chain_pct", r.supplyChainPct()},
                       {"disposal_pct", r.disposalPct()}});
    }
    return out;
}

namespace
{

constexpr double kWidth = 800;
constexpr double kHeight = 500;
constexpr double kLeft = 90;
constexpr double kRight = 30;
constexpr double kTop = 40;
constexpr double kBottom = 70;

struct Frame
{
    double xMax;
    double yMin;
    double yMax;
    double xMin = 0.0;

    double x(double v) const
    {
        return kLeft + (v - xMin) / (xMax - xMin) * (kWidth - kLeft - kRight);
    }
    double y(double v) const
    {
        return kHeight - kBottom -
               (v - yMin) / (yMax - yMin) * (kHeight - kTop - kBottom);
    }
};

std::string coord(double v)
{
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << v;
    return os.str();
}

void axes(std::ostringstream& os, const Frame& f, const std::string& title,
          const std::string& xLabel, const std::string& yLabel)
{
    const double x0 = kLeft;
    const double x1 = kWidth - kRight;
    const double y0 = kHeight - kBottom;
    const double y1 = kTop;
    os << "<text x=\"" << coord(kWidth / 2) << "\" y=\"24\" "
       << "text-anchor=\"middle\" font-size=\"16\">" << xmlEscape(title)
       << "</text>\n"
       << "<line class=\"axis\" x1=\"" << coord(x0) << "\" y1=\"" << coord(y0)
       << "\" x2=\"" << coord(x1) << "\" y2=\"" << coord(y0)
       << "\" stroke=\"black\"/>\n"
       << "<line class=\"axis\" x1=\"" << coord(x0) << "\" y1=\"" << coord(y0)
       << "\" x2=\"" << coord(x0) << "\" y2=\"" << coord(y1)
       << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i)
    {
        const double xv = f.xMin + (f.xMax - f.xMin) * i / 5.0;
        const double yv = f.yMin + (f.yMax - f.yMin) * i / 5.0;
        os << "<text x=\"" << coord(f.x(xv)) << "\" y=\"" << coord(y0 + 18)
           << "\" text-anchor=\"middle\" font-size=\"11\">" << humanNumber(xv)
           << "</text>\n"
           << "<text x=\"" << coord(x0 - 6) << "\" y=\"" << coord(f.y(yv) + 4)
           << "\" text-anchor=\"end\" font-size=\"11\">" << humanNumber(yv)
           << "</text>\n";
    }
    os << "<text x=\"" << coord((x0 + x1) / 2) << "\" y=\""
       << coord(kHeight - 24) << "\" text-anchor=\"middle\" font-size=\"13\">"
       << xmlEscape(xLabel) << "</text>\n"
       << "<text x=\"20\" y=\"" << coord((y0 + y1) / 2)
       << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
       << coord((y0 + y1) / 2) << ")\">" << xmlEscape(yLabel) << "</text>\n";
}

std::string header()
{
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
       << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
       << kHeight << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    return os.str();
}

} // namespace

std::string curvesSvg(const AnalysisOutcome& outcome, int samples)
{
    const auto& r = outcome.result;
    double end = outcome.scenario.horizonYears();
    if (r.tIndifferenceYears && *r.tIndifferenceYears * 1.25 > end)
    {
        end = *r.tIndifferenceYears * 1.25;
    }
    const CarbonCurve c0 =
        carbonCurve(outcome.option0, outcome.scenario, end, samples, true);
    const CarbonCurve c1 =
        carbonCurve(outcome.option1, outcome.scenario, end, samples, true);

    double yMax = 0.0;
    for (const auto* c : {&c0, &c1})
    {
        for (const auto& [t, kg] : c->samples)
        {
            yMax = std::max(yMax, kg);
        }
    }
    Frame f{end, 0.0, yMax > 0.0 ? yMax * 1.05 : 1.0};

    std::ostringstream os;
    os << header();
    axes(os, f,
         "Cumulative carbon: " + outcome.option0.label + " vs " +
             outcome.option1.label,
         "Time in service (years)", "Cumulative carbon (kgCO2e)");

    const char* colors[] = {"#1f77b4", "#d62728"};
    int index = 0;
    for (const auto* c : {&c0, &c1})
    {
        os << "<polyline class=\"curve\" data-option=\""
           << xmlEscape(c->optionLabel) << "\" fill=\"none\" stroke=\""
           << colors[index] << "\" stroke-width=\"2\" points=\"";
        for (std::size_t i = 0; i < c->samples.size(); ++i)
        {
            os << (i ? " " : "") << coord(f.x(c->samples[i].first)) << ','
               << coord(f.y(c->samples[i].second));
        }
        os << "\"/>\n";
        os << "<text x=\"" << coord(kLeft + 12) << "\" y=\""
           << coord(kTop + 16 + 16 * index) << "\" font-size=\"12\" fill=\""
           << colors[index] << "\">" << xmlEscape(c->optionLabel)
           << "</text>\n";
        ++index;
    }

    if (r.tIndifferenceYears)
    {
        const double t = *r.tIndifferenceYears;
        const double kg = cumulativeCarbon(outcome.option0, outcome.scenario, t,
                                           true);
        os << "<circle class=\"crossover\" cx=\"" << coord(f.x(t))
           << "\" cy=\"" << coord(f.y(kg))
           << "\" r=\"5\" fill=\"black\"/>\n"
           << "<text x=\"" << coord(f.x(t) + 8) << "\" y=\""
           << coord(f.y(kg) - 8) << "\" font-size=\"12\">t_I = "
           << humanNumber(t) << " y";
        if (r.tBreakevenYears)
        {
            os << ", t_B = " << humanNumber(*r.tBreakevenYears) << " y";
        }
        os << "</text>\n";
    }
    else
    {
        os << "<text class=\"annotation\" x=\"" << coord(kWidth / 2)
           << "\" y=\"" << coord(kTop + 40)
           << "\" text-anchor=\"middle\" font-size=\"14\">"
              "no indifference point</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string sweepSvg(const SweepResult& result)
{
    std::vector<std::pair<double, double>> points;
    for (const auto& row : result.rows)
    {
        if (row.tIndifferenceYears)
        {
            points.emplace_back(row.parameterValue, *row.tIndifferenceYears);
        }
    }

    double xMin = 0.0, xMax = 1.0, yMax = 1.0;
    if (!result.rows.empty())
    {
        xMin = result.rows.front().parameterValue;
        xMax = result.rows.back().parameterValue;
        if (xMax <= xMin)
        {
            xMin -= 0.5;
            xMax += 0.5;
        }
    }
    for (const auto& p : points)
    {
        yMax = std::max(yMax, p.second * 1.05);
    }
    Frame f{xMax, 0.0, yMax, xMin};

    std::ostringstream os;
    os << header();
    axes(os, f, "Indifference time vs " + result.parameterName,
         result.parameterName, "Indifference time (years)");
    os << "<polyline class=\"sweep\" fill=\"none\" stroke=\"#1f77b4\" "
          "stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        os << (i ? " " : "") << coord(f.x(points[i].first)) << ','
           << coord(f.y(points[i].second));
    }
    os << "\"/>\n";
    const auto missing = result.rows.size() - points.size();
    if (missing > 0)
    {
        os << "<text class=\"annotation\" x=\"" << coord(kWidth / 2)
           << "\" y=\"" << coord(kTop + 20)
           << "\" text-anchor=\"middle\" font-size=\"12\">" << missing
           << " point(s) without an indifference time</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace refresh
