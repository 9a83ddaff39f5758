#pragma once

#include "refresh/analysis.hpp"
#include "refresh/ingest.hpp"
#include "refresh/sweep.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace refresh
{

enum class OutputFormat
{
    Human,
    Json,
    Csv,
    Svg,
};

std::optional<OutputFormat> parseOutputFormat(std::string_view text);

/// Shortest decimal text that reads back to the same double.
std::string fullPrecision(double v);
/// Six significant digits.
std::string humanNumber(double v);

std::string analysisHuman(const AnalysisOutcome& outcome);
std::string analysisCsv(const AnalysisOutcome& outcome);

std::string sweepHuman(const SweepResult& result);
std::string sweepCsv(const SweepResult& result);

std::string deviceHuman(const DeviceProfile& device);
std::string deviceCsv(const DeviceProfile& device);

std::string lcaHuman(const std::vector<LcaBreakdown>& rows);
std::string lcaCsv(const std::vector<LcaBreakdown>& rows);
json lcaJson(const std::vector<LcaBreakdown>& rows);

/// Cumulative-carbon curves of both options with a crossover marker at t_I,
/// or a "no indifference point" note when there is none.
std::string curvesSvg(const AnalysisOutcome& outcome, int samples = 200);

/// t_I against the swept parameter; rows without a value are skipped.
std::string sweepSvg(const SweepResult& result);

} // namespace refresh
