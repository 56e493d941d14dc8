#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "conemorse/geodesics.hpp"
#include "conemorse/morse.hpp"
#include "conemorse/pipeline.hpp"
#include "conemorse/scenario.hpp"

namespace conemorse {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolVersion = "conemorse 0.1.0";

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// One header row, one tab-separated row per geodesic.
std::string geodesic_table(const GeodesicSet& set);

/// Same content aligned for a terminal.
std::string geodesic_table_pretty(const GeodesicSet& set);

std::string geodesics_report(const Scenario& s, const GeodesicSet& set);

std::string flow_report(const Scenario& s, const GeodesicSet& set, const FlowSummary& flows);

/// Tab-separated, one row per flowed sample.
std::string flow_table(const FlowSummary& flows);

std::string morse_report(const Scenario& s, const SampledComplex& complex,
                         const MorseReport& report);

/// Short human summary of a MorseReport.
std::string morse_summary(const SampledComplex& complex, const MorseReport& report,
                          double merge_window);

/// The developed sector with each classical chord and the broken line.
std::string develop_svg(const Scenario& s, const GeodesicSet& set);

/// Creates parent directories; throws IoError.
void write_text(const std::filesystem::path& path, const std::string& content);

}  // namespace conemorse
