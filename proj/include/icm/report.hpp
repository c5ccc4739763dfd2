#pragma once

#include <cstdint>
#include <string>

#include "icm/fixtures.hpp"

namespace icm {

inline constexpr int kReportSchema = 1;
inline constexpr const char* kEngineVersion = "0.1.0";

struct ReportOptions {
  std::uint64_t seed = 1;
  std::size_t samples = 5;
  int growth = 0;  // n_max for the growth route; 0 skips it
  /// Mismatches and errors on uncertified entries fail the run.
  bool strict = false;
};

struct Report {
  std::string text;
  std::string dot;  // hd only
  /// 0 when every counted verification passed, 1 otherwise.
  int exit_code = 0;
};

Report analyze_report(const FixtureFile& file, const ReportOptions& opts, const Config& cfg = default_config());
Report hd_report(const FixtureFile& file, const ReportOptions& opts, const Config& cfg = default_config());
Report br_report(const FixtureFile& file, const ReportOptions& opts, const Config& cfg = default_config());

}  // namespace icm
