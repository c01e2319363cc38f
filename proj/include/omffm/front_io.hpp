#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "omffm/driver.hpp"
#include "omffm/metrics.hpp"

namespace omffm::io {

// Malformed input data; line is 1-based within the offending file.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, int line) : std::runtime_error(msg), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

struct FrontFileMeta {
  std::string problem;
  std::string solver;
  int n = 0;
  int m = 0;
  std::uint64_t seed = 0;
};

struct FrontFile {
  FrontFileMeta meta;
  ParetoArchive archive;
};

// Front CSV: '#' comment header (problem, n, m, solver, seed, columns), then
// one row per point with n decision coordinates followed by m objective
// values at 17 significant digits.
void write_front_csv(const std::filesystem::path& path, const FrontFileMeta& meta,
                     const ParetoArchive& archive);
FrontFile read_front_csv(const std::filesystem::path& path);

void write_report_json(const std::filesystem::path& path, const std::string& problem,
                       const std::string& solver, const SolverConfig& cfg, const RunReport& report);
// Parses enough of a report to recheck its invariants and recompute fronts.
struct ReportFile {
  std::string problem;
  std::string solver;
  ParetoArchive wpf, wpff, pf, pff;
  long long evals = 0;
  int local_calls = 0;
  int global_escapes = 0;
  std::string termination;
};
ReportFile read_report_json(const std::filesystem::path& path);

// Flat JSON mirroring SolverConfig field names; unknown keys are rejected.
SolverConfig parse_solver_config(const std::string& json_text);
SolverConfig load_solver_config(const std::filesystem::path& path);

struct CampaignSpec {
  std::vector<std::string> problems;
  std::string solver = "omffm";  // omffm | local_only
  SolverConfig config;
  int repeats = 1;
  std::filesystem::path output_dir;
};
CampaignSpec parse_campaign(const std::string& json_text);
CampaignSpec load_campaign(const std::filesystem::path& path);

struct MetricsEntry {
  std::string problem;
  std::string solver;
  std::uint64_t seed = 0;
  int repeat = 0;
  ObjectiveVector reference_point;
  MetricsReport metrics;
  bool failed = false;
  std::string error;
};
void write_metrics_json(const std::filesystem::path& path,
                        const std::vector<MetricsEntry>& entries);
std::vector<MetricsEntry> read_metrics_json(const std::filesystem::path& path);

// Profile CSV: header "tau,<solver1>,..."; one row per breakpoint.
void write_profile_csv(const std::filesystem::path& path,
                       const std::vector<ProfileCurve>& curves);

// Writes through a temp file in the same directory, then renames.
void atomic_write(const std::filesystem::path& path, const std::string& content);

std::vector<ObjectiveVector> objectives_of(const ParetoArchive& archive);

}  // namespace omffm::io
