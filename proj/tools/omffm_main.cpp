#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "omffm/driver.hpp"
#include "omffm/front_io.hpp"
#include "omffm/log.hpp"
#include "omffm/metrics.hpp"

namespace fs = std::filesystem;
using namespace omffm;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnknownProblem = 2;
constexpr int kExitConfigError = 3;
constexpr int kExitDataError = 4;
constexpr int kExitInternal = 5;

struct RunOptions {
  std::string problem;
  std::string config_path;
  std::string solver = "omffm";
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
};

struct BenchOptions {
  std::string campaign_path;
  int jobs = 1;
};

struct MetricsOptions {
  std::vector<std::string> fronts;
  std::string reference_path;
  std::string hv_ref;
  std::string out_path;
};

struct ProfileOptions {
  std::vector<std::string> metrics_paths;
  std::string out_dir = ".";
};

SolverConfig load_config_or_default(const std::string& path) {
  if (path.empty()) return SolverConfig{};
  return io::load_solver_config(path);
}

RunReport dispatch_run(const MopProblem& problem, const std::string& solver,
                       const SolverConfig& cfg) {
  if (solver == "omffm") return run_omffm(problem, cfg);
  if (solver == "local_only") return run_local_only(problem, cfg);
  throw std::invalid_argument("solver must be 'omffm' or 'local_only'");
}

void write_run_outputs(const fs::path& dir, const MopProblem& problem, const std::string& solver,
                       const SolverConfig& cfg, const RunReport& report) {
  io::FrontFileMeta meta{problem.name, solver, problem.n, problem.m, cfg.seed};
  io::write_front_csv(dir / "front_pf.csv", meta, report.pf);
  io::write_front_csv(dir / "front_pff.csv", meta, report.pff);
  io::write_report_json(dir / "report.json", problem.name, solver, cfg, report);
}

int cmd_run(const RunOptions& opt) {
  SolverConfig cfg = load_config_or_default(opt.config_path);
  if (opt.seed) cfg.seed = *opt.seed;
  auto problem = get_problem(opt.problem);
  cfg.resolved(problem.n);  // surfaces invalid values before the run starts
  const auto report = dispatch_run(problem, opt.solver, cfg);
  write_run_outputs(opt.out_dir, problem, opt.solver, cfg, report);
  OMFFM_LOG_INFO("%s: |PF|=%zu |PFF|=%zu evals=%lld escapes=%d (%s)", problem.name.c_str(),
                 report.pf.size(), report.pff.size(), report.evals, report.global_escapes,
                 to_string(report.termination));
  return kExitOk;
}

ObjectiveVector parse_point(const std::string& text) {
  ObjectiveVector out;
  std::string cell;
  std::stringstream ss(text);
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    out.push_back(std::stod(cell, &used));
  }
  if (out.empty()) throw std::invalid_argument("empty point literal");
  return out;
}

// Reference point rule: nadir + 10% of the payoff-table range per component.
ObjectiveVector hv_reference(const MopProblem& problem, const SolverConfig& cfg) {
  SolverConfig probe = cfg;
  probe.seed = hash_seed(cfg.seed, "hv-ref");
  auto [ideal, nadir] = estimate_ideal_nadir(problem, probe);
  ObjectiveVector ref(nadir.size());
  for (std::size_t j = 0; j < ref.size(); ++j)
    ref[j] = nadir[j] + 0.1 * std::max(nadir[j] - ideal[j], 1e-9);
  return ref;
}

double clipped_hypervolume(const std::vector<ObjectiveVector>& front,
                           const ObjectiveVector& hv_ref) {
  std::vector<ObjectiveVector> clipped;
  for (const auto& f : front) {
    bool ok = true;
    for (std::size_t j = 0; j < f.size() && ok; ++j) ok = f[j] <= hv_ref[j];
    if (ok) clipped.push_back(f);
  }
  return hypervolume(clipped, hv_ref);
}

double delta_versus_reference(const std::vector<ObjectiveVector>& front,
                              const std::vector<ObjectiveVector>& reference) {
  if (front.empty() || front.front().size() != 2 || reference.size() < 2)
    return std::numeric_limits<double>::infinity();
  auto sorted = nondominated_filter(reference);
  std::sort(sorted.begin(), sorted.end(),
            [](const ObjectiveVector& a, const ObjectiveVector& b) { return a[0] < b[0]; });
  if (sorted.size() < 2) return std::numeric_limits<double>::infinity();
  return delta_spread(front, {sorted.front(), sorted.back()});
}

// Profiles per metric over problem rows; repeats are averaged, non-finite
// values and failed cells masked out. Maximization metrics enter as
// 1 / (value + 1e-12) so every profile reads lower-is-better.
void write_profiles_from_entries(const fs::path& out_dir,
                                 const std::vector<io::MetricsEntry>& entries) {
  std::vector<std::string> solvers;
  std::vector<std::string> problems;
  for (const auto& e : entries) {
    if (std::find(solvers.begin(), solvers.end(), e.solver) == solvers.end())
      solvers.push_back(e.solver);
    if (std::find(problems.begin(), problems.end(), e.problem) == problems.end())
      problems.push_back(e.problem);
  }

  struct MetricSpec {
    const char* name;
    bool maximize;
    std::function<double(const MetricsReport&)> get;
  };
  const std::vector<MetricSpec> specs = {
      {"purity", true, [](const MetricsReport& m) { return m.purity; }},
      {"delta_spread", false, [](const MetricsReport& m) { return m.delta_spread; }},
      {"gamma_spread", false, [](const MetricsReport& m) { return m.gamma_spread; }},
      {"hypervolume", true, [](const MetricsReport& m) { return m.hypervolume; }},
      {"evals", false, [](const MetricsReport& m) { return static_cast<double>(m.evals); }},
  };

  for (const auto& spec : specs) {
    std::vector<std::vector<double>> values(problems.size(),
                                            std::vector<double>(solvers.size(), 0.0));
    std::vector<std::vector<bool>> mask(problems.size(),
                                        std::vector<bool>(solvers.size(), true));
    for (std::size_t p = 0; p < problems.size(); ++p)
      for (std::size_t s = 0; s < solvers.size(); ++s) {
        double sum = 0.0;
        int count = 0;
        for (const auto& e : entries) {
          if (e.problem != problems[p] || e.solver != solvers[s] || e.failed) continue;
          const double v = spec.get(e.metrics);
          if (!std::isfinite(v)) continue;
          sum += v;
          ++count;
        }
        if (count == 0) continue;
        double v = sum / count;
        if (spec.maximize) v = 1.0 / (v + 1e-12);
        if (v <= 0.0) v = 1e-12;  // evals can be 0 for offline fronts
        values[p][s] = v;
        mask[p][s] = false;
      }
    const auto curves = performance_profile(values, mask, solvers);
    io::write_profile_csv(out_dir / (std::string("profile_") + spec.name + ".csv"), curves);
  }
}

int cmd_bench(const BenchOptions& opt) {
  const auto spec = io::load_campaign(opt.campaign_path);
  const fs::path out = spec.output_dir.empty() ? fs::path(".") : spec.output_dir;
  fs::create_directories(out);

  struct Cell {
    std::string problem;
    int repeat;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const auto& name : spec.problems) {
    (void)get_problem(name);  // fail fast on unknown names
    for (int r = 0; r < spec.repeats; ++r)
      cells.push_back({name, r, hash_seed(spec.config.seed, name, static_cast<std::uint64_t>(r))});
  }

  std::vector<io::MetricsEntry> entries(cells.size());
  std::vector<RunReport> reports(cells.size());
  std::vector<char> failed(cells.size(), 0);

  std::atomic<std::size_t> cursor{0};
  auto worker = [&] {
    for (std::size_t i = cursor.fetch_add(1); i < cells.size(); i = cursor.fetch_add(1)) {
      const auto& cell = cells[i];
      io::MetricsEntry& e = entries[i];
      e.problem = cell.problem;
      e.solver = spec.solver;
      e.seed = cell.seed;
      e.repeat = cell.repeat;
      try {
        auto problem = get_problem(cell.problem);
        SolverConfig cfg = spec.config;
        cfg.seed = cell.seed;
        reports[i] = dispatch_run(problem, spec.solver, cfg);
        write_run_outputs(out / cell.problem / ("r" + std::to_string(cell.repeat)), problem,
                          spec.solver, cfg, reports[i]);
      } catch (const std::exception& ex) {
        failed[i] = 1;
        e.failed = true;
        e.error = ex.what();
        OMFFM_LOG_WARN("bench cell %s/r%d failed: %s", cell.problem.c_str(), cell.repeat,
                       ex.what());
      }
    }
  };
  const int jobs = std::max(1, opt.jobs);
  std::vector<std::thread> pool;
  for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  // Per-problem reference fronts (sampler when available, pooled runs
  // otherwise) and hypervolume reference points, then per-cell metrics.
  std::map<std::string, std::vector<ObjectiveVector>> references;
  std::map<std::string, ObjectiveVector> hv_refs;
  for (const auto& name : spec.problems) {
    if (references.count(name)) continue;
    auto problem = get_problem(name);
    std::vector<ObjectiveVector> ref;
    if (problem.has_front_sampler()) {
      ref = sample_true_front(problem, 500);
    } else {
      for (std::size_t i = 0; i < cells.size(); ++i)
        if (!failed[i] && cells[i].problem == name)
          for (const auto& entry : reports[i].pff.entries) ref.push_back(entry.f);
      ref = nondominated_filter(ref);
    }
    references[name] = std::move(ref);
    hv_refs[name] = hv_reference(problem, spec.config);
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (failed[i]) continue;
    io::MetricsEntry& e = entries[i];
    e.reference_point = hv_refs[cells[i].problem];
    const auto front = io::objectives_of(reports[i].pff);
    const auto& reference = references[cells[i].problem];
    e.metrics.purity = purity(front, {front, reference});
    e.metrics.gamma_spread = gamma_spread(front);
    e.metrics.delta_spread = delta_versus_reference(front, reference);
    e.metrics.hypervolume = clipped_hypervolume(front, e.reference_point);
    e.metrics.evals = reports[i].evals;
  }
  io::write_metrics_json(out / "metrics.json", entries);
  write_profiles_from_entries(out, entries);
  OMFFM_LOG_INFO("bench: %zu cells -> %s", cells.size(), out.string().c_str());
  return kExitOk;
}

int cmd_metrics(const MetricsOptions& opt) {
  std::vector<io::FrontFile> fronts;
  for (const auto& path : opt.fronts) fronts.push_back(io::read_front_csv(path));

  std::vector<std::vector<ObjectiveVector>> all;
  for (const auto& f : fronts) all.push_back(io::objectives_of(f.archive));
  std::vector<ObjectiveVector> reference;
  if (!opt.reference_path.empty()) {
    reference = io::objectives_of(io::read_front_csv(opt.reference_path).archive);
  } else {
    std::vector<ObjectiveVector> pool;
    for (const auto& f : all) pool.insert(pool.end(), f.begin(), f.end());
    reference = nondominated_filter(pool);
  }

  ObjectiveVector hv_ref;
  if (!opt.hv_ref.empty()) {
    hv_ref = parse_point(opt.hv_ref);
  } else {
    std::vector<ObjectiveVector> pool = reference;
    for (const auto& f : all) pool.insert(pool.end(), f.begin(), f.end());
    if (pool.empty()) throw std::invalid_argument("no points to derive a reference point from");
    ObjectiveVector lo = pool.front(), hi = pool.front();
    for (const auto& p : pool)
      for (std::size_t j = 0; j < p.size(); ++j) {
        lo[j] = std::min(lo[j], p[j]);
        hi[j] = std::max(hi[j], p[j]);
      }
    hv_ref.resize(hi.size());
    for (std::size_t j = 0; j < hi.size(); ++j)
      hv_ref[j] = hi[j] + 0.1 * std::max(hi[j] - lo[j], 1e-9);
  }

  std::vector<io::MetricsEntry> entries;
  for (std::size_t i = 0; i < fronts.size(); ++i) {
    io::MetricsEntry e;
    e.problem = fronts[i].meta.problem.empty() ? opt.fronts[i] : fronts[i].meta.problem;
    e.solver = fronts[i].meta.solver;
    e.seed = fronts[i].meta.seed;
    e.reference_point = hv_ref;
    if (!opt.reference_path.empty())
      e.metrics.purity = purity(all[i], {all[i], reference});
    else
      e.metrics.purity = purity(all[i], all);
    e.metrics.gamma_spread = gamma_spread(all[i]);
    e.metrics.delta_spread = delta_versus_reference(all[i], reference);
    e.metrics.hypervolume = clipped_hypervolume(all[i], hv_ref);
    e.metrics.evals = 0;  // unknown for offline fronts
    entries.push_back(std::move(e));
  }

  if (!opt.out_path.empty()) io::write_metrics_json(opt.out_path, entries);
  for (const auto& e : entries)
    std::printf("%s: purity=%.6g delta=%.6g gamma=%.6g hypervolume=%.17g\n", e.problem.c_str(),
                e.metrics.purity, e.metrics.delta_spread, e.metrics.gamma_spread,
                e.metrics.hypervolume);
  return kExitOk;
}

int cmd_profile(const ProfileOptions& opt) {
  std::vector<io::MetricsEntry> entries;
  for (const auto& path : opt.metrics_paths) {
    auto part = io::read_metrics_json(path);
    entries.insert(entries.end(), part.begin(), part.end());
  }
  if (entries.empty()) throw std::invalid_argument("no metrics entries loaded");
  fs::create_directories(opt.out_dir);
  write_profiles_from_entries(opt.out_dir, entries);
  return kExitOk;
}

int cmd_list_problems() {
  for (const auto& name : problem_names()) {
    auto p = get_problem(name);
    std::printf("%-10s m=%d n=%-4d box=[%g, %g]^n%s%s\n", name.c_str(), p.m, p.n, p.box.lower[0],
                p.box.upper[0], p.has_jacobian() ? " jacobian" : "",
                p.has_front_sampler() ? " front-sampler" : "");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-parameter multi-objective filled function solver and benchmark tools"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Solve one problem and write fronts plus a report");
  run->add_option("--problem", run_opt.problem, "registered problem name")->required();
  run->add_option("--config", run_opt.config_path, "solver config JSON");
  run->add_option("--solver", run_opt.solver, "omffm | local_only");
  run->add_option("--seed", run_opt.seed, "override the config seed");
  run->add_option("--out", run_opt.out_dir, "output directory");

  BenchOptions bench_opt;
  auto* bench = app.add_subcommand("bench", "Run a benchmark campaign");
  bench->add_option("--campaign", bench_opt.campaign_path, "campaign JSON")->required();
  bench->add_option("--jobs", bench_opt.jobs, "worker threads");

  MetricsOptions metrics_opt;
  auto* metrics = app.add_subcommand("metrics", "Compute front-quality metrics for CSV fronts");
  metrics->add_option("--front", metrics_opt.fronts, "front CSV (repeatable)")->required();
  metrics->add_option("--reference", metrics_opt.reference_path, "reference front CSV");
  metrics->add_option("--hv-ref", metrics_opt.hv_ref, "hypervolume reference point, e.g. 2,2");
  metrics->add_option("--out", metrics_opt.out_path, "write metrics JSON here");

  ProfileOptions profile_opt;
  auto* profile = app.add_subcommand("profile", "Build performance profiles from metrics JSON");
  profile->add_option("--metrics", profile_opt.metrics_paths, "metrics JSON (repeatable)")
      ->required();
  profile->add_option("--out", profile_opt.out_dir, "output directory");

  auto* list = app.add_subcommand("list-problems", "List the registered problems");

  try {
    app.parse(argc, argv);
    if (run->parsed()) return cmd_run(run_opt);
    if (bench->parsed()) return cmd_bench(bench_opt);
    if (metrics->parsed()) return cmd_metrics(metrics_opt);
    if (profile->parsed()) return cmd_profile(profile_opt);
    if (list->parsed()) return cmd_list_problems();
    return kExitInternal;
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const UnknownProblemError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUnknownProblem;
  } catch (const io::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDataError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kExitInternal;
  }
}
