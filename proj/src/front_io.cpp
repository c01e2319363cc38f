#include "omffm/front_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace omffm::io {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string read_all(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ordered_json archive_to_json(const ParetoArchive& a) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : a.entries) {
    ordered_json rec;
    rec["x"] = e.x;
    rec["f"] = e.f;
    arr.push_back(std::move(rec));
  }
  return arr;
}

ParetoArchive archive_from_json(const ordered_json& arr, bool filtered) {
  ParetoArchive a;
  a.filtered = filtered;
  for (const auto& rec : arr)
    a.entries.push_back({rec.at("x").get<DecisionVector>(), rec.at("f").get<ObjectiveVector>()});
  return a;
}

ordered_json config_to_json(const SolverConfig& c) {
  ordered_json j;
  j["N"] = c.N;
  j["mu_ini"] = c.mu_ini;
  j["mu_hat"] = c.mu_hat;
  j["epsilon"] = c.epsilon;
  j["kappa"] = c.kappa;
  j["beta_U"] = c.beta_U;
  j["l"] = c.l;
  j["max_global_rounds"] = c.max_global_rounds;
  j["max_local_iters"] = c.max_local_iters;
  j["eval_budget"] = c.eval_budget;
  j["seed"] = c.seed;
  j["trial_count_factor"] = c.trial_count_factor;
  return j;
}

SolverConfig config_from_json(const ordered_json& j) {
  SolverConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "N") c.N = value.get<int>();
    else if (key == "mu_ini") c.mu_ini = value.get<double>();
    else if (key == "mu_hat") c.mu_hat = value.get<double>();
    else if (key == "epsilon") c.epsilon = value.get<double>();
    else if (key == "kappa") c.kappa = value.get<double>();
    else if (key == "beta_U") c.beta_U = value.get<double>();
    else if (key == "l") c.l = value.get<int>();
    else if (key == "max_global_rounds") c.max_global_rounds = value.get<int>();
    else if (key == "max_local_iters") c.max_local_iters = value.get<int>();
    else if (key == "eval_budget") c.eval_budget = value.get<long long>();
    else if (key == "seed") c.seed = value.get<std::uint64_t>();
    else if (key == "trial_count_factor") c.trial_count_factor = value.get<int>();
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }
  return c;
}

// "inf" string for non-finite metric values, plain numbers otherwise.
ordered_json metric_value(double v) {
  if (std::isfinite(v)) return v;
  return "inf";
}

double metric_from(const ordered_json& v) {
  if (v.is_string()) return std::numeric_limits<double>::infinity();
  return v.get<double>();
}

}  // namespace

void atomic_write(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

std::vector<ObjectiveVector> objectives_of(const ParetoArchive& archive) {
  std::vector<ObjectiveVector> out;
  out.reserve(archive.size());
  for (const auto& e : archive.entries) out.push_back(e.f);
  return out;
}

void write_front_csv(const std::filesystem::path& path, const FrontFileMeta& meta,
                     const ParetoArchive& archive) {
  std::ostringstream out;
  out << "# problem: " << meta.problem << '\n';
  out << "# n: " << meta.n << '\n';
  out << "# m: " << meta.m << '\n';
  out << "# solver: " << meta.solver << '\n';
  out << "# seed: " << meta.seed << '\n';
  out << "# columns: ";
  for (int i = 0; i < meta.n; ++i) out << 'x' << (i + 1) << ',';
  for (int j = 0; j < meta.m; ++j) out << 'f' << (j + 1) << (j + 1 < meta.m ? "," : "");
  out << '\n';
  for (const auto& e : archive.entries) {
    for (std::size_t i = 0; i < e.x.size(); ++i) out << fmt_double(e.x[i]) << ',';
    for (std::size_t j = 0; j < e.f.size(); ++j)
      out << fmt_double(e.f[j]) << (j + 1 < e.f.size() ? "," : "");
    out << '\n';
  }
  atomic_write(path, out.str());
}

FrontFile read_front_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  FrontFile file;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string key = line.substr(1, colon - 1);
      std::string value = line.substr(colon + 1);
      auto trim = [](std::string& s) {
        s.erase(0, s.find_first_not_of(" \t"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
      };
      trim(key);
      trim(value);
      try {
        if (key == "problem") file.meta.problem = value;
        else if (key == "solver") file.meta.solver = value;
        else if (key == "n") file.meta.n = std::stoi(value);
        else if (key == "m") file.meta.m = std::stoi(value);
        else if (key == "seed") file.meta.seed = std::stoull(value);
      } catch (const std::exception&) {
        throw ParseError("bad header value in " + path.string() + " line " +
                             std::to_string(line_no),
                         line_no);
      }
      continue;
    }
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() && (cell[used] == ' ' || cell[used] == '\r')) ++used;
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw ParseError("non-numeric cell in " + path.string() + " line " +
                             std::to_string(line_no),
                         line_no);
      }
    }
    int n = file.meta.n, m = file.meta.m;
    if (n == 0 && m == 0) {
      // Headerless front: treat every column as an objective.
      m = static_cast<int>(row.size());
    }
    if (static_cast<int>(row.size()) != n + m)
      throw ParseError("row width mismatch in " + path.string() + " line " +
                           std::to_string(line_no),
                       line_no);
    DecisionVector x(row.begin(), row.begin() + n);
    ObjectiveVector f(row.begin() + n, row.end());
    file.archive.entries.push_back({std::move(x), std::move(f)});
  }
  return file;
}

void write_report_json(const std::filesystem::path& path, const std::string& problem,
                       const std::string& solver, const SolverConfig& cfg,
                       const RunReport& report) {
  ordered_json j;
  j["problem"] = problem;
  j["solver"] = solver;
  j["config"] = config_to_json(cfg);
  j["evals"] = report.evals;
  j["local_calls"] = report.local_calls;
  j["global_escapes"] = report.global_escapes;
  j["termination"] = to_string(report.termination);
  j["max_outer_rounds"] = report.max_outer_rounds;
  j["spacing_warning"] = report.spacing_warning;
  j["wpf"] = archive_to_json(report.wpf);
  j["wpff"] = archive_to_json(report.wpff);
  j["pf"] = archive_to_json(report.pf);
  j["pff"] = archive_to_json(report.pff);
  ordered_json trajs = ordered_json::array();
  for (const auto& t : report.anchor_trajectories) trajs.push_back(t);
  j["anchor_trajectories"] = std::move(trajs);
  j["wall_time_sec"] = report.wall_time_sec;
  atomic_write(path, j.dump(2) + "\n");
}

ReportFile read_report_json(const std::filesystem::path& path) {
  const auto j = ordered_json::parse(read_all(path));
  ReportFile r;
  r.problem = j.at("problem").get<std::string>();
  r.solver = j.at("solver").get<std::string>();
  r.evals = j.at("evals").get<long long>();
  r.local_calls = j.at("local_calls").get<int>();
  r.global_escapes = j.at("global_escapes").get<int>();
  r.termination = j.at("termination").get<std::string>();
  r.wpf = archive_from_json(j.at("wpf"), false);
  r.wpff = archive_from_json(j.at("wpff"), false);
  r.pf = archive_from_json(j.at("pf"), true);
  r.pff = archive_from_json(j.at("pff"), true);
  return r;
}

SolverConfig parse_solver_config(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  return config_from_json(j);
}

SolverConfig load_solver_config(const std::filesystem::path& path) {
  return parse_solver_config(read_all(path));
}

CampaignSpec parse_campaign(const std::string& json_text) {
  ordered_json j;
  try {
    j = ordered_json::parse(json_text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("campaign is not valid JSON: ") + e.what());
  }
  CampaignSpec spec;
  for (const auto& [key, value] : j.items()) {
    if (key == "problems") spec.problems = value.get<std::vector<std::string>>();
    else if (key == "solver") spec.solver = value.get<std::string>();
    else if (key == "config") spec.config = config_from_json(value);
    else if (key == "repeats") spec.repeats = value.get<int>();
    else if (key == "output_dir") spec.output_dir = value.get<std::string>();
    else throw std::invalid_argument("unknown campaign key '" + key + "'");
  }
  if (spec.problems.empty()) throw std::invalid_argument("campaign lists no problems");
  if (spec.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  if (spec.solver != "omffm" && spec.solver != "local_only")
    throw std::invalid_argument("solver must be 'omffm' or 'local_only'");
  return spec;
}

CampaignSpec load_campaign(const std::filesystem::path& path) {
  return parse_campaign(read_all(path));
}

void write_metrics_json(const std::filesystem::path& path,
                        const std::vector<MetricsEntry>& entries) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : entries) {
    ordered_json rec;
    rec["problem"] = e.problem;
    rec["solver"] = e.solver;
    rec["seed"] = e.seed;
    rec["repeat"] = e.repeat;
    rec["reference_point"] = e.reference_point;
    if (e.failed) {
      rec["failed"] = true;
      rec["error"] = e.error;
    } else {
      ordered_json m;
      m["purity"] = metric_value(e.metrics.purity);
      m["delta_spread"] = metric_value(e.metrics.delta_spread);
      m["gamma_spread"] = metric_value(e.metrics.gamma_spread);
      m["hypervolume"] = metric_value(e.metrics.hypervolume);
      m["evals"] = e.metrics.evals;
      rec["metrics"] = std::move(m);
    }
    arr.push_back(std::move(rec));
  }
  atomic_write(path, arr.dump(2) + "\n");
}

std::vector<MetricsEntry> read_metrics_json(const std::filesystem::path& path) {
  const auto arr = ordered_json::parse(read_all(path));
  std::vector<MetricsEntry> out;
  for (const auto& rec : arr) {
    MetricsEntry e;
    e.problem = rec.at("problem").get<std::string>();
    e.solver = rec.at("solver").get<std::string>();
    e.seed = rec.value("seed", std::uint64_t{0});
    e.repeat = rec.value("repeat", 0);
    if (rec.contains("reference_point"))
      e.reference_point = rec.at("reference_point").get<ObjectiveVector>();
    e.failed = rec.value("failed", false);
    if (!e.failed && rec.contains("metrics")) {
      const auto& m = rec.at("metrics");
      e.metrics.purity = metric_from(m.at("purity"));
      e.metrics.delta_spread = metric_from(m.at("delta_spread"));
      e.metrics.gamma_spread = metric_from(m.at("gamma_spread"));
      e.metrics.hypervolume = metric_from(m.at("hypervolume"));
      e.metrics.evals = m.at("evals").get<long long>();
    }
    out.push_back(std::move(e));
  }
  return out;
}

void write_profile_csv(const std::filesystem::path& path,
                       const std::vector<ProfileCurve>& curves) {
  std::ostringstream out;
  out << "tau";
  for (const auto& c : curves) out << ',' << c.solver;
  out << '\n';
  if (!curves.empty()) {
    for (std::size_t i = 0; i < curves.front().taus.size(); ++i) {
      out << fmt_double(curves.front().taus[i]);
      for (const auto& c : curves) out << ',' << fmt_double(c.rhos[i]);
      out << '\n';
    }
  }
  atomic_write(path, out.str());
}

}  // namespace omffm::io
