#include "curveopt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "curveopt/errors.hpp"

namespace curveopt {

std::string format_real(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw IoError("format_real: conversion failed");
  return std::string(buf, ptr);
}

std::string config_hash(const RunConfig& cfg) {
  std::ostringstream canon;
  canon << "alpha=" << format_real(cfg.params.alpha)
        << ";beta=" << format_real(cfg.params.beta)
        << ";gf=" << format_real(cfg.params.g_f)
        << ";delta0=" << format_real(cfg.search.delta0)
        << ";sigma=" << format_real(cfg.search.sigma)
        << ";delta=" << format_real(cfg.search.delta)
        << ";memory=" << cfg.search.memory
        << ";max_backtracks=" << cfg.search.max_backtracks
        << ";eps=" << format_real(cfg.eps) << ";max_iters=" << cfg.max_iters
        << ";time_limit=" << format_real(cfg.time_limit)
        << ";max_halvings=" << cfg.max_halvings;
  // FNV-1a, 64 bit.
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : canon.str()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<BenchmarkRecord> run_grid(const std::vector<std::string>& problems,
                                      const std::vector<std::string>& solvers,
                                      const RunConfig& cfg, int parallelism,
                                      std::uint64_t seed) {
  if (problems.empty()) throw ConfigError("run_grid: empty problem list");
  if (solvers.empty()) throw ConfigError("run_grid: empty solver list");
  if (parallelism < 1) throw ConfigError("run_grid: parallelism must be >= 1");
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }

  std::vector<Problem> built;
  built.reserve(problems.size());
  for (const auto& key : problems) built.push_back(make_problem(key, seed));
  std::vector<SolverKind> kinds;
  kinds.reserve(solvers.size());
  for (const auto& tag : solvers) kinds.push_back(parse_solver_kind(tag));

  RunConfig run_cfg = cfg;
  run_cfg.trace = TraceMode::Off;
  const std::string hash = config_hash(run_cfg);

  const std::size_t total = built.size() * kinds.size();
  std::vector<BenchmarkRecord> records(total);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t job = next++; job < total; job = next++) {
      const Problem& problem = built[job / kinds.size()];
      const SolverKind kind = kinds[job % kinds.size()];
      try {
        const SolverReport rep = solve(problem, kind, run_cfg, problem.x0());
        BenchmarkRecord& r = records[job];
        r.problem = problem.name();
        r.dim = problem.dim();
        r.solver = std::string(to_string(kind));
        r.status = std::string(to_string(rep.status));
        r.iters = rep.iters;
        r.f_evals = rep.f_evals;
        r.g_evals = rep.g_evals;
        r.f_star = rep.f_final;
        r.grad_inf = rep.grad_inf_final;
        // Microsecond resolution; never zero so time ratios stay finite.
        r.time_s = std::max(1.0, std::round(rep.wall_time * 1e6)) * 1e-6;
        r.config_hash = hash;
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const int workers = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(parallelism), total));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return records;
}

// Records CSV.

void write_records(const std::vector<BenchmarkRecord>& records, std::ostream& out) {
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    out << r.problem << ',' << r.dim << ',' << r.solver << ',' << r.status << ','
        << r.iters << ',' << r.f_evals << ',' << r.g_evals << ','
        << format_real(r.f_star) << ',' << format_real(r.grad_inf) << ','
        << format_real(r.time_s) << ',' << r.config_hash << '\n';
  }
  if (!out) throw IoError("write_records: stream error");
}

void write_records(const std::vector<BenchmarkRecord>& records,
                   const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_records(records, out);
}

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) return out;
    start = pos + 1;
  }
}

template <typename T>
T parse_field(std::string_view text, std::string_view name, std::size_t line) {
  T v{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError("bad " + std::string(name) + " field '" +
                         std::string(text) + "'",
                     line);
  }
  return v;
}

}  // namespace

std::vector<BenchmarkRecord> read_records(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw ParseError("missing header", 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordHeader) throw ParseError("unexpected header", line_no);

  std::vector<BenchmarkRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 11) {
      throw ParseError("expected 11 fields, found " + std::to_string(f.size()),
                       line_no);
    }
    BenchmarkRecord r;
    r.problem = std::string(f[0]);
    r.dim = parse_field<std::int64_t>(f[1], "dim", line_no);
    r.solver = std::string(f[2]);
    r.status = std::string(f[3]);
    try {
      parse_run_status(r.status);
    } catch (const ConfigError&) {
      throw ParseError("unknown status '" + r.status + "'", line_no);
    }
    r.iters = parse_field<std::int64_t>(f[4], "iters", line_no);
    r.f_evals = parse_field<std::int64_t>(f[5], "f_evals", line_no);
    r.g_evals = parse_field<std::int64_t>(f[6], "g_evals", line_no);
    r.f_star = parse_field<double>(f[7], "f_star", line_no);
    r.grad_inf = parse_field<double>(f[8], "grad_inf", line_no);
    r.time_s = parse_field<double>(f[9], "time_s", line_no);
    r.config_hash = std::string(f[10]);
    records.push_back(std::move(r));
  }
  if (in.bad()) throw IoError("read_records: stream error");
  return records;
}

std::vector<BenchmarkRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return read_records(in);
}

// Performance profiles.

ProfileMetric parse_profile_metric(std::string_view text) {
  if (text == "time") return ProfileMetric::Time;
  if (text == "fstar") return ProfileMetric::FStar;
  throw ConfigError("unknown profile metric '" + std::string(text) + "'");
}

double ProfileCurve::rho_at(double tau) const {
  double rho = 0.0;
  for (const auto& p : points) {
    if (p.tau > tau) break;
    rho = p.rho;
  }
  return rho;
}

std::vector<ProfileCurve> performance_profile(
    const std::vector<BenchmarkRecord>& records, ProfileMetric metric) {
  std::vector<std::string> problems;
  std::vector<std::string> solvers;
  std::map<std::pair<std::string, std::string>, const BenchmarkRecord*> cell;
  for (const auto& r : records) {
    if (std::find(problems.begin(), problems.end(), r.problem) == problems.end()) {
      problems.push_back(r.problem);
    }
    if (std::find(solvers.begin(), solvers.end(), r.solver) == solvers.end()) {
      solvers.push_back(r.solver);
    }
    if (!cell.emplace(std::pair{r.problem, r.solver}, &r).second) {
      throw UsageError("duplicate record for (" + r.problem + ", " + r.solver + ")");
    }
  }
  if (problems.empty()) throw UsageError("performance_profile: no records");
  if (solvers.size() < 2) {
    throw UsageError("performance_profile needs at least two solvers");
  }

  constexpr double inf = std::numeric_limits<double>::infinity();
  // ratios[s][p]
  std::vector<std::vector<double>> ratios(solvers.size(),
                                          std::vector<double>(problems.size(), inf));
  for (std::size_t p = 0; p < problems.size(); ++p) {
    std::vector<std::optional<double>> measure(solvers.size());
    double f_best = inf;
    for (std::size_t s = 0; s < solvers.size(); ++s) {
      const auto it = cell.find({problems[p], solvers[s]});
      if (it == cell.end() || !it->second->converged()) continue;
      const BenchmarkRecord& r = *it->second;
      if (metric == ProfileMetric::Time) {
        if (!(r.time_s > 0.0)) {
          throw UsageError("non-positive time for (" + r.problem + ", " +
                           r.solver + ")");
        }
        measure[s] = r.time_s;
      } else {
        f_best = std::min(f_best, r.f_star);
        measure[s] = r.f_star;
      }
    }
    if (metric == ProfileMetric::FStar) {
      for (auto& m : measure) {
        if (m) m = (*m - f_best) + kFStarShift;
      }
    }
    double best = inf;
    for (const auto& m : measure) {
      if (m) best = std::min(best, *m);
    }
    for (std::size_t s = 0; s < solvers.size(); ++s) {
      if (measure[s]) ratios[s][p] = *measure[s] / best;
    }
  }

  const double np = static_cast<double>(problems.size());
  std::vector<ProfileCurve> curves;
  for (std::size_t s = 0; s < solvers.size(); ++s) {
    std::vector<double> finite;
    for (double r : ratios[s]) {
      if (std::isfinite(r)) finite.push_back(r);
    }
    std::sort(finite.begin(), finite.end());
    ProfileCurve curve{solvers[s], {}};
    std::size_t at_one = 0;
    while (at_one < finite.size() && finite[at_one] <= 1.0) ++at_one;
    curve.points.push_back({1.0, static_cast<double>(at_one) / np});
    for (std::size_t i = at_one; i < finite.size(); ++i) {
      if (i + 1 < finite.size() && finite[i + 1] == finite[i]) continue;
      curve.points.push_back({finite[i], static_cast<double>(i + 1) / np});
    }
    curve.points.push_back({inf, static_cast<double>(finite.size()) / np});
    curves.push_back(std::move(curve));
  }
  return curves;
}

void write_profile_csv(const std::vector<ProfileCurve>& curves, std::ostream& out) {
  out << "solver,tau,rho\n";
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      out << c.solver << ',' << format_real(p.tau) << ',' << format_real(p.rho)
          << '\n';
    }
  }
}

void write_profile_svg(const std::vector<ProfileCurve>& curves,
                       std::string_view title, std::ostream& out) {
  constexpr double width = 640, height = 420;
  constexpr double left = 60, right = 150, top = 40, bottom = 50;
  constexpr double plot_w = width - left - right;
  constexpr double plot_h = height - top - bottom;
  static constexpr const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#ff7f0e", "#9467bd", "#8c564b",
                                            "#e377c2", "#7f7f7f"};

  double max_log = 1.0;
  for (const auto& c : curves) {
    for (const auto& p : c.points) {
      if (std::isfinite(p.tau)) max_log = std::max(max_log, std::log2(p.tau));
    }
  }
  max_log = std::ceil(max_log * 1.05);
  auto sx = [&](double tau) { return left + plot_w * std::log2(tau) / max_log; };
  auto sy = [&](double rho) { return top + plot_h * (1.0 - rho); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"22\" text-anchor=\"middle\">"
      << title << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= static_cast<int>(max_log); ++k) {
    const double x = sx(std::exp2(k));
    out << "<line x1=\"" << x << "\" y1=\"" << top + plot_h << "\" x2=\"" << x
        << "\" y2=\"" << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << std::exp2(k) << "</text>\n";
  }
  for (int k = 0; k <= 4; ++k) {
    const double rho = 0.25 * k;
    out << "<text x=\"" << left - 8 << "\" y=\"" << sy(rho) + 4
        << "\" text-anchor=\"end\">" << rho << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\">tau (log2 scale)</text>\n";

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const auto& c = curves[i];
    const char* color = palette[i % std::size(palette)];
    std::ostringstream path;
    double prev_rho = 0.0;
    bool first = true;
    for (const auto& p : c.points) {
      const double tau = std::isfinite(p.tau) ? p.tau : std::exp2(max_log);
      if (first) {
        path << "M" << sx(tau) << "," << sy(p.rho);
        first = false;
      } else {
        path << " L" << sx(tau) << "," << sy(prev_rho) << " L" << sx(tau) << ","
             << sy(std::isfinite(p.tau) ? p.rho : prev_rho);
      }
      prev_rho = p.rho;
    }
    out << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    const double ly = top + 16.0 * static_cast<double>(i + 1);
    out << "<line x1=\"" << left + plot_w + 15 << "\" y1=\"" << ly << "\" x2=\""
        << left + plot_w + 40 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << left + plot_w + 45 << "\" y=\"" << ly + 4 << "\">"
        << c.solver << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace curveopt
