#include "photohdc/dse.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <thread>
#include <tuple>

namespace photohdc {

std::string_view to_string(Objective o) { return o == Objective::Edp ? "edp" : "edap"; }

Objective parse_objective(std::string_view text) {
  const std::string s = to_lower(text);
  if (s == "edp") return Objective::Edp;
  if (s == "edap") return Objective::Edap;
  throw ParameterError("unknown objective '" + std::string(text) + "'");
}

SearchSpace SearchSpace::defaults(Scheme scheme, Mode mode) {
  SearchSpace s;
  for (std::int64_t v = 4; v <= 128; v += 4) {
    s.r_values.push_back(v);
    s.c_values.push_back(v);
  }
  s.u_values = {1, 2, 4};
  s.f_values_ghz = {1, 2, 5};
  s.pds_per_dac_values = scheme == Scheme::Traditional ? std::vector<std::int64_t>{1, 2, 4, 6, 8, 10}
                                                       : std::vector<std::int64_t>{1};
  s.scheme = scheme;
  s.mode = mode;
  return s;
}

void SearchSpace::validate() const {
  auto check = [](const auto& values, const char* name) {
    if (values.empty()) throw ParameterError(std::string("search space: ") + name + " grid is empty");
    for (auto v : values) {
      if (!(v > 0)) throw ParameterError(std::string("search space: ") + name + " values must be positive");
    }
  };
  check(r_values, "rows");
  check(c_values, "cols");
  check(u_values, "units");
  check(f_values_ghz, "freq-ghz");
  check(pds_per_dac_values, "pds-per-dac");
}

std::size_t SearchSpace::size() const {
  return r_values.size() * c_values.size() * u_values.size() * f_values_ghz.size() * pds_per_dac_values.size();
}

AcceleratorConfig SearchSpace::at(std::size_t i) const {
  AcceleratorConfig c;
  c.pds_per_dac = pds_per_dac_values[i % pds_per_dac_values.size()];
  i /= pds_per_dac_values.size();
  c.f_ghz = f_values_ghz[i % f_values_ghz.size()];
  i /= f_values_ghz.size();
  c.units = u_values[i % u_values.size()];
  i /= u_values.size();
  c.cols = c_values[i % c_values.size()];
  i /= c_values.size();
  c.rows = r_values[i];
  c.dac_rate_gsps = dac_rate_gsps;
  c.bits = bits;
  return c.for_scheme(scheme);
}

namespace {

Scheme common_scheme(std::span<const WorkloadSpec> workloads) {
  if (workloads.empty()) throw ParameterError("no workloads to evaluate");
  for (const auto& w : workloads) {
    if (w.scheme != workloads.front().scheme) throw ParameterError("workloads mix encoding schemes");
  }
  return workloads.front().scheme;
}

void apply_budgets(PointEvaluation& p, const Budgets& b) {
  p.reason.clear();
  if (!p.wire_ok) {
    p.reason = "wire delay exceeds clock period";
  } else if (p.area_mm2 > b.area_mm2) {
    p.reason = "area over budget";
  } else if (p.max_power_w > b.power_w) {
    p.reason = "power over budget";
  }
  p.feasible = p.reason.empty();
}

// Strict weak order used to break objective ties.
bool preferred(const PointEvaluation& a, const PointEvaluation& b) {
  auto key = [](const PointEvaluation& p) {
    const auto& c = p.config;
    return std::tuple(p.area_mm2, p.max_power_w, c.rows, c.cols, c.units, c.f_ghz, c.pds_per_dac);
  };
  return key(a) < key(b);
}

}  // namespace

std::vector<PpaReport> point_reports(const AcceleratorConfig& config, std::span<const WorkloadSpec> workloads,
                                     const DeviceParams& device, Mode mode, std::int64_t n_queries) {
  std::vector<PpaReport> out;
  for (const auto& w : workloads) out.push_back(ppa_report(w, config, device, mode, n_queries));
  return out;
}

PointEvaluation evaluate_point(const AcceleratorConfig& config, std::span<const WorkloadSpec> workloads,
                               const DeviceParams& device, Mode mode, Objective objective, const Budgets& budgets,
                               std::int64_t n_queries) {
  const Scheme scheme = common_scheme(workloads);
  PointEvaluation p;
  p.config = config.for_scheme(scheme);
  p.config.validate();
  p.wire_ok = wire_delay_check(p.config, device).ok;
  p.area_mm2 = total_area(p.config, device, mode).total_mm2;
  double sum = 0;
  for (const auto& w : workloads) {
    const auto r = ppa_report(w, p.config, device, mode, n_queries);
    p.metrics.push_back({r.latency_s, r.peak_power_w, r.edp_js, r.edap_js_mm2});
    p.max_power_w = std::max(p.max_power_w, r.peak_power_w);
    sum += objective == Objective::Edp ? r.edp_js : r.edap_js_mm2;
  }
  p.objective = sum / static_cast<double>(workloads.size());
  apply_budgets(p, budgets);
  return p;
}

unsigned resolve_threads(unsigned requested) {
  unsigned n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("PHOTOHDC_THREADS")) n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
  }
  if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
  return n;
}

GridEvaluation::GridEvaluation(const SearchSpace& space, std::span<const WorkloadSpec> workloads,
                               const DeviceParams& device, Objective objective, const SearchOptions& options)
    : space_(space), workloads_(workloads.begin(), workloads.end()), device_(device), objective_(objective),
      options_(options) {
  space_.validate();
  if (common_scheme(workloads_) != space_.scheme) throw ParameterError("workload scheme does not match search space");
  points_.resize(space_.size());

  const Budgets unbounded{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    constexpr std::size_t kChunk = 64;
    for (;;) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= points_.size()) return;
      const std::size_t end = std::min(points_.size(), begin + kChunk);
      for (std::size_t i = begin; i < end; ++i) {
        points_[i] = evaluate_point(space_.at(i), workloads_, device_, space_.mode, objective_, unbounded,
                                    options_.n_queries);
      }
    }
  };
  const unsigned threads = std::min<std::size_t>(resolve_threads(options_.threads), points_.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
}

SearchResult GridEvaluation::select(const Budgets& budgets) const {
  if (!(budgets.power_w > 0.0) || !(budgets.area_mm2 > 0.0)) throw ParameterError("budgets must be > 0");
  SearchResult result;
  result.evaluated_count = points_.size();
  std::vector<std::size_t> feasible;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    PointEvaluation p = points_[i];
    apply_budgets(p, budgets);
    if (!p.feasible) continue;
    feasible.push_back(i);
    if (options_.keep_feasible) result.feasible.push_back(std::move(p));
  }
  result.feasible_count = feasible.size();
  if (feasible.empty()) return result;

  double best = std::numeric_limits<double>::infinity();
  for (auto i : feasible) best = std::min(best, points_[i].objective);
  const PointEvaluation* winner = nullptr;
  for (auto i : feasible) {
    const auto& p = points_[i];
    if (p.objective > best * (1.0 + 1e-9)) continue;
    result.ties.push_back(p.config);
    if (!winner || preferred(p, *winner)) winner = &p;
  }
  result.best = *winner;
  apply_budgets(*result.best, budgets);
  result.reports = point_reports(winner->config, workloads_, device_, space_.mode, options_.n_queries);
  return result;
}

SearchResult exhaustive_search(const SearchSpace& space, std::span<const WorkloadSpec> workloads,
                               const Budgets& budgets, const DeviceParams& device, Objective objective,
                               const SearchOptions& options) {
  return GridEvaluation(space, workloads, device, objective, options).select(budgets);
}

std::vector<SweepPoint> budget_sweep(const SearchSpace& space, std::span<const WorkloadSpec> workloads,
                                     const DeviceParams& device, BudgetAxis axis, std::span<const double> values,
                                     double fixed_other_budget, Objective objective, const SearchOptions& options) {
  if (!std::is_sorted(values.begin(), values.end())) throw ParameterError("sweep budgets must be ascending");
  const GridEvaluation grid(space, workloads, device, objective, options);
  std::vector<SweepPoint> curve;
  double max_best = 0;
  for (double v : values) {
    const Budgets b = axis == BudgetAxis::Power ? Budgets{v, fixed_other_budget} : Budgets{fixed_other_budget, v};
    const auto r = grid.select(b);
    SweepPoint pt;
    pt.budget = v;
    if (r.best) {
      pt.best = r.best->objective;
      pt.config = r.best->config;
      max_best = std::max(max_best, *pt.best);
    }
    curve.push_back(pt);
  }
  for (auto& pt : curve) {
    pt.normalized = pt.best ? *pt.best / max_best : std::numeric_limits<double>::infinity();
  }
  return curve;
}

std::optional<double> saturation_budget(std::span<const SweepPoint> curve, double tolerance) {
  if (curve.empty() || !curve.back().best) return std::nullopt;
  const double last = *curve.back().best;
  for (const auto& pt : curve) {
    if (pt.best && (*pt.best - last) / *pt.best < tolerance) return pt.budget;
  }
  return std::nullopt;
}

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

void config_cells(std::ostream& out, const AcceleratorConfig& c) {
  out << c.rows << ',' << c.cols << ',' << c.units << ',' << num(c.f_ghz) << ',' << c.pds_per_dac << ','
      << num(c.sharing_active() ? c.t_dac_ns() : 0.0);
}

}  // namespace

void write_search_csv(std::ostream& out, const SearchResult& result, std::span<const WorkloadSpec> workloads) {
  out << "rows,cols,units,f_ghz,pds_per_dac,t_dac_ns,area_mm2,max_power_w";
  for (const auto& w : workloads) {
    out << ',' << w.name << "_latency_s," << w.name << "_power_w," << w.name << "_area_mm2," << w.name << "_edp_js,"
        << w.name << "_edap_js_mm2";
  }
  out << ",objective,winner\n";
  auto row = [&](const PointEvaluation& p, bool winner) {
    config_cells(out, p.config);
    out << ',' << num(p.area_mm2) << ',' << num(p.max_power_w);
    for (const auto& m : p.metrics) {
      out << ',' << num(m.latency_s) << ',' << num(m.power_w) << ',' << num(p.area_mm2) << ',' << num(m.edp_js)
          << ',' << num(m.edap_js_mm2);
    }
    out << ',' << num(p.objective) << ',' << (winner ? 1 : 0) << '\n';
  };
  if (!result.feasible.empty()) {
    for (const auto& p : result.feasible) row(p, result.best && p.config == result.best->config);
  } else if (result.best) {
    row(*result.best, true);
  }
}

void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> curve, BudgetAxis axis) {
  out << (axis == BudgetAxis::Power ? "power_budget_w" : "area_budget_mm2")
      << ",feasible,best_objective,normalized,rows,cols,units,f_ghz,pds_per_dac,t_dac_ns\n";
  for (const auto& pt : curve) {
    out << num(pt.budget) << ',' << (pt.best ? 1 : 0) << ',';
    if (pt.best) {
      out << num(*pt.best) << ',' << num(pt.normalized) << ',';
      config_cells(out, *pt.config);
    } else {
      out << ",,,,,,,";
    }
    out << '\n';
  }
}

std::string report_markdown_header() {
  return "| Enc. type | Dataset | Mode | Params | Latency (ms) | Power (W) |\n"
         "|---|---|---|---|---|---|\n";
}

std::string report_markdown_row(const PpaReport& r) {
  char lat[32], pw[32];
  std::snprintf(lat, sizeof lat, "%.4g", r.latency_s * 1e3);
  std::snprintf(pw, sizeof pw, "%.2f", r.peak_power_w);
  std::ostringstream os;
  os << "| " << to_string(r.scheme) << " | " << r.workload << " | " << to_string(r.mode) << " | " << r.config.label()
     << " | " << lat << " | " << pw << " |\n";
  return os.str();
}

std::string search_markdown(const SearchResult& result) {
  if (!result.best) return "no feasible design\n";
  std::string s = report_markdown_header();
  for (const auto& r : result.reports) s += report_markdown_row(r);
  return s;
}

}  // namespace photohdc
