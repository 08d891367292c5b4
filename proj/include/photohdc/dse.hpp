#pragma once

// Exhaustive design-space search under power and area budgets.

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "photohdc/ppa.hpp"

namespace photohdc {

enum class Objective { Edp, Edap };
enum class BudgetAxis { Power, Area };

std::string_view to_string(Objective o);
Objective parse_objective(std::string_view s);

struct SearchSpace {
  std::vector<std::int64_t> r_values;
  std::vector<std::int64_t> c_values;
  std::vector<std::int64_t> u_values;
  std::vector<double> f_values_ghz;
  std::vector<std::int64_t> pds_per_dac_values;
  Scheme scheme = Scheme::Traditional;
  Mode mode = Mode::Training;
  double dac_rate_gsps = 10.0;
  int bits = 4;

  // R, C in 4..128 step 4; U {1,2,4}; f {1,2,5} GHz; PDs per DAC
  // {1,2,4,6,8,10} for traditional encoding and {1} otherwise.
  static SearchSpace defaults(Scheme scheme, Mode mode);

  void validate() const;
  std::size_t size() const;
  // Grid point i in row-major order over (R, C, U, f, pds).
  AcceleratorConfig at(std::size_t i) const;
};

struct Budgets {
  double power_w = 20.0;
  double area_mm2 = 500.0;
};

struct WorkloadMetrics {
  double latency_s = 0;
  double power_w = 0;
  double edp_js = 0;
  double edap_js_mm2 = 0;
};

struct PointEvaluation {
  AcceleratorConfig config;
  bool feasible = false;
  std::string reason;  // why infeasible
  double objective = 0;
  double area_mm2 = 0;
  double max_power_w = 0;
  bool wire_ok = true;
  std::vector<WorkloadMetrics> metrics;
};

PointEvaluation evaluate_point(const AcceleratorConfig& config, std::span<const WorkloadSpec> workloads,
                               const DeviceParams& device, Mode mode, Objective objective, const Budgets& budgets,
                               std::int64_t n_queries = 1'000'000);
// Full reports for a point, one per workload.
std::vector<PpaReport> point_reports(const AcceleratorConfig& config, std::span<const WorkloadSpec> workloads,
                                     const DeviceParams& device, Mode mode, std::int64_t n_queries = 1'000'000);

struct SearchOptions {
  unsigned threads = 0;  // 0: PHOTOHDC_THREADS, else hardware concurrency
  std::int64_t n_queries = 1'000'000;
  bool keep_feasible = false;
};

struct SearchResult {
  std::optional<PointEvaluation> best;
  std::vector<PpaReport> reports;  // per workload, for the winner
  std::vector<AcceleratorConfig> ties;  // within 1e-9 relative of the best objective
  std::size_t feasible_count = 0;
  std::size_t evaluated_count = 0;
  std::vector<PointEvaluation> feasible;  // only with keep_feasible
};

// Budget-independent evaluation of every grid point; selection per budget
// reuses it.
class GridEvaluation {
 public:
  GridEvaluation(const SearchSpace& space, std::span<const WorkloadSpec> workloads, const DeviceParams& device,
                 Objective objective, const SearchOptions& options = {});

  SearchResult select(const Budgets& budgets) const;
  std::size_t size() const { return points_.size(); }

 private:
  SearchSpace space_;
  std::vector<WorkloadSpec> workloads_;
  DeviceParams device_;
  Objective objective_;
  SearchOptions options_;
  std::vector<PointEvaluation> points_;  // evaluated with unbounded budgets
};

SearchResult exhaustive_search(const SearchSpace& space, std::span<const WorkloadSpec> workloads,
                               const Budgets& budgets, const DeviceParams& device, Objective objective,
                               const SearchOptions& options = {});

struct SweepPoint {
  double budget = 0;
  std::optional<double> best;  // nullopt when nothing fits
  double normalized = 0;       // best / max(best); infinity when nothing fits
  std::optional<AcceleratorConfig> config;
};

std::vector<SweepPoint> budget_sweep(const SearchSpace& space, std::span<const WorkloadSpec> workloads,
                                     const DeviceParams& device, BudgetAxis axis, std::span<const double> values,
                                     double fixed_other_budget, Objective objective = Objective::Edp,
                                     const SearchOptions& options = {});

// Smallest budget beyond which the curve improves by less than `tolerance`
// (relative); nullopt if the curve never settles.
std::optional<double> saturation_budget(std::span<const SweepPoint> curve, double tolerance = 0.05);

unsigned resolve_threads(unsigned requested);

// Emitters. Pure functions of their inputs.
void write_search_csv(std::ostream& out, const SearchResult& result, std::span<const WorkloadSpec> workloads);
void write_sweep_csv(std::ostream& out, std::span<const SweepPoint> curve, BudgetAxis axis);
std::string report_markdown_header();
std::string report_markdown_row(const PpaReport& report);
std::string search_markdown(const SearchResult& result);

}  // namespace photohdc
