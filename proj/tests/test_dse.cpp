#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "doctest.h"
#include "photohdc/device.hpp"
#include "photohdc/dse.hpp"
#include "photohdc/reference.hpp"
#include "photohdc/workload.hpp"

using namespace photohdc;

namespace {

const DeviceParams& dev() {
  static const DeviceParams d = load_device_params(PHOTOHDC_DATA_DIR "/device_params_default.json");
  return d;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

SearchSpace small_space(Scheme s = Scheme::Traditional, Mode m = Mode::Training) {
  SearchSpace sp = SearchSpace::defaults(s, m);
  sp.r_values = {16, 64, 128};
  sp.c_values = {8, 32, 76};
  sp.u_values = {1, 4};
  sp.f_values_ghz = {1, 5};
  sp.pds_per_dac_values = s == Scheme::Traditional ? std::vector<std::int64_t>{1, 8} : std::vector<std::int64_t>{1};
  return sp;
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("default grid") {
  const auto t = SearchSpace::defaults(Scheme::Traditional, Mode::Training);
  CHECK(t.r_values.size() == 32);
  CHECK(t.r_values.front() == 4);
  CHECK(t.r_values.back() == 128);
  CHECK(t.c_values == t.r_values);
  CHECK(t.u_values == std::vector<std::int64_t>{1, 2, 4});
  CHECK(t.f_values_ghz == std::vector<double>{1, 2, 5});
  CHECK(t.pds_per_dac_values == std::vector<std::int64_t>{1, 2, 4, 6, 8, 10});
  CHECK(t.size() == 32u * 32 * 3 * 3 * 6);
  CHECK(SearchSpace::defaults(Scheme::Record, Mode::Training).pds_per_dac_values == std::vector<std::int64_t>{1});
}

TEST_CASE("grid points are row-major over R, C, U, f, pds") {
  const auto sp = small_space();
  const auto first = sp.at(0);
  CHECK(first.rows == 16);
  CHECK(first.cols == 8);
  CHECK(first.pds_per_dac == 1);
  CHECK(sp.at(1).pds_per_dac == 8);
  CHECK(sp.at(2).f_ghz == 5);
  CHECK(sp.at(sp.size() - 1).rows == 128);
  CHECK(sp.at(sp.size() - 1).cols == 76);
  SearchSpace bad = sp;
  bad.c_values.clear();
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  bad = sp;
  bad.u_values = {0};
  CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("evaluate_point budgets") {
  const auto ws = builtin_workloads(Scheme::Traditional);
  const auto c = reference_config(Scheme::Traditional, Mode::Training);
  const auto open = evaluate_point(c, ws, dev(), Mode::Training, Objective::Edap, {kInf, kInf});
  CHECK(open.feasible);
  const auto tight = evaluate_point(c, ws, dev(), Mode::Training, Objective::Edap, {0.001, kInf});
  CHECK_FALSE(tight.feasible);
  CHECK_FALSE(tight.reason.empty());

  const auto ref_point = evaluate_point(c, ws, dev(), Mode::Training, Objective::Edap, {20, 500});
  CHECK(ref_point.feasible);
  CHECK(ref_point.max_power_w <= 4.96 * 1.15);
  double mean = 0;
  for (const auto& m : ref_point.metrics) mean += m.edap_js_mm2 / static_cast<double>(ref_point.metrics.size());
  CHECK(ref_point.objective == doctest::Approx(mean).epsilon(1e-12));

  auto fast = c;
  fast.f_ghz = 1000;
  const auto wire = evaluate_point(fast, ws, dev(), Mode::Training, Objective::Edap, {kInf, kInf});
  CHECK_FALSE(wire.wire_ok);
  CHECK_FALSE(wire.feasible);
}

TEST_CASE("single-point and dominated searches") {
  const auto ws = builtin_workloads(Scheme::Traditional);
  SearchSpace one = small_space();
  one.r_values = {128};
  one.c_values = {76};
  one.u_values = {4};
  one.f_values_ghz = {5};
  one.pds_per_dac_values = {10};
  const auto r = exhaustive_search(one, ws, {20, 500}, dev(), Objective::Edap);
  REQUIRE(r.best);
  CHECK(r.best->config == reference_config(Scheme::Traditional, Mode::Training));
  CHECK(r.reports.size() == ws.size());
  CHECK_FALSE(exhaustive_search(one, ws, {0.001, 500}, dev(), Objective::Edap).best);

  SearchSpace two = one;
  two.c_values = {4, 76};  // a 128x4 unit is slower per watt than 128x76 here
  const auto d = exhaustive_search(two, ws, {20, 500}, dev(), Objective::Edap);
  REQUIRE(d.best);
  CHECK(d.best->config.cols == 76);
  CHECK(d.evaluated_count == 2);
}

TEST_CASE("search is exhaustive, deterministic and thread independent") {
  const auto ws = builtin_workloads(Scheme::Traditional);
  const auto sp = small_space();
  SearchOptions serial;
  serial.threads = 1;
  SearchOptions parallel;
  parallel.threads = 4;
  const auto a = exhaustive_search(sp, ws, {20, 500}, dev(), Objective::Edap, serial);
  const auto b = exhaustive_search(sp, ws, {20, 500}, dev(), Objective::Edap, parallel);
  CHECK(a.evaluated_count == sp.r_values.size() * sp.c_values.size() * sp.u_values.size() * sp.f_values_ghz.size() *
                                 sp.pds_per_dac_values.size());
  REQUIRE(a.best);
  REQUIRE(b.best);
  CHECK(a.best->config == b.best->config);
  CHECK(a.best->objective == b.best->objective);
  CHECK(a.feasible_count == b.feasible_count);

  // The winner re-evaluated alone reproduces feasibility and objective bit for bit.
  const auto again = evaluate_point(a.best->config, ws, dev(), Mode::Training, Objective::Edap, {20, 500});
  CHECK(again.feasible);
  CHECK(again.objective == a.best->objective);
  CHECK(again.max_power_w <= 20);
  CHECK(again.area_mm2 <= 500);

  // Ties include the winner itself.
  REQUIRE_FALSE(a.ties.empty());
  CHECK(a.ties.front() == a.best->config);
}

TEST_CASE("enlarging a budget never worsens the best objective") {
  const auto ws = builtin_workloads(Scheme::Record);
  const GridEvaluation grid(small_space(Scheme::Record), ws, dev(), Objective::Edp);
  double prev = kInf;
  for (double p : {2.0, 5.0, 10.0, 20.0, 40.0, 80.0}) {
    const auto r = grid.select({p, 500});
    const double v = r.best ? r.best->objective : kInf;
    CHECK(v <= prev);
    prev = v;
  }
  prev = kInf;
  for (double a : {10.0, 50.0, 100.0, 300.0, 1000.0}) {
    const auto r = grid.select({20, a});
    const double v = r.best ? r.best->objective : kInf;
    CHECK(v <= prev);
    prev = v;
  }
}

TEST_CASE("grid selection equals a fresh search") {
  const auto ws = builtin_workloads(Scheme::Traditional);
  const auto sp = small_space();
  const GridEvaluation grid(sp, ws, dev(), Objective::Edap);
  for (Budgets b : {Budgets{20, 500}, Budgets{5, 100}, Budgets{50, 50}}) {
    const auto fresh = exhaustive_search(sp, ws, b, dev(), Objective::Edap);
    const auto sel = grid.select(b);
    CHECK(fresh.feasible_count == sel.feasible_count);
    CHECK(fresh.best.has_value() == sel.best.has_value());
    if (fresh.best && sel.best) {
      CHECK(fresh.best->config == sel.best->config);
      CHECK(fresh.best->objective == sel.best->objective);
    }
  }
}

TEST_CASE("budget_sweep") {
  const auto ws = builtin_workloads(Scheme::Traditional);
  const std::vector<double> values{5, 10, 15, 20, 25, 30};
  const auto curve = budget_sweep(small_space(), ws, dev(), BudgetAxis::Power, values, 500);
  REQUIRE(curve.size() == values.size());
  double max_best = 0;
  for (const auto& p : curve) {
    if (p.best) max_best = std::max(max_best, *p.best);
  }
  for (std::size_t i = 0; i < curve.size(); ++i) {
    CHECK(curve[i].budget == values[i]);
    if (i > 0) CHECK(curve[i].normalized <= curve[i - 1].normalized);
    if (curve[i].best) CHECK(curve[i].normalized == doctest::Approx(*curve[i].best / max_best));
  }
  const std::vector<double> unsorted{10, 5};
  CHECK_THROWS_AS(budget_sweep(small_space(), ws, dev(), BudgetAxis::Power, unsorted, 500), ParameterError);

  std::ostringstream os;
  write_sweep_csv(os, curve, BudgetAxis::Power);
  CHECK(count_lines(os.str()) == values.size() + 1);
  CHECK(os.str().rfind("power_budget_w", 0) == 0);
}

TEST_CASE("saturation_budget") {
  auto pt = [](double b, double v) {
    SweepPoint p;
    p.budget = b;
    p.best = v;
    return p;
  };
  const std::vector<SweepPoint> flat{pt(1, 10), pt(2, 5), pt(3, 4.9), pt(4, 4.85)};
  CHECK(saturation_budget(flat) == doctest::Approx(2));
  const std::vector<SweepPoint> steep{pt(1, 10), pt(2, 5), pt(3, 2.5), pt(4, 1)};
  CHECK(saturation_budget(steep) == doctest::Approx(4));
  SweepPoint none;
  none.budget = 0.5;
  const std::vector<SweepPoint> late{none, pt(1, 3), pt(2, 3)};
  CHECK(saturation_budget(late) == doctest::Approx(1));
}

TEST_CASE("search CSV and markdown") {
  const auto ws = builtin_workloads(Scheme::Traditional);
  SearchSpace tiny = small_space();
  tiny.r_values = {64, 128};
  tiny.c_values = {32, 76};
  tiny.u_values = {4};
  tiny.f_values_ghz = {5};
  tiny.pds_per_dac_values = {1};
  SearchOptions keep;
  keep.keep_feasible = true;
  const auto r = exhaustive_search(tiny, ws, {kInf, kInf}, dev(), Objective::Edap, keep);
  std::ostringstream os;
  write_search_csv(os, r, ws);
  CHECK(count_lines(os.str()) == 4 + 1);
  const std::string header = os.str().substr(0, os.str().find('\n'));
  CHECK(header.rfind("rows,cols,units,f_ghz,pds_per_dac,t_dac_ns,area_mm2,max_power_w,", 0) == 0);
  CHECK(header.find("ISOLET_edap_js_mm2") != std::string::npos);
  CHECK(header.find(",objective,winner") != std::string::npos);

  const auto md = search_markdown(r);
  CHECK(md.rfind(report_markdown_header(), 0) == 0);
  CHECK(md.find("| traditional | ISOLET | train |") != std::string::npos);
  CHECK(search_markdown(SearchResult{}) == "no feasible design\n");
}

TEST_CASE("objective names and thread resolution") {
  CHECK(parse_objective("edp") == Objective::Edp);
  CHECK(parse_objective("EDAP") == Objective::Edap);
  CHECK_THROWS_AS(parse_objective("area"), ParameterError);
  CHECK(resolve_threads(3) == 3);
  setenv("PHOTOHDC_THREADS", "2", 1);
  CHECK(resolve_threads(0) == 2);
  unsetenv("PHOTOHDC_THREADS");
  CHECK(resolve_threads(0) >= 1);
}
