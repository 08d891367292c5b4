#include "photohdc/validate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "photohdc/golden.hpp"
#include "photohdc/ppa.hpp"
#include "photohdc/reference.hpp"
#include "photohdc/rng.hpp"

namespace photohdc {

bool ValidationReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

namespace {

struct Case {
  hdc::EncodingModel model;
  hdc::LabeledDataset data;
  std::vector<hdc::GraphInstance> graphs;
  std::size_t classes = 0;
  AcceleratorConfig config;
  int bits = 4;
};

std::size_t pick(Rng& rng, std::size_t lo, std::size_t hi) { return lo + rng.bounded(hi - lo + 1); }

Case make_case(Scheme scheme, std::uint64_t seed) {
  Rng rng(seed);
  Case c;
  c.classes = pick(rng, 1, 4);
  const std::size_t d = pick(rng, scheme == Scheme::Graph ? 2 : 1, 32);
  const std::size_t D = pick(rng, 1, 64);
  c.bits = static_cast<int>(pick(rng, 2, 6));
  c.config.rows = static_cast<std::int64_t>(pick(rng, 1, 8));
  c.config.cols = static_cast<std::int64_t>(pick(rng, 1, 8));
  c.config.units = static_cast<std::int64_t>(pick(rng, 1, 3));
  c.config.bits = c.bits;
  const std::size_t per_class_max = pick(rng, 1, 6);

  if (scheme == Scheme::Graph) {
    for (std::size_t k = 0; k < c.classes; ++k) {
      const std::size_t n = pick(rng, 1, per_class_max);
      for (std::size_t i = 0; i < n; ++i) {
        hdc::GraphInstance g;
        g.label = k;
        g.vertex_count = pick(rng, 1, d);
        std::set<std::pair<std::size_t, std::size_t>> seen;
        const std::size_t tries = pick(rng, 0, 3 * g.vertex_count);
        for (std::size_t t = 0; t < tries && g.vertex_count > 1; ++t) {
          const std::size_t u = rng.bounded(g.vertex_count), v = rng.bounded(g.vertex_count);
          if (u != v && seen.insert(std::minmax(u, v)).second) g.edges.emplace_back(u, v);
        }
        c.graphs.push_back(std::move(g));
      }
    }
    c.model = hdc::generate_model(scheme, d, D, 2, rng.next());
    return c;
  }

  c.data.num_classes = c.classes;
  for (std::size_t k = 0; k < c.classes; ++k) {
    const std::size_t n = pick(rng, 1, per_class_max);
    for (std::size_t i = 0; i < n; ++i) {
      hdc::Sample s{std::vector<double>(d), k};
      for (auto& x : s.features) x = rng.uniform() * 4.0 - 2.0;
      c.data.samples.push_back(std::move(s));
    }
  }
  const std::size_t m = pick(rng, 2, 8);
  c.model = hdc::generate_model(scheme, d, D, m, rng.next(), c.data.feature_ranges());
  return c;
}

hdc::TrainedModel core_train(const Case& c) {
  return c.graphs.empty() ? hdc::train_single_pass(c.data, c.model, c.bits)
                          : hdc::train_single_pass(c.graphs, c.classes, c.model, c.bits);
}

GoldenTrainResult golden_train_case(const Case& c, const TraceSink& sink) {
  return c.graphs.empty() ? golden_train(c.model, c.data, c.config, c.bits, sink)
                          : golden_train(c.model, c.graphs, c.classes, c.config, c.bits, sink);
}

GoldenInferResult golden_infer_case(const Case& c, const hdc::TrainedModel& t, const TraceSink& sink) {
  if (!c.graphs.empty()) return golden_infer(c.model, t, c.graphs, c.config, sink);
  std::vector<std::vector<double>> qs;
  for (const auto& s : c.data.samples) qs.push_back(s.features);
  return golden_infer(c.model, t, qs, c.config, sink);
}

std::size_t query_count(const Case& c) { return c.graphs.empty() ? c.data.samples.size() : c.graphs.size(); }

WorkloadSpec case_workload(const Case& c, Scheme scheme) {
  WorkloadSpec w;
  w.name = "case";
  w.d = static_cast<std::int64_t>(c.model.features);
  w.classes = static_cast<std::int64_t>(c.classes);
  w.dim = static_cast<std::int64_t>(c.model.dim);
  w.scheme = scheme;
  w.per_class.assign(c.classes, 0);
  if (c.graphs.empty()) {
    for (const auto& s : c.data.samples) ++w.per_class[s.label];
  } else {
    for (const auto& g : c.graphs) ++w.per_class[g.label];
  }
  for (auto n : w.per_class) w.n_train += n;
  return w;
}

struct Tally {
  std::size_t failures = 0;
  std::string first;
  void fail(std::uint64_t seed, const std::string& what) {
    if (failures++ == 0) first = "case seed " + std::to_string(seed) + ": " + what;
  }
  CheckResult result(std::string name, std::size_t total) const {
    std::ostringstream os;
    if (failures == 0) {
      os << total << " cases";
    } else {
      os << failures << "/" << total << " cases failed; " << first;
    }
    return {std::move(name), failures == 0, os.str()};
  }
};

bool counters_match(const ScheduleStats& s, const TraceCounter& t, std::string& why) {
  auto eq = [&](double expected, std::int64_t got, const char* name) {
    if (expected == static_cast<double>(got)) return true;
    why = std::string(name) + " schedule " + std::to_string(expected) + " vs trace " + std::to_string(got);
    return false;
  };
  return eq(s.unit_cycles, t.events(), "unit cycles") && eq(s.total_cycles, t.critical_cycles(), "total_cycles") &&
         eq(s.unit_tile_updates, t.tile_updates(), "tile updates") &&
         eq(s.tile_updates, t.critical_tile_updates(), "critical tile updates") &&
         eq(s.dac_conversions, t.dac_conversions(), "dac_conversions") &&
         eq(s.adc_conversions, t.adc_conversions(), "adc_conversions") &&
         eq(s.mzm_modulations, t.mzm_modulations(), "mzm_modulations");
}

// Latency of every reference row under the current formulas, frozen.
constexpr double kFrozenLatencyS[] = {
#include "reference_latency.inc"
};

}  // namespace

ValidationReport run_validation(const ValidationOptions& opt) {
  ValidationReport report;
  auto add = [&](CheckResult c) { report.checks.push_back(std::move(c)); };

  if (opt.device) {
    try {
      opt.device->validate();
      add({"device params", true, "all fields in range"});
    } catch (const ParameterError& e) {
      add({"device params", false, e.what()});
    }
  }

  Tally train_formula, infer_formula;
  std::size_t formula_cases = 0;
  for (Scheme scheme : {Scheme::Traditional, Scheme::Record, Scheme::Graph}) {
    const std::string tag = std::string(to_string(scheme));
    Tally train_eq, infer_eq, train_counts, infer_counts;
    for (std::size_t i = 0; i < opt.random_cases; ++i) {
      const std::uint64_t seed = opt.seed * 1000003ULL + i * 31ULL + static_cast<std::uint64_t>(scheme);
      const Case c = make_case(scheme, seed);
      const auto w = case_workload(c, scheme);
      const auto core = core_train(c);
      ++formula_cases;

      TraceCounter tc(c.config);
      const auto golden = golden_train_case(c, std::ref(tc));
      if (golden.chvs != core.chvs || golden.scales != core.scales) train_eq.fail(seed, "CHVs differ");
      std::string why;
      if (!counters_match(schedule_training(w, c.config, ScheduleModel::Discrete), tc, why)) train_counts.fail(seed, why);
      std::int64_t groups = 0;
      for (auto n : w.per_class) groups += ceil_div(n, c.config.rows);
      if (tc.events() != groups * opt.hooks.train_cycles(w, c.config)) {
        train_formula.fail(seed, "trace shows " + std::to_string(tc.events() / std::max<std::int64_t>(groups, 1)) +
                                     " cycles per group, formula gives " +
                                     std::to_string(opt.hooks.train_cycles(w, c.config)));
      }

      TraceCounter ic(c.config);
      const auto gi = golden_infer_case(c, core, std::ref(ic));
      bool same = true;
      for (std::size_t n = 0; n < query_count(c) && same; ++n) {
        const auto enc = c.graphs.empty() ? hdc::encode_sample(c.model, c.data.samples[n].features, c.bits)
                                          : hdc::encode_graph(c.model, c.graphs[n]);
        const auto q = hdc::quantize_query(core, enc);
        same = gi.dots[n] == hdc::dot_scores(core, q) && gi.scores[n] == hdc::similarity_scores(core, q) &&
               gi.predictions[n] == hdc::classify(core, q);
      }
      if (!same) infer_eq.fail(seed, "similarity scores differ");
      const auto nq = static_cast<std::int64_t>(query_count(c));
      if (!counters_match(schedule_inference(w, c.config, nq, ScheduleModel::Discrete), ic, why)) {
        infer_counts.fail(seed, why);
      }
      if (ic.events() != ceil_div(nq, c.config.rows) * opt.hooks.infer_cycles(w, c.config)) {
        infer_formula.fail(seed, "trace shows " + std::to_string(ic.events() / ceil_div(nq, c.config.rows)) +
                                     " cycles per batch, formula gives " +
                                     std::to_string(opt.hooks.infer_cycles(w, c.config)));
      }
    }
    add(train_eq.result("golden training equivalence (" + tag + ")", opt.random_cases));
    add(infer_eq.result("golden inference equivalence (" + tag + ")", opt.random_cases));
    add(train_counts.result("training counters vs trace (" + tag + ")", opt.random_cases));
    add(infer_counts.result("inference counters vs trace (" + tag + ")", opt.random_cases));
  }
  add(train_formula.result("cycle formula cycles_train_per_group", formula_cases));
  add(infer_formula.result("cycle formula cycles_infer_per_batch", formula_cases));

  {
    AcceleratorConfig c;
    c.rows = c.cols = 128;
    c.pds_per_dac = 6;
    const auto dacs = programming_dacs_per_unit(c);
    const double t = derive_t_dac(c);
    add({"DAC sharing arithmetic", dacs == 2731 && t == 1.0,
         std::to_string(dacs) + " programming DACs, t_DAC " + std::to_string(t) + " ns"});
  }

  {
    const auto rows = reference_rows();
    std::size_t bad = 0;
    std::ostringstream detail;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      const auto w = make_workload(find_builtin(r.dataset), r.scheme);
      const auto c = r.config.for_scheme(r.scheme);
      const auto s = r.mode == Mode::Training ? schedule_training(w, c) : schedule_inference(w, c, kReferenceQueries);
      const double frozen = i < std::size(kFrozenLatencyS) ? kFrozenLatencyS[i] : -1.0;
      if (std::abs(s.wall_latency_s - frozen) > 1e-9 * frozen) {
        if (bad++ == 0) {
          detail << to_string(r.scheme) << ' ' << to_string(r.mode) << ' ' << r.dataset << ": " << s.wall_latency_s
                 << " s, frozen " << frozen << " s";
        }
      }
    }
    add({"reference latency regression", bad == 0,
         bad == 0 ? std::to_string(rows.size()) + " rows" : std::to_string(bad) + " rows changed; " + detail.str()});
  }

  if (opt.device) {
    bool ok = true;
    std::string detail = "energy, EDP, EDAP consistent";
    try {
      for (const auto& r : reference_rows()) {
        const auto w = make_workload(find_builtin(r.dataset), r.scheme);
        const auto p = ppa_report(w, r.config, *opt.device, r.mode, kReferenceQueries);
        const auto rel = [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(std::abs(a), std::abs(b)); };
        if (!rel(p.energy_j, p.power.total_w * p.latency_s) || !rel(p.edp_js, p.energy_j * p.latency_s) ||
            !rel(p.edap_js_mm2, p.edp_js * p.area.total_mm2)) {
          ok = false;
          detail = std::string("identity broken for ") + r.dataset;
          break;
        }
      }
    } catch (const std::exception& e) {
      ok = false;
      detail = e.what();
    }
    add({"report identities", ok, detail});
  }
  return report;
}

}  // namespace photohdc
