#include <random>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "photohdc/golden.hpp"
#include "photohdc/schedule.hpp"
#include "photohdc/workload.hpp"

using namespace photohdc;
using namespace photohdc::hdc;

namespace {

AcceleratorConfig small(std::int64_t r, std::int64_t c, std::int64_t u = 1) {
  AcceleratorConfig a;
  a.rows = r;
  a.cols = c;
  a.units = u;
  return a;
}

LabeledDataset make_data(std::mt19937_64& gen, std::size_t d, std::size_t k, std::size_t per_class) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LabeledDataset data;
  data.num_classes = k;
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < per_class; ++i) {
      Sample s{std::vector<double>(d), c};
      for (auto& x : s.features) x = u(gen) + static_cast<double>(c);
      data.samples.push_back(s);
    }
  }
  return data;
}

// Checks the per-event datapath arithmetic.
struct EventChecker {
  std::int64_t rows, cols;
  std::size_t bad = 0, events = 0;
  void operator()(const TileTraceEvent& e) {
    ++events;
    if (e.mzm.size() != static_cast<std::size_t>(cols) || e.pd.size() != static_cast<std::size_t>(rows * cols) ||
        e.row_outputs.size() != static_cast<std::size_t>(rows)) {
      ++bad;
      return;
    }
    std::int64_t total = 0;
    for (std::int64_t r = 0; r < rows; ++r) {
      std::int64_t acc = 0;
      for (std::int64_t c = 0; c < cols; ++c) acc += e.pd[r * cols + c] * e.mzm[c];
      if (acc != e.row_outputs[r]) ++bad;
      total += acc;
    }
    if (e.switch_path == SwitchPath::TrainingBundle && total != e.bundled_output) ++bad;
  }
};

}  // namespace

TEST_CASE("golden training matches train_single_pass") {
  std::mt19937_64 gen(10);
  const auto data = make_data(gen, 10, 2, 4);
  const auto m = generate_model(Scheme::Traditional, 10, 16, 0, 3, data.feature_ranges());
  const auto core = train_single_pass(data, m, 4);
  const auto golden = golden_train(m, data, small(4, 4), 4);
  CHECK(golden.chvs == core.chvs);
  CHECK(golden.scales == core.scales);
}

TEST_CASE("golden inference matches the core similarity scores") {
  std::mt19937_64 gen(11);
  const auto data = make_data(gen, 6, 2, 3);
  const auto m = generate_model(Scheme::Record, 6, 24, 4, 5, data.feature_ranges());
  const auto core = train_single_pass(data, m, 4);
  std::vector<std::vector<double>> queries;
  for (int i = 0; i < 4; ++i) queries.push_back(data.samples[i].features);
  const auto gi = golden_infer(m, core, queries, small(3, 4));
  for (std::size_t n = 0; n < queries.size(); ++n) {
    const auto q = quantize_query(core, encode_sample(m, queries[n], 4));
    CHECK(gi.scores[n] == similarity_scores(core, q));
    CHECK(gi.predictions[n] == classify(core, q));
  }
}

TEST_CASE("single tile of ones bundles to R*C") {
  auto m = generate_model(Scheme::Traditional, 4, 1, 0, 1, std::vector<FeatureRange>(4, {0.0, 15.0}));
  for (auto& row : m.base) row[0] = 1;
  LabeledDataset data;
  data.num_classes = 1;
  for (int i = 0; i < 4; ++i) data.samples.push_back({{1, 1, 1, 1}, 0});
  std::vector<TileTraceEvent> events;
  golden_train(m, data, small(4, 4), 4, [&](const TileTraceEvent& e) { events.push_back(e); });
  REQUIRE(events.size() == 1);
  CHECK(events[0].bundled_output == 16);
  CHECK(events[0].tile_update);
  CHECK(events[0].switch_path == SwitchPath::TrainingBundle);
}

TEST_CASE("every trace event obeys the row and bundle sums") {
  std::mt19937_64 gen(12);
  for (int t = 0; t < 30; ++t) {
    const auto scheme = static_cast<Scheme>(t % 2);
    const std::size_t d = 1 + gen() % 20;
    const auto data = make_data(gen, d, 1 + gen() % 3, 1 + gen() % 5);
    const auto m = generate_model(scheme, d, 1 + gen() % 40, 4, gen(), data.feature_ranges());
    const auto c = small(1 + gen() % 6, 1 + gen() % 6, 1 + gen() % 2);
    EventChecker train{c.rows, c.cols};
    const auto core = train_single_pass(data, m, 4);
    golden_train(m, data, c, 4, std::ref(train));
    EventChecker infer{c.rows, c.cols};
    std::vector<std::vector<double>> qs;
    for (const auto& s : data.samples) qs.push_back(s.features);
    golden_infer(m, core, qs, c, std::ref(infer));
    CHECK(train.bad == 0);
    CHECK(infer.bad == 0);
    CHECK(train.events > 0);
    CHECK(infer.events > 0);
  }
}

TEST_CASE("trace recount agrees with the discrete schedule") {
  std::mt19937_64 gen(13);
  for (int t = 0; t < 40; ++t) {
    const auto scheme = static_cast<Scheme>(t % 2);
    const std::size_t d = 1 + gen() % 20;
    const auto data = make_data(gen, d, 1 + gen() % 3, 1 + gen() % 7);
    const auto m = generate_model(scheme, d, 1 + gen() % 40, 4, gen(), data.feature_ranges());
    const auto c = small(1 + gen() % 6, 1 + gen() % 6, 1 + gen() % 3);
    const auto w = workload_from(data, scheme, static_cast<std::int64_t>(m.dim));

    TraceCounter tc(c);
    golden_train(m, data, c, 4, std::ref(tc));
    const auto s = schedule_training(w, c, ScheduleModel::Discrete);
    CHECK(tc.contiguous());
    CHECK(static_cast<double>(tc.critical_cycles()) == s.total_cycles);
    CHECK(static_cast<double>(tc.events()) == s.unit_cycles);
    CHECK(static_cast<double>(tc.critical_tile_updates()) == s.tile_updates);
    CHECK(static_cast<double>(tc.dac_conversions()) == s.dac_conversions);
    CHECK(static_cast<double>(tc.adc_conversions()) == s.adc_conversions);
    CHECK(static_cast<double>(tc.mzm_modulations()) == s.mzm_modulations);

    const auto core = train_single_pass(data, m, 4);
    std::vector<std::vector<double>> qs;
    for (const auto& smp : data.samples) qs.push_back(smp.features);
    TraceCounter ic(c);
    golden_infer(m, core, qs, c, std::ref(ic));
    const auto si = schedule_inference(w, c, static_cast<std::int64_t>(qs.size()), ScheduleModel::Discrete);
    CHECK(ic.contiguous());
    CHECK(static_cast<double>(ic.critical_cycles()) == si.total_cycles);
    CHECK(static_cast<double>(ic.events()) == si.unit_cycles);
    CHECK(static_cast<double>(ic.critical_tile_updates()) == si.tile_updates);
    CHECK(static_cast<double>(ic.dac_conversions()) == si.dac_conversions);
    CHECK(static_cast<double>(ic.adc_conversions()) == si.adc_conversions);
    CHECK(static_cast<double>(ic.mzm_modulations()) == si.mzm_modulations);
  }
}

TEST_CASE("graph golden model") {
  const auto graphs = synth_graphs(12, 2, 6, 2.0, 4);
  std::size_t v = 0;
  for (const auto& g : graphs) v = std::max(v, g.vertex_count);
  const auto m = generate_model(Scheme::Graph, v, 32, 2, 9);
  const auto core = train_single_pass(graphs, 2, m, 4);
  const auto golden = golden_train(m, graphs, 2, small(3, 4, 2), 4);
  CHECK(golden.chvs == core.chvs);
  const auto gi = golden_infer(m, core, graphs, small(3, 4, 2));
  for (std::size_t n = 0; n < graphs.size(); ++n) {
    const auto q = quantize_query(core, encode_graph(m, graphs[n]));
    CHECK(gi.dots[n] == dot_scores(core, q));
  }
}

TEST_CASE("trace events export as newline-delimited JSON") {
  TileTraceEvent e;
  e.cycle = 3;
  e.unit = 1;
  e.mzm = {1, -1};
  e.pd = {1, 2, 3, 4};
  e.row_outputs = {-1, -1};
  e.bundled_output = -2;
  e.tile_update = true;
  const auto line = to_ndjson(e);
  CHECK(line.find('\n') == std::string::npos);
  const auto j = nlohmann::json::parse(line);
  CHECK(j["cycle"] == 3);
  CHECK(j["unit"] == 1);
  CHECK(j["mzm"] == nlohmann::json::array({1, -1}));
  CHECK(j["pd"] == nlohmann::json::parse("[[1,2],[3,4]]"));
  CHECK(j["switch_path"] == "TrainingBundle");
  CHECK(j["bundled_output"] == -2);

  std::vector<TileTraceEvent> two{e, e};
  two[1].switch_path = SwitchPath::InferenceRows;
  std::ostringstream os;
  write_ndjson(os, two);
  std::istringstream in(os.str());
  std::string l1, l2;
  std::getline(in, l1);
  std::getline(in, l2);
  CHECK(nlohmann::json::parse(l2)["row_outputs"] == nlohmann::json::array({-1, -1}));
  CHECK(nlohmann::json::parse(l2)["switch_path"] == "InferenceRows");
}
