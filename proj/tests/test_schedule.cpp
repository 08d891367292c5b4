#include <cmath>
#include <random>

#include "doctest.h"
#include "photohdc/config.hpp"
#include "photohdc/device.hpp"
#include "photohdc/reference.hpp"
#include "photohdc/schedule.hpp"
#include "photohdc/workload.hpp"

using namespace photohdc;

namespace {

WorkloadSpec shape(std::int64_t d, std::int64_t k, std::int64_t n, std::int64_t dim = 4096,
                   Scheme s = Scheme::Traditional) {
  WorkloadSpec w;
  w.name = "w";
  w.d = d;
  w.classes = k;
  w.n_train = n;
  w.per_class = class_balance(n, k);
  w.dim = dim;
  w.scheme = s;
  return w;
}

AcceleratorConfig cfg(std::int64_t r, std::int64_t c, std::int64_t u = 1, double f = 5.0, std::int64_t pds = 1) {
  AcceleratorConfig a;
  a.rows = r;
  a.cols = c;
  a.units = u;
  a.f_ghz = f;
  a.pds_per_dac = pds;
  return a;
}

double rel(double got, double want) { return std::abs(got - want) / want; }

const DeviceParams& device() {
  static const DeviceParams d = load_device_params(PHOTOHDC_DATA_DIR "/device_params_default.json");
  return d;
}

}  // namespace

TEST_CASE("cycles_train_per_group") {
  CHECK(cycles_train_per_group(shape(617, 26, 6238), cfg(128, 76)) == 36864);
  CHECK(cycles_train_per_group(shape(20, 2, 10), cfg(8, 32)) == 4096);
  CHECK(cycles_train_per_group(shape(75, 5, 611142), cfg(128, 76)) == 4096);
}

TEST_CASE("cycles_infer_per_batch") {
  CHECK(cycles_infer_per_batch(shape(617, 26, 6238), cfg(128, 128)) == 21312);
  WorkloadSpec degenerate = shape(8, 1, 1, 16);
  degenerate.classes = 0;
  CHECK(cycles_infer_per_batch(degenerate, cfg(4, 16)) == 16);
  CHECK(cycles_infer_per_batch(shape(75, 5, 611142), cfg(128, 128)) == 4256);
}

TEST_CASE("training schedule structure") {
  SUBCASE("one sample runs one group") {
    const auto s = schedule_training(shape(10, 1, 1), cfg(128, 76), ScheduleModel::Discrete);
    CHECK(s.total_cycles == 4096);
    CHECK(s.tile_updates == 1);
  }
  SUBCASE("per-class groups and rounds") {
    const auto w = shape(200, 3, 10, 64);  // per class 4,3,3
    const auto c = cfg(2, 64, 2);
    const auto s = schedule_training(w, c, ScheduleModel::Discrete);
    const double groups = 2 + 2 + 2;
    const double rounds = std::ceil(groups / 2);
    const double per = std::ceil(200.0 / 64) * 64;
    CHECK(s.total_cycles == rounds * per);
    CHECK(s.unit_cycles == groups * per);
    CHECK(s.tile_updates == rounds * 4);
    CHECK(s.mzm_modulations == s.unit_cycles * 64);
    CHECK(s.dac_conversions == s.unit_tile_updates * 2 * 64 + s.mzm_modulations);
    CHECK(s.adc_conversions == s.unit_cycles);
  }
  SUBCASE("streamed model amortizes padding") {
    const auto w = shape(617, 26, 6238);
    const auto c = cfg(128, 76, 4);
    const auto s = schedule_training(w, c);
    CHECK(s.total_cycles == doctest::Approx(6238.0 / 128 / 4 * 36864));
    CHECK(schedule_training(w, c, ScheduleModel::Discrete).total_cycles >= s.total_cycles);
  }
  SUBCASE("record refreshes the tile every cycle") {
    for (Scheme sc : {Scheme::Record, Scheme::Graph}) {
      for (auto model : {ScheduleModel::Streamed, ScheduleModel::Discrete}) {
        const auto s = schedule_training(shape(300, 3, 1000, 4096, sc), cfg(64, 16, 2), model);
        CHECK(s.tile_updates == s.total_cycles);
        CHECK(s.unit_tile_updates == s.unit_cycles);
      }
    }
  }
}

TEST_CASE("inference schedule structure") {
  const auto w = shape(617, 26, 6238);
  const auto c = cfg(128, 128, 1);
  const auto one = schedule_inference(w, c, 128, ScheduleModel::Discrete);
  CHECK(one.total_cycles == cycles_infer_per_batch(w, c));
  CHECK(one.tile_updates == 32 * (5 + 1));
  CHECK(one.adc_conversions == one.total_cycles * 128);
  CHECK_THROWS_AS(schedule_inference(w, c, 0), ParameterError);
}

TEST_CASE("reference training latencies") {
  const auto isolet = make_workload(find_builtin("ISOLET"), Scheme::Traditional);
  CHECK(rel(schedule_training(isolet, reference_config(Scheme::Traditional, Mode::Training)).wall_latency_s,
            0.09e-3) <= 0.10);
  const auto rec = make_workload(find_builtin("ISOLET"), Scheme::Record);
  CHECK(rel(schedule_training(rec, reference_config(Scheme::Record, Mode::Training)).wall_latency_s, 0.7e-3) <=
        0.15);
}

TEST_CASE("reference inference latencies") {
  const auto c = reference_config(Scheme::Traditional, Mode::Inference);
  for (auto [name, ms] : {std::pair{"ISOLET", 8.71}, std::pair{"PAMAP", 1.8}, std::pair{"PECAN", 5.1}}) {
    CAPTURE(name);
    const auto w = make_workload(find_builtin(name), Scheme::Traditional);
    CHECK(rel(schedule_inference(w, c, 1'000'000).wall_latency_s, ms * 1e-3) <= 0.10);
  }
}

TEST_CASE("wall latency identity") {
  std::mt19937_64 gen(3);
  for (int t = 0; t < 200; ++t) {
    const auto w = shape(1 + gen() % 700, 1 + gen() % 20, 1 + gen() % 50000, 1 + gen() % 8192);
    const auto c = cfg(1 + gen() % 128, 1 + gen() % 128, 1 + gen() % 4, 1.0 + gen() % 5, 1 + gen() % 16);
    for (const auto& s : {schedule_training(w, c), schedule_inference(w, c, 1 + gen() % 100000)}) {
      const double want = s.total_cycles / (c.f_ghz * 1e9) + s.tile_updates * derive_t_dac(c) * 1e-9;
      CHECK(s.wall_latency_s == doctest::Approx(want).epsilon(1e-12));
      CHECK(s.total_cycles >= 0);
      CHECK(s.dac_conversions >= 0);
      CHECK(s.sram_reads_bits >= 0);
    }
  }
}

TEST_CASE("record and graph never pay the sharing delay") {
  auto c = cfg(128, 128, 1, 5.0, 8);
  const auto w = make_workload(find_builtin("ISOLET"), Scheme::Record);
  CHECK(schedule_training(w, c).t_dac_ns == 0);
  CHECK(c.for_scheme(Scheme::Record).dac_sharing_enabled == false);
  CHECK(c.for_scheme(Scheme::Traditional) == c);
}

TEST_CASE("training cycles are monotone in R, C and U") {
  std::mt19937_64 gen(44);
  for (int t = 0; t < 300; ++t) {
    const auto w = shape(1 + gen() % 700, 1 + gen() % 10, 1 + gen() % 20000, 64 * (1 + gen() % 64),
                         static_cast<Scheme>(gen() % 3));
    const auto c = cfg(1 + gen() % 127, 1 + gen() % 127, 1 + gen() % 3);
    for (auto model : {ScheduleModel::Streamed, ScheduleModel::Discrete}) {
      const double base = schedule_training(w, c, model).total_cycles;
      auto r = c;
      r.rows += 1;
      auto k = c;
      k.cols += 1;
      auto u = c;
      u.units += 1;
      CHECK(schedule_training(w, r, model).total_cycles <= base);
      CHECK(schedule_training(w, k, model).total_cycles <= base);
      CHECK(schedule_training(w, u, model).total_cycles <= base);
    }
  }
}

TEST_CASE("inference cycles are monotone in R and U") {
  std::mt19937_64 gen(45);
  for (int t = 0; t < 300; ++t) {
    const auto w = shape(1 + gen() % 700, 1 + gen() % 10, 100, 64 * (1 + gen() % 64));
    const auto c = cfg(1 + gen() % 127, 1 + gen() % 127, 1 + gen() % 3);
    const auto nq = static_cast<std::int64_t>(1 + gen() % 100000);
    for (auto model : {ScheduleModel::Streamed, ScheduleModel::Discrete}) {
      const double base = schedule_inference(w, c, nq, model).total_cycles;
      auto r = c;
      r.rows += 1;
      auto u = c;
      u.units += 1;
      CHECK(schedule_inference(w, r, nq, model).total_cycles <= base);
      CHECK(schedule_inference(w, u, nq, model).total_cycles <= base);
    }
  }
}

TEST_CASE("dac_count and derive_t_dac") {
  CHECK(programming_dacs_per_unit(cfg(128, 128, 1, 5, 6)) == 2731);
  CHECK(programming_dacs_per_unit(cfg(128, 128, 1, 5, 1)) == 128 * 128);
  CHECK(programming_dacs_per_unit(cfg(128, 128, 1, 5, 8)) == 2048);
  CHECK(dac_count(cfg(128, 128, 3, 5, 8)) == 3 * (2048 + 128));

  CHECK(derive_t_dac(cfg(128, 128, 1, 5, 6)) == 1.0);
  CHECK(derive_t_dac(cfg(128, 128, 1, 5, 2)) == 0.0);
  CHECK(derive_t_dac(cfg(128, 128, 1, 5, 16)) == 2.0);
  CHECK(derive_t_dac(cfg(128, 128, 1, 5, 10)) == 1.0);
  CHECK(derive_t_dac(cfg(128, 128, 1, 5, 1)) == 0.0);
}

TEST_CASE("sharing at 8 PDs per DAC costs at most 2% latency") {
  for (const auto& w : builtin_workloads(Scheme::Traditional)) {
    CAPTURE(w.name);
    const double plain = schedule_training(w, cfg(128, 76, 4, 5, 1)).wall_latency_s;
    const double shared = schedule_training(w, cfg(128, 76, 4, 5, 8)).wall_latency_s;
    CHECK((shared - plain) / plain <= 0.02);
    CHECK(shared >= plain);
  }
}

TEST_CASE("wire_delay_check") {
  const auto ok = wire_delay_check(cfg(128, 128), device());
  CHECK(ok.ok);
  CHECK(ok.delay_ns == doctest::Approx(0.04).epsilon(0.02));
  CHECK(ok.period_ns == doctest::Approx(0.2));
  const double too_fast = 1.2 / ok.delay_ns;
  CHECK_FALSE(wire_delay_check(cfg(128, 128, 1, too_fast), device()).ok);
  CHECK(wire_delay_check(cfg(128, 1, 1, 10.0), device()).ok);
}

TEST_CASE("config validation names the field") {
  for (auto [field, c] : {std::pair{"rows", cfg(0, 4)}, std::pair{"cols", cfg(4, 0)}, std::pair{"units", cfg(4, 4, 0)},
                          std::pair{"f_ghz", cfg(4, 4, 1, 0.0)}, std::pair{"pds_per_dac", cfg(4, 4, 1, 5, 0)}}) {
    CAPTURE(field);
    try {
      c.validate();
      FAIL("accepted");
    } catch (const ParameterError& e) {
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  }
  CHECK(cfg(128, 76, 4, 5, 10).label() == "128x76, 4 units, 5 GHz, 1 ns");
}
