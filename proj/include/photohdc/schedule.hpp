#pragma once

// Cycle-level accounting of the training and inference dataflows.

#include <cstdint>

#include "photohdc/common.hpp"
#include "photohdc/config.hpp"
#include "photohdc/device.hpp"
#include "photohdc/workload.hpp"

namespace photohdc {

// Discrete: per-class groups of R samples (last one zero padded), whole
// rounds of U groups. Streamed: samples stream through the units back to
// back, so a run costs n / (R*U) group times. Discrete is what the golden
// simulator executes; Streamed is the pipelined steady state.
enum class ScheduleModel { Streamed, Discrete };

struct ScheduleStats {
  Mode mode = Mode::Training;
  Scheme scheme = Scheme::Traditional;
  ScheduleModel model = ScheduleModel::Streamed;

  // Critical path (one unit).
  double total_cycles = 0;
  double tile_updates = 0;
  // Summed over all units.
  double unit_cycles = 0;
  double unit_tile_updates = 0;

  double dac_conversions = 0;
  double adc_conversions = 0;
  double mzm_modulations = 0;
  double sram_reads_bits = 0;
  double sram_writes_bits = 0;
  double adder_ops = 0;

  double t_dac_ns = 0;  // applied per tile update, 0 without sharing
  double wall_latency_s = 0;
};

// ceil(d/C) * D
std::int64_t cycles_train_per_group(const WorkloadSpec& w, const AcceleratorConfig& c);
// ceil(D/C) * (ceil(d/C)*C + K)
std::int64_t cycles_infer_per_batch(const WorkloadSpec& w, const AcceleratorConfig& c);

ScheduleStats schedule_training(const WorkloadSpec& w, const AcceleratorConfig& c,
                                ScheduleModel model = ScheduleModel::Streamed);
ScheduleStats schedule_inference(const WorkloadSpec& w, const AcceleratorConfig& c, std::int64_t n_queries,
                                 ScheduleModel model = ScheduleModel::Streamed);

struct WireDelay {
  bool ok = true;
  double delay_ns = 0;
  double period_ns = 0;
};

// Row wire of C PD pitches must settle within one clock period.
WireDelay wire_delay_check(const AcceleratorConfig& c, const DeviceParams& device);

}  // namespace photohdc
