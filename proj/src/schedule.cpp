#include "photohdc/schedule.hpp"

#include <cmath>

namespace photohdc {

namespace {

double ceil_or_exact(double num, double den, ScheduleModel model) {
  return model == ScheduleModel::Discrete ? std::ceil(num / den) : num / den;
}

void finish(ScheduleStats& s, const AcceleratorConfig& c) {
  const double rc = static_cast<double>(c.rows * c.cols);
  s.mzm_modulations = s.unit_cycles * static_cast<double>(c.cols);
  s.dac_conversions = s.unit_tile_updates * rc + s.mzm_modulations;
  s.t_dac_ns = (s.scheme == Scheme::Traditional && c.sharing_active()) ? c.t_dac_ns() : 0.0;
  s.wall_latency_s = s.total_cycles / (c.f_ghz * 1e9) + s.tile_updates * s.t_dac_ns * 1e-9;
}

}  // namespace

std::int64_t cycles_train_per_group(const WorkloadSpec& w, const AcceleratorConfig& c) {
  return ceil_div(w.d, c.cols) * w.dim;
}

std::int64_t cycles_infer_per_batch(const WorkloadSpec& w, const AcceleratorConfig& c) {
  return ceil_div(w.dim, c.cols) * (ceil_div(w.d, c.cols) * c.cols + w.classes);
}

ScheduleStats schedule_training(const WorkloadSpec& w, const AcceleratorConfig& c, ScheduleModel model) {
  w.validate();
  c.validate();
  ScheduleStats s;
  s.mode = Mode::Training;
  s.scheme = w.scheme;
  s.model = model;

  const double R = static_cast<double>(c.rows);
  const double U = static_cast<double>(c.units);
  const double d = static_cast<double>(w.d);
  const double D = static_cast<double>(w.dim);
  const double n = static_cast<double>(w.n_train);
  const double b = static_cast<double>(c.bits);
  const double tiles = static_cast<double>(ceil_div(w.d, c.cols));
  const double per_group = static_cast<double>(cycles_train_per_group(w, c));

  double groups = 0;
  if (model == ScheduleModel::Discrete) {
    for (auto nk : w.per_class) groups += static_cast<double>(ceil_div(nk, c.rows));
  } else {
    groups = n / R;
  }
  const double rounds = ceil_or_exact(groups, U, model);

  s.total_cycles = rounds * per_group;
  s.unit_cycles = groups * per_group;
  const bool per_cycle_tiles = w.scheme != Scheme::Traditional;
  s.tile_updates = per_cycle_tiles ? s.total_cycles : rounds * tiles;
  s.unit_tile_updates = per_cycle_tiles ? s.unit_cycles : groups * tiles;

  s.adc_conversions = s.unit_cycles;
  s.adder_ops = s.unit_cycles;
  // MZM operands for every group; PD operands once per sample (traditional)
  // or once per sample per dimension (record/graph).
  const double pd_operands = per_cycle_tiles ? n * d * D : n * d;
  s.sram_reads_bits = (groups * d * D + pd_operands) * b;
  s.sram_writes_bits = groups * D * 32.0;
  finish(s, c);
  return s;
}

ScheduleStats schedule_inference(const WorkloadSpec& w, const AcceleratorConfig& c, std::int64_t n_queries,
                                 ScheduleModel model) {
  w.validate();
  c.validate();
  if (n_queries < 1) throw ParameterError("n_queries must be >= 1");
  ScheduleStats s;
  s.mode = Mode::Inference;
  s.scheme = w.scheme;
  s.model = model;

  const double R = static_cast<double>(c.rows);
  const double U = static_cast<double>(c.units);
  const double C = static_cast<double>(c.cols);
  const double d = static_cast<double>(w.d);
  const double D = static_cast<double>(w.dim);
  const double K = static_cast<double>(w.classes);
  const double nq = static_cast<double>(n_queries);
  const double b = static_cast<double>(c.bits);
  const double tiles = static_cast<double>(ceil_div(w.d, c.cols));
  const double outer = static_cast<double>(ceil_div(w.dim, c.cols));
  const double per_batch = static_cast<double>(cycles_infer_per_batch(w, c));

  const double batches = ceil_or_exact(nq, R, model);
  const double rounds = ceil_or_exact(batches, U, model);

  s.total_cycles = rounds * per_batch;
  s.unit_cycles = batches * per_batch;
  // Every outer pass reloads the encoded R x C buffer as a PD tile once.
  const bool per_cycle_tiles = w.scheme != Scheme::Traditional;
  const double updates_per_batch = per_cycle_tiles ? outer * (tiles * C + 1) : outer * (tiles + 1);
  s.tile_updates = rounds * updates_per_batch;
  s.unit_tile_updates = batches * updates_per_batch;

  s.adc_conversions = s.unit_cycles * R;
  s.adder_ops = s.unit_cycles * R;
  const double pd_operands = per_cycle_tiles ? nq * d * D : outer * nq * d;
  s.sram_reads_bits = (batches * (D * d + K * D) + pd_operands) * b;
  s.sram_writes_bits = nq * K * 32.0;
  finish(s, c);
  return s;
}

WireDelay wire_delay_check(const AcceleratorConfig& c, const DeviceParams& device) {
  WireDelay w;
  const double length_cm = static_cast<double>(c.cols) * device.pd_pitch_um * 1e-4;
  w.delay_ns = length_cm / device.signal_velocity_cm_per_ns;
  w.period_ns = 1.0 / c.f_ghz;
  w.ok = w.delay_ns < w.period_ns;
  return w;
}

}  // namespace photohdc
