#include "photohdc/ppa.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace photohdc {

void PowerBreakdown::sum() {
  total_w = laser_w + mzm_tuning_w + mzm_modulation_w + dac_w + adc_w + tia_w + sram_w + adder_w;
}

void AreaBreakdown::sum() {
  total_mm2 = dac_mm2 + adc_mm2 + mzm_mm2 + pd_mm2 + sram_mm2 + adder_mm2 + tia_mm2;
}

double required_pd_optical_power(int bits, const DeviceParams& device) {
  if (bits < 1) throw ParameterError("bits must be >= 1");
  const double snr = std::ldexp(1.0, bits);
  const double k = device.kappa * snr;
  return k * k * device.q * device.delta_f / 4.0;
}

double optical_loss_db(std::int64_t rows, const DeviceParams& device) {
  const double stages = rows > 1 ? std::ceil(std::log2(static_cast<double>(rows))) : 0.0;
  const double straight_cm = static_cast<double>(rows) * device.pd_pitch_um * 1e-4;
  const double bend_cm = std::numbers::pi / 2.0 * device.bend_radius_um * 1e-4;
  return device.coupling_loss_db + device.mzm_insertion_loss_db + stages * device.splitter_loss_db +
         straight_cm * device.wg_loss_straight_db_per_cm +
         2.0 * stages * bend_cm * device.wg_loss_bend_db_per_bend_cm_equiv;
}

double laser_power(const AcceleratorConfig& c, const DeviceParams& device) {
  const double per_column_optical = required_pd_optical_power(c.bits, device) * static_cast<double>(c.rows) *
                                    std::pow(10.0, optical_loss_db(c.rows, device) / 10.0);
  return per_column_optical / device.laser_wallplug_eff * static_cast<double>(c.cols * c.units);
}

double converter_energy(const ConverterRef& ref, int target_bits, double node_scale) {
  if (target_bits < 1) throw ParameterError("target_bits must be >= 1");
  return ref.energy_pj * 1e-12 * std::ldexp(1.0, target_bits - ref.bits) * node_scale;
}

std::int64_t adc_count(const AcceleratorConfig& c, Mode mode) {
  return c.units * (mode == Mode::Training ? 1 : c.rows + 1);
}

PowerBreakdown total_power(const ScheduleStats& stats, const AcceleratorConfig& c, const DeviceParams& device,
                           Mode mode) {
  if (mode == Mode::Combined || stats.mode != mode) {
    throw ParameterError("total_power: schedule is for " + std::string(to_string(stats.mode)) + ", asked for " +
                         std::string(to_string(mode)));
  }
  PowerBreakdown p;
  p.laser_w = laser_power(c, device);
  p.mzm_tuning_w = device.mzm_tuning_mw * 1e-3 * static_cast<double>(c.cols * c.units);
  const double t = stats.wall_latency_s;
  if (t > 0.0) {
    const double b = static_cast<double>(c.bits);
    p.mzm_modulation_w = stats.mzm_modulations * b * device.mzm_mod_energy_fj_per_bit * 1e-15 / t;
    p.dac_w = stats.dac_conversions * converter_energy(device.dac_ref, c.bits, device.energy_node_scale) / t;
    p.adc_w = stats.adc_conversions * converter_energy(device.adc_ref, c.bits, device.energy_node_scale) / t;
    p.tia_w = stats.adc_conversions * b * device.tia_energy_fj_per_bit * 1e-15 / t;
    p.sram_w = (stats.sram_reads_bits + stats.sram_writes_bits) / 32.0 * device.sram_energy_pj_per_32b_access *
               1e-12 / t;
    p.adder_w = stats.adder_ops * device.adder_energy_pj_per_op * 1e-12 / t;
  }
  p.sum();
  return p;
}

AreaBreakdown total_area(const AcceleratorConfig& c, const DeviceParams& device, Mode mode) {
  AreaBreakdown a;
  const auto adcs = static_cast<double>(adc_count(c, mode));
  const auto& ar = device.areas;
  a.dac_mm2 = static_cast<double>(dac_count(c)) * ar.dac_mm2 * device.area_node_scale(device.dac_ref);
  a.adc_mm2 = adcs * ar.adc_mm2 * device.area_node_scale(device.adc_ref);
  a.mzm_mm2 = static_cast<double>(c.cols * c.units) * ar.mzm_mm2;
  a.pd_mm2 = static_cast<double>(c.rows * c.cols * c.units) * ar.pd_mm2;
  a.sram_mm2 = device.sram_capacity_kb * ar.sram_mm2_per_kb;
  // f adders behind every ADC keep up with the clock.
  a.adder_mm2 = adcs * std::ceil(c.f_ghz) * ar.adder_mm2;
  a.tia_mm2 = adcs * ar.tia_mm2;
  a.sum();
  return a;
}

namespace {

void finish_report(PpaReport& r) {
  r.energy_j = r.power.total_w * r.latency_s;
  r.edp_js = r.energy_j * r.latency_s;
  r.edap_js_mm2 = r.edp_js * r.area.total_mm2;
}

}  // namespace

PpaReport ppa_report(const WorkloadSpec& w, const AcceleratorConfig& config, const DeviceParams& device, Mode mode,
                     std::int64_t n_queries, ScheduleModel model) {
  const AcceleratorConfig c = config.for_scheme(w.scheme);
  c.validate();
  PpaReport r;
  r.workload = w.name;
  r.scheme = w.scheme;
  r.mode = mode;
  r.config = c;
  r.area = total_area(c, device, mode);
  r.wire = wire_delay_check(c, device);

  if (mode != Mode::Combined) {
    const auto stats = mode == Mode::Training ? schedule_training(w, c, model)
                                              : schedule_inference(w, c, n_queries, model);
    r.latency_s = stats.wall_latency_s;
    r.power = total_power(stats, c, device, mode);
    r.peak_power_w = r.power.total_w;
    finish_report(r);
    return r;
  }

  const auto tr = schedule_training(w, c, model);
  const auto inf = schedule_inference(w, c, n_queries, model);
  const auto ptr = total_power(tr, c, device, Mode::Training);
  const auto pin = total_power(inf, c, device, Mode::Inference);
  const double t1 = tr.wall_latency_s, t2 = inf.wall_latency_s;
  r.latency_s = t1 + t2;
  auto mix = [&](double PowerBreakdown::*m) { return (ptr.*m * t1 + pin.*m * t2) / r.latency_s; };
  for (auto m : {&PowerBreakdown::laser_w, &PowerBreakdown::mzm_tuning_w, &PowerBreakdown::mzm_modulation_w,
                 &PowerBreakdown::dac_w, &PowerBreakdown::adc_w, &PowerBreakdown::tia_w, &PowerBreakdown::sram_w,
                 &PowerBreakdown::adder_w}) {
    r.power.*m = mix(m);
  }
  r.power.sum();
  r.peak_power_w = std::max(ptr.total_w, pin.total_w);
  finish_report(r);
  return r;
}

CalibrationFit calibrate(const DeviceParams& device, const WorkloadSpec& w, const AcceleratorConfig& c,
                         double target_w, double sram_share) {
  if (!(target_w > 0.0)) throw ParameterError("calibration target must be > 0 W");
  if (!(sram_share >= 0.0 && sram_share < 1.0)) throw ParameterError("SRAM share must be in [0, 1)");
  const AcceleratorConfig cfg = c.for_scheme(w.scheme);
  const auto stats = schedule_training(w, cfg);

  // Total power is affine in both unknowns; probe the two slopes.
  auto total_with = [&](double sram_pj, double conv_mult) {
    DeviceParams d = device;
    d.sram_energy_pj_per_32b_access = sram_pj;
    d.dac_ref.energy_pj *= conv_mult;
    d.adc_ref.energy_pj *= conv_mult;
    return total_power(stats, cfg, d, Mode::Training);
  };
  const double base = total_with(0.0, 0.0).total_w;
  const double sram_slope = total_with(1.0, 0.0).sram_w;
  const double conv_slope = total_with(0.0, 1.0).total_w - base;
  if (!(sram_slope > 0.0) || !(conv_slope > 0.0)) {
    throw ParameterError("calibration: reference point has no SRAM or converter activity");
  }

  CalibrationFit fit;
  fit.sram_energy_pj = sram_share * target_w / sram_slope;
  fit.converter_multiplier = (target_w - base - sram_share * target_w) / conv_slope;
  if (fit.converter_multiplier <= 0.0) {
    throw ParameterError("calibration: static and fixed terms already exceed the target; no positive converter "
                         "energy fits");
  }
  fit.device = device;
  fit.device.sram_energy_pj_per_32b_access = fit.sram_energy_pj;
  fit.device.dac_ref.energy_pj *= fit.converter_multiplier;
  fit.device.adc_ref.energy_pj *= fit.converter_multiplier;
  fit.fitted_total_w = total_power(stats, cfg, fit.device, Mode::Training).total_w;
  return fit;
}

}  // namespace photohdc
