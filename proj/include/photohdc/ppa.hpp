#pragma once

// Power, area, energy, EDP and EDAP from schedule event counts.

#include <cstdint>

#include "photohdc/config.hpp"
#include "photohdc/device.hpp"
#include "photohdc/schedule.hpp"
#include "photohdc/workload.hpp"

namespace photohdc {

struct PowerBreakdown {
  double laser_w = 0;
  double mzm_tuning_w = 0;
  double mzm_modulation_w = 0;
  double dac_w = 0;
  double adc_w = 0;
  double tia_w = 0;
  double sram_w = 0;
  double adder_w = 0;
  double total_w = 0;

  void sum();
};

struct AreaBreakdown {
  double dac_mm2 = 0;
  double adc_mm2 = 0;
  double mzm_mm2 = 0;
  double pd_mm2 = 0;
  double sram_mm2 = 0;
  double adder_mm2 = 0;
  double tia_mm2 = 0;
  double total_mm2 = 0;

  void sum();
};

struct PpaReport {
  std::string workload;
  Scheme scheme = Scheme::Traditional;
  Mode mode = Mode::Training;
  AcceleratorConfig config;
  double latency_s = 0;
  PowerBreakdown power;  // average over the run
  double peak_power_w = 0;  // max over phases; equals power.total_w unless combined
  AreaBreakdown area;
  double energy_j = 0;
  double edp_js = 0;
  double edap_js_mm2 = 0;
  WireDelay wire;
};

// (kappa * 2^b)^2 * q * delta_f / 4
double required_pd_optical_power(int bits, const DeviceParams& device);
// Coupling, MZM, ceil(log2 R) splitter stages with two bends each, and R PD
// pitches of straight waveguide.
double optical_loss_db(std::int64_t rows, const DeviceParams& device);
double laser_power(const AcceleratorConfig& c, const DeviceParams& device);
// Joules per conversion: ref * 2^(target - ref.bits) * node_scale.
double converter_energy(const ConverterRef& ref, int target_bits, double node_scale);

std::int64_t adc_count(const AcceleratorConfig& c, Mode mode);

PowerBreakdown total_power(const ScheduleStats& stats, const AcceleratorConfig& c, const DeviceParams& device,
                           Mode mode);
AreaBreakdown total_area(const AcceleratorConfig& c, const DeviceParams& device, Mode mode);

// Combined mode runs training then inference on one chip sized for both.
PpaReport ppa_report(const WorkloadSpec& w, const AcceleratorConfig& c, const DeviceParams& device, Mode mode,
                     std::int64_t n_queries = 1'000'000, ScheduleModel model = ScheduleModel::Streamed);

struct CalibrationFit {
  DeviceParams device;
  double sram_energy_pj = 0;
  double converter_multiplier = 0;  // applied to both converter references
  double fitted_total_w = 0;
};

// Fits SRAM energy per access and a common converter-energy multiplier so the
// reference point draws target_w with sram_share of it spent on SRAM.
CalibrationFit calibrate(const DeviceParams& device, const WorkloadSpec& w, const AcceleratorConfig& c,
                         double target_w, double sram_share);

}  // namespace photohdc
