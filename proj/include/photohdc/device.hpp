#pragma once

// Physical constants registry. Every number the power/area model uses comes
// from a DeviceParams document; nothing is hard-coded in the model.

#include <filesystem>
#include <string>

namespace photohdc {

struct ConverterRef {
  int bits = 0;
  double energy_pj = 0.0;  // per conversion at the reference resolution
  double node_nm = 0.0;    // process node the energy and area were reported at
  bool operator==(const ConverterRef&) const = default;
};

struct DeviceAreas {
  double dac_mm2 = 0.0;  // at dac_ref.node_nm
  double adc_mm2 = 0.0;  // at adc_ref.node_nm
  double mzm_mm2 = 0.0;
  double pd_mm2 = 0.0;
  double sram_mm2_per_kb = 0.0;
  double adder_mm2 = 0.0;
  double tia_mm2 = 0.0;
  bool operator==(const DeviceAreas&) const = default;
};

struct DeviceParams {
  std::string version;

  double kappa = 0.0;
  double q = 0.0;
  double delta_f = 0.0;  // Hz
  double responsivity = 0.0;
  double laser_wallplug_eff = 0.0;

  double coupling_loss_db = 0.0;
  double mzm_insertion_loss_db = 0.0;
  double splitter_loss_db = 0.0;
  double wg_loss_straight_db_per_cm = 0.0;
  double wg_loss_bend_db_per_bend_cm_equiv = 0.0;
  double bend_radius_um = 0.0;
  double pd_pitch_um = 0.0;
  double signal_velocity_cm_per_ns = 0.0;

  double mzm_mod_energy_fj_per_bit = 0.0;
  double mzm_tuning_mw = 0.0;
  double tia_energy_fj_per_bit = 0.0;
  ConverterRef dac_ref;
  ConverterRef adc_ref;
  double sram_energy_pj_per_32b_access = 0.0;
  double adder_energy_pj_per_op = 0.0;

  DeviceAreas areas;
  double sram_capacity_kb = 0.0;
  double target_node_nm = 0.0;
  double energy_node_scale = 1.0;

  // Throws ParameterError whose message names the first bad field.
  void validate() const;

  // Fixed-voltage area scaling from a converter's reference node to the target.
  double area_node_scale(const ConverterRef& ref) const;

  bool operator==(const DeviceParams&) const = default;
};

// Strict JSON I/O: every field is required, unknown fields are rejected.
DeviceParams parse_device_params(const std::string& json_text);
std::string dump_device_params(const DeviceParams& params);
DeviceParams load_device_params(const std::filesystem::path& path);
void save_device_params(const DeviceParams& params, const std::filesystem::path& path);

// 64-bit FNV-1a over raw bytes, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);
std::string read_file(const std::filesystem::path& path);

}  // namespace photohdc
