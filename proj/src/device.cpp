#include "photohdc/device.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "photohdc/common.hpp"

namespace photohdc {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct Field {
  const char* name;
  double DeviceParams::*member;
};

constexpr Field kScalars[] = {
    {"kappa", &DeviceParams::kappa},
    {"q", &DeviceParams::q},
    {"delta_f", &DeviceParams::delta_f},
    {"responsivity", &DeviceParams::responsivity},
    {"laser_wallplug_eff", &DeviceParams::laser_wallplug_eff},
    {"coupling_loss_db", &DeviceParams::coupling_loss_db},
    {"mzm_insertion_loss_db", &DeviceParams::mzm_insertion_loss_db},
    {"splitter_loss_db", &DeviceParams::splitter_loss_db},
    {"wg_loss_straight_db_per_cm", &DeviceParams::wg_loss_straight_db_per_cm},
    {"wg_loss_bend_db_per_bend_cm_equiv", &DeviceParams::wg_loss_bend_db_per_bend_cm_equiv},
    {"bend_radius_um", &DeviceParams::bend_radius_um},
    {"pd_pitch_um", &DeviceParams::pd_pitch_um},
    {"signal_velocity_cm_per_ns", &DeviceParams::signal_velocity_cm_per_ns},
    {"mzm_mod_energy_fj_per_bit", &DeviceParams::mzm_mod_energy_fj_per_bit},
    {"mzm_tuning_mw", &DeviceParams::mzm_tuning_mw},
    {"tia_energy_fj_per_bit", &DeviceParams::tia_energy_fj_per_bit},
    {"sram_energy_pj_per_32b_access", &DeviceParams::sram_energy_pj_per_32b_access},
    {"adder_energy_pj_per_op", &DeviceParams::adder_energy_pj_per_op},
    {"sram_capacity_kb", &DeviceParams::sram_capacity_kb},
    {"target_node_nm", &DeviceParams::target_node_nm},
    {"energy_node_scale", &DeviceParams::energy_node_scale},
};

struct AreaField {
  const char* name;
  double DeviceAreas::*member;
};

constexpr AreaField kAreas[] = {
    {"dac_mm2", &DeviceAreas::dac_mm2},
    {"adc_mm2", &DeviceAreas::adc_mm2},
    {"mzm_mm2", &DeviceAreas::mzm_mm2},
    {"pd_mm2", &DeviceAreas::pd_mm2},
    {"sram_mm2_per_kb", &DeviceAreas::sram_mm2_per_kb},
    {"adder_mm2", &DeviceAreas::adder_mm2},
    {"tia_mm2", &DeviceAreas::tia_mm2},
};

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + " must be a JSON object", 0);
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ParseError("unknown field '" + where + key + "'", 0);
  }
  for (const auto& key : allowed) {
    if (!obj.contains(key)) throw ParseError("missing field '" + where + key + "'", 0);
  }
}

double number(const json& obj, const std::string& key, const std::string& where) {
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ParseError("field '" + where + key + "' must be a number", 0);
  return v.get<double>();
}

ConverterRef converter_from(const json& obj, const std::string& where) {
  check_keys(obj, {"bits", "energy_pj", "node_nm"}, where);
  const auto& bits = obj.at("bits");
  if (!bits.is_number_integer()) throw ParseError("field '" + where + "bits' must be an integer", 0);
  return {bits.get<int>(), number(obj, "energy_pj", where), number(obj, "node_nm", where)};
}

ordered_json converter_to(const ConverterRef& c) {
  ordered_json j;
  j["bits"] = c.bits;
  j["energy_pj"] = c.energy_pj;
  j["node_nm"] = c.node_nm;
  return j;
}

}  // namespace

void DeviceParams::validate() const {
  auto fail = [](const std::string& field, const std::string& rule) {
    throw ParameterError("device params: field '" + field + "' " + rule);
  };
  for (const auto& f : kScalars) {
    if (!std::isfinite(this->*f.member)) fail(f.name, "must be finite");
  }
  for (const auto& [name, v] : {std::pair{"coupling_loss_db", coupling_loss_db},
                                std::pair{"mzm_insertion_loss_db", mzm_insertion_loss_db},
                                std::pair{"splitter_loss_db", splitter_loss_db},
                                std::pair{"wg_loss_straight_db_per_cm", wg_loss_straight_db_per_cm},
                                std::pair{"wg_loss_bend_db_per_bend_cm_equiv", wg_loss_bend_db_per_bend_cm_equiv}}) {
    if (v < 0.0) fail(name, "must be >= 0 dB");
  }
  if (!(laser_wallplug_eff > 0.0 && laser_wallplug_eff <= 1.0)) fail("laser_wallplug_eff", "must be in (0, 1]");
  for (const auto& [name, v] : {std::pair{"kappa", kappa}, std::pair{"q", q}, std::pair{"delta_f", delta_f},
                                std::pair{"responsivity", responsivity},
                                std::pair{"pd_pitch_um", pd_pitch_um},
                                std::pair{"signal_velocity_cm_per_ns", signal_velocity_cm_per_ns},
                                std::pair{"target_node_nm", target_node_nm},
                                std::pair{"energy_node_scale", energy_node_scale}}) {
    if (!(v > 0.0)) fail(name, "must be > 0");
  }
  for (const auto& [name, v] : {std::pair{"bend_radius_um", bend_radius_um},
                                std::pair{"mzm_mod_energy_fj_per_bit", mzm_mod_energy_fj_per_bit},
                                std::pair{"mzm_tuning_mw", mzm_tuning_mw},
                                std::pair{"tia_energy_fj_per_bit", tia_energy_fj_per_bit},
                                std::pair{"sram_energy_pj_per_32b_access", sram_energy_pj_per_32b_access},
                                std::pair{"adder_energy_pj_per_op", adder_energy_pj_per_op},
                                std::pair{"sram_capacity_kb", sram_capacity_kb}}) {
    if (!(v >= 0.0)) fail(name, "must be >= 0");
  }
  for (const auto& [name, ref] : {std::pair{"dac_ref", dac_ref}, std::pair{"adc_ref", adc_ref}}) {
    if (ref.bits < 1) fail(std::string(name) + ".bits", "must be >= 1");
    if (!(ref.energy_pj >= 0.0) || !std::isfinite(ref.energy_pj)) fail(std::string(name) + ".energy_pj", "must be >= 0");
    if (!(ref.node_nm > 0.0) || !std::isfinite(ref.node_nm)) fail(std::string(name) + ".node_nm", "must be > 0");
  }
  for (const auto& f : kAreas) {
    const double v = areas.*f.member;
    if (!(v > 0.0) || !std::isfinite(v)) fail(std::string("areas.") + f.name, "must be > 0 mm2");
  }
}

double DeviceParams::area_node_scale(const ConverterRef& ref) const {
  const double r = target_node_nm / ref.node_nm;
  return r * r;
}

DeviceParams parse_device_params(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("device params: ") + e.what(), 0);
  }
  std::set<std::string> keys{"version", "dac_ref", "adc_ref", "areas"};
  for (const auto& f : kScalars) keys.insert(f.name);
  check_keys(doc, keys, "");

  DeviceParams p;
  if (!doc.at("version").is_string()) throw ParseError("field 'version' must be a string", 0);
  p.version = doc.at("version").get<std::string>();
  for (const auto& f : kScalars) p.*f.member = number(doc, f.name, "");
  p.dac_ref = converter_from(doc.at("dac_ref"), "dac_ref.");
  p.adc_ref = converter_from(doc.at("adc_ref"), "adc_ref.");

  std::set<std::string> area_keys;
  for (const auto& f : kAreas) area_keys.insert(f.name);
  const auto& areas = doc.at("areas");
  check_keys(areas, area_keys, "areas.");
  for (const auto& f : kAreas) p.areas.*f.member = number(areas, f.name, "areas.");
  return p;
}

std::string dump_device_params(const DeviceParams& p) {
  ordered_json doc;
  doc["version"] = p.version;
  for (const auto& f : kScalars) doc[f.name] = p.*f.member;
  doc["dac_ref"] = converter_to(p.dac_ref);
  doc["adc_ref"] = converter_to(p.adc_ref);
  ordered_json areas;
  for (const auto& f : kAreas) areas[f.name] = p.areas.*f.member;
  doc["areas"] = areas;
  return doc.dump(2) + "\n";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DeviceParams load_device_params(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  try {
    return parse_device_params(text);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

void save_device_params(const DeviceParams& params, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw NotFoundError("cannot write '" + path.string() + "'");
  out << dump_device_params(params);
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace photohdc
