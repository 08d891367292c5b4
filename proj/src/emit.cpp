#include "photohdc/emit.hpp"

#include "json.hpp"

namespace photohdc {

using nlohmann::ordered_json;

namespace {

ordered_json config_json(const AcceleratorConfig& c) {
  ordered_json j;
  j["rows"] = c.rows;
  j["cols"] = c.cols;
  j["units"] = c.units;
  j["f_ghz"] = c.f_ghz;
  j["pds_per_dac"] = c.pds_per_dac;
  j["dac_rate_gsps"] = c.dac_rate_gsps;
  j["t_dac_ns"] = c.sharing_active() ? c.t_dac_ns() : 0.0;
  j["bits"] = c.bits;
  j["dac_sharing_enabled"] = c.sharing_active();
  return j;
}

ordered_json report_obj(const PpaReport& r) {
  ordered_json j;
  j["workload"] = r.workload;
  j["scheme"] = std::string(to_string(r.scheme));
  j["mode"] = std::string(to_string(r.mode));
  j["config"] = config_json(r.config);
  j["latency_s"] = r.latency_s;
  const auto& p = r.power;
  j["power"] = {{"laser_w", p.laser_w},   {"mzm_tuning_w", p.mzm_tuning_w}, {"mzm_modulation_w", p.mzm_modulation_w},
                {"dac_w", p.dac_w},       {"adc_w", p.adc_w},               {"tia_w", p.tia_w},
                {"sram_w", p.sram_w},     {"adder_w", p.adder_w},           {"total_w", p.total_w}};
  j["peak_power_w"] = r.peak_power_w;
  const auto& a = r.area;
  j["area"] = {{"dac_mm2", a.dac_mm2},     {"adc_mm2", a.adc_mm2},     {"mzm_mm2", a.mzm_mm2},
               {"pd_mm2", a.pd_mm2},       {"sram_mm2", a.sram_mm2},   {"adder_mm2", a.adder_mm2},
               {"tia_mm2", a.tia_mm2},     {"total_mm2", a.total_mm2}};
  j["energy_j"] = r.energy_j;
  j["edp_js"] = r.edp_js;
  j["edap_js_mm2"] = r.edap_js_mm2;
  j["wire_delay"] = {{"ok", r.wire.ok}, {"delay_ns", r.wire.delay_ns}, {"period_ns", r.wire.period_ns}};
  if (!r.wire.ok) j["warning"] = "row wire delay exceeds the clock period";
  return j;
}

}  // namespace

std::string report_json(const PpaReport& report) { return report_obj(report).dump(2) + "\n"; }

std::string search_json(const SearchResult& result, Objective objective, const Budgets& budgets) {
  ordered_json j;
  j["objective"] = std::string(to_string(objective));
  j["budgets"] = {{"power_w", budgets.power_w}, {"area_mm2", budgets.area_mm2}};
  j["evaluated_count"] = result.evaluated_count;
  j["feasible_count"] = result.feasible_count;
  if (!result.best) {
    j["status"] = "no feasible design";
    return j.dump(2) + "\n";
  }
  j["status"] = "ok";
  j["best_config"] = config_json(result.best->config);
  j["objective_value"] = result.best->objective;
  j["area_mm2"] = result.best->area_mm2;
  j["max_power_w"] = result.best->max_power_w;
  ordered_json ties = ordered_json::array();
  for (const auto& t : result.ties) ties.push_back(config_json(t));
  j["ties"] = ties;
  ordered_json reports = ordered_json::array();
  for (const auto& r : result.reports) reports.push_back(report_obj(r));
  j["reports"] = reports;
  return j.dump(2) + "\n";
}

}  // namespace photohdc
