#pragma once

#include <cstdint>
#include <string>

#include "photohdc/common.hpp"

namespace photohdc {

// One hardware point: U photonic units of R x C (PD rows x MZM columns).
struct AcceleratorConfig {
  std::int64_t rows = 128;
  std::int64_t cols = 128;
  std::int64_t units = 1;
  double f_ghz = 5.0;
  std::int64_t pds_per_dac = 1;
  double dac_rate_gsps = 10.0;
  int bits = 4;
  bool dac_sharing_enabled = true;

  // Throws ParameterError naming the offending field.
  void validate() const;

  // Tile-update delay in whole ns; 0 when pds_per_dac conversions fit in one
  // clock period.
  double t_dac_ns() const;

  // Sharing is only physically present for traditional encoding.
  bool sharing_active() const { return dac_sharing_enabled && pds_per_dac > 1; }

  // Copy with sharing forced off for record/graph encoding.
  AcceleratorConfig for_scheme(Scheme scheme) const;

  // "128x76, 4 units, 5 GHz, 1 ns"
  std::string label() const;

  bool operator==(const AcceleratorConfig&) const = default;
};

double derive_t_dac(const AcceleratorConfig& config);

// Programming DACs in one unit: ceil(R*C / pds_per_dac) with sharing, R*C without.
std::int64_t programming_dacs_per_unit(const AcceleratorConfig& config);

// All DACs (programming + one per MZM) across U units.
std::int64_t dac_count(const AcceleratorConfig& config);

}  // namespace photohdc
