#pragma once

// Published operating points of the accelerator: the EDAP-optimal
// configuration per scheme and mode, with measured latency and power.

#include <span>
#include <string>

#include "photohdc/config.hpp"

namespace photohdc {

struct ReferenceRow {
  Scheme scheme;
  Mode mode;
  const char* dataset;
  AcceleratorConfig config;
  double latency_ms;
  double power_w;
};

std::span<const ReferenceRow> reference_rows();

// The configuration listed for a scheme and mode (same for every dataset).
AcceleratorConfig reference_config(Scheme scheme, Mode mode);

inline constexpr std::int64_t kReferenceQueries = 1'000'000;

}  // namespace photohdc
