#pragma once

// Self-check suite behind `photohdc validate`.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "photohdc/device.hpp"
#include "photohdc/schedule.hpp"

namespace photohdc {

// The cycle formulas under test. Tests swap in faulty versions to check that
// the suite notices.
struct ValidationHooks {
  std::function<std::int64_t(const WorkloadSpec&, const AcceleratorConfig&)> train_cycles = cycles_train_per_group;
  std::function<std::int64_t(const WorkloadSpec&, const AcceleratorConfig&)> infer_cycles = cycles_infer_per_batch;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool ok() const;
};

struct ValidationOptions {
  std::size_t random_cases = 25;  // per scheme
  std::uint64_t seed = 1;
  const DeviceParams* device = nullptr;  // checked when set
  ValidationHooks hooks;
};

ValidationReport run_validation(const ValidationOptions& options);

}  // namespace photohdc
