#include "photohdc/config.hpp"

#include <cmath>
#include <sstream>

namespace photohdc {

void AcceleratorConfig::validate() const {
  auto positive = [](std::int64_t v, const char* name) {
    if (v < 1) throw ParameterError(std::string(name) + " must be >= 1, got " + std::to_string(v));
  };
  positive(rows, "rows");
  positive(cols, "cols");
  positive(units, "units");
  positive(pds_per_dac, "pds_per_dac");
  if (!(f_ghz > 0.0) || !std::isfinite(f_ghz)) throw ParameterError("f_ghz must be > 0");
  if (!(dac_rate_gsps > 0.0) || !std::isfinite(dac_rate_gsps)) throw ParameterError("dac_rate_gsps must be > 0");
  if (bits < 1 || bits > 16) throw ParameterError("bits must be in [1, 16], got " + std::to_string(bits));
}

double derive_t_dac(const AcceleratorConfig& config) {
  if (!(config.dac_rate_gsps > 0.0)) throw ParameterError("dac_rate_gsps must be > 0");
  const double pds = static_cast<double>(config.pds_per_dac);
  // pds / rate <= 1 / f, compared without the divisions.
  if (pds * config.f_ghz <= config.dac_rate_gsps * (1.0 + 1e-12)) return 0.0;
  return std::ceil(pds / config.dac_rate_gsps - 1e-12);
}

double AcceleratorConfig::t_dac_ns() const { return derive_t_dac(*this); }

AcceleratorConfig AcceleratorConfig::for_scheme(Scheme scheme) const {
  AcceleratorConfig c = *this;
  if (scheme != Scheme::Traditional) c.dac_sharing_enabled = false;
  return c;
}

std::string AcceleratorConfig::label() const {
  std::ostringstream os;
  os << rows << 'x' << cols << ", " << units << (units == 1 ? " unit, " : " units, ") << f_ghz << " GHz";
  if (sharing_active()) os << ", " << t_dac_ns() << " ns";
  return os.str();
}

std::int64_t programming_dacs_per_unit(const AcceleratorConfig& config) {
  const std::int64_t pds = config.rows * config.cols;
  return config.sharing_active() ? ceil_div(pds, config.pds_per_dac) : pds;
}

std::int64_t dac_count(const AcceleratorConfig& config) {
  return (programming_dacs_per_unit(config) + config.cols) * config.units;
}

}  // namespace photohdc
