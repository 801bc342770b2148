#include "normaloid/config.hpp"

#include <string>

#include "normaloid/errors.hpp"

namespace normaloid {

void ToleranceConfig::validate() const {
  if (!(eq_rtol > 0.0) || !(psd_tol > 0.0) || !(rank_tol > 0.0)) {
    throw InvalidParameter("tolerances must be strictly positive");
  }
  if (sphere_restarts < 1 || grid_points < 1) {
    throw InvalidParameter("sphere_restarts and grid_points must be >= 1");
  }
}

ToleranceConfig ToleranceConfig::strict() {
  ToleranceConfig cfg;
  cfg.eq_rtol = 1e-12;
  cfg.psd_tol = 1e-11;
  cfg.rank_tol = 1e-12;
  cfg.sphere_restarts = 128;
  cfg.grid_points = 400;
  return cfg;
}

ToleranceConfig ToleranceConfig::loose() {
  ToleranceConfig cfg;
  cfg.eq_rtol = 1e-8;
  cfg.psd_tol = 1e-7;
  cfg.rank_tol = 1e-8;
  cfg.sphere_restarts = 32;
  cfg.grid_points = 100;
  return cfg;
}

ToleranceConfig ToleranceConfig::from_profile(std::string_view name) {
  if (name == "default") return {};
  if (name == "strict") return strict();
  if (name == "loose") return loose();
  throw InvalidParameter("unknown tolerance profile '" + std::string(name) + "'");
}

}  // namespace normaloid
