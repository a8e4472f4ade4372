#include "cbc_chaos/calibration.hpp"

#include <stdexcept>

namespace cbc_chaos {

double CalibrationMap::apply(double x) const {
  if (!in_domain(x)) throw std::domain_error("point outside the map domain");
  switch (family) {
    case MapFamily::tent:
      return x < 0.5 ? 2.0 * x : 2.0 * (1.0 - x);
    case MapFamily::logistic:
      return mu * x * (1.0 - x);
    case MapFamily::doubling:
      // Degree-2 circle map written on the fundamental domain [0, 1).
      return x < 0.5 ? 2.0 * x : 2.0 * x - 1.0;
  }
  throw std::logic_error("unknown map family");
}

std::optional<double> CalibrationMap::derivative(double x) const {
  if (!in_domain(x)) throw std::domain_error("point outside the map domain");
  switch (family) {
    case MapFamily::tent:
      if (x == 0.5) return std::nullopt;  // kink
      return x < 0.5 ? 2.0 : -2.0;
    case MapFamily::logistic:
      return mu * (1.0 - 2.0 * x);
    case MapFamily::doubling:
      // Smooth as a circle map; the cell split is a chart artifact.
      return 2.0;
  }
  throw std::logic_error("unknown map family");
}

std::string CalibrationMap::name() const {
  switch (family) {
    case MapFamily::tent: return "tent";
    case MapFamily::logistic: return "logistic";
    case MapFamily::doubling: return "doubling";
  }
  throw std::logic_error("unknown map family");
}

CalibrationMap CalibrationMap::tent() {
  CalibrationMap m;
  m.family = MapFamily::tent;
  m.cell_boundaries = {0.5};
  return m;
}

CalibrationMap CalibrationMap::logistic(double mu) {
  if (!(mu > 0.0) || mu > 4.0)
    throw std::invalid_argument("logistic parameter must lie in (0, 4]");
  CalibrationMap m;
  m.family = MapFamily::logistic;
  m.mu = mu;
  return m;
}

CalibrationMap CalibrationMap::doubling() {
  CalibrationMap m;
  m.family = MapFamily::doubling;
  m.cell_boundaries = {0.5};
  // apply() maps [0, 1) to itself; exclude the right endpoint.
  m.hi = 1.0 - 0x1.0p-53;
  return m;
}

}  // namespace cbc_chaos
