// Classical interval maps with known Lyapunov exponents, used to calibrate
// the estimators: tent and doubling sit at ln 2, the logistic family spans
// negative to positive exponents.
#pragma once

#include <optional>
#include <string>
#include <vector>

namespace cbc_chaos {

enum class MapFamily { tent, logistic, doubling };

struct CalibrationMap {
  MapFamily family;
  double mu = 0.0;  // logistic parameter
  double lo = 0.0;
  double hi = 1.0;
  // Boundaries of the map's linearity/continuity cells; pair estimators must
  // not measure across them.
  std::vector<double> cell_boundaries;

  double apply(double x) const;
  // Closed-form derivative; empty where undefined (the tent kink).
  std::optional<double> derivative(double x) const;
  bool in_domain(double x) const { return x >= lo && x <= hi; }
  std::string name() const;

  static CalibrationMap tent();
  static CalibrationMap logistic(double mu);
  static CalibrationMap doubling();
};

}  // namespace cbc_chaos
