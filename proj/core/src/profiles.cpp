#include "pbsharp/profiles.hpp"

#include <cmath>
#include <stdexcept>

namespace pbsharp {

namespace {

double alpha_exponential(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  double hs = std::exp(-1.0 / s);
  double hc = std::exp(-1.0 / (1.0 - s));
  return hs / (hs + hc);
}

double alpha_quintic(double s) {
  if (s <= 0.0) return 0.0;
  if (s >= 1.0) return 1.0;
  return s * s * s * (10.0 + s * (-15.0 + 6.0 * s));
}

}  // namespace

SmoothStepProfile SmoothStepProfile::exponential() { return {"exp", &alpha_exponential}; }
SmoothStepProfile SmoothStepProfile::quintic() { return {"quintic", &alpha_quintic}; }

SmoothStepProfile SmoothStepProfile::from_name(const std::string& name) {
  if (name == "exp") return exponential();
  if (name == "quintic") return quintic();
  throw std::invalid_argument("unknown smoothstep profile: " + name);
}

}  // namespace pbsharp
