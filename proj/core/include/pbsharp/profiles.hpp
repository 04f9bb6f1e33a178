#pragma once

#include <string>

namespace pbsharp {

/// Monotone C1 ramp from 0 at s<=0 to 1 at s>=1 with a derivative that
/// vanishes at both ends, strictly increasing in between. Pluggable so the
/// field constructions can be exercised with different ramps.
struct SmoothStepProfile {
  std::string name;
  double (*fn)(double);

  double operator()(double s) const { return fn(s); }

  /// alpha(s) = h(s)/(h(s)+h(1-s)) with h(s) = exp(-1/s) for s > 0 else 0.
  /// Flat to machine precision near both ends; the default.
  static SmoothStepProfile exponential();

  /// 10s^3 - 15s^4 + 6s^5; polynomial alternative, still below the 1e-6
  /// derivative bound within 1e-4 of the endpoints.
  static SmoothStepProfile quintic();

  static SmoothStepProfile from_name(const std::string& name);
};

inline double alpha(const SmoothStepProfile& profile, double s) { return profile(s); }

}  // namespace pbsharp
