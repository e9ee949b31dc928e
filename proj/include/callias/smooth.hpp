#pragma once

#include <cmath>

namespace callias {

// C-infinity step: 0 for t <= 0, 1 for t >= 1, all derivatives vanish at both ends.
struct SmoothStep {
  static double f(double t) { return t > 0 ? std::exp(-1.0 / t) : 0.0; }
  static double fp(double t) { return t > 0 ? std::exp(-1.0 / t) / (t * t) : 0.0; }
  static double value(double t) {
    if (t <= 0) return 0.0;
    if (t >= 1) return 1.0;
    const double a = f(t), b = f(1 - t);
    return a / (a + b);
  }
  static double deriv(double t) {
    if (t <= 0 || t >= 1) return 0.0;
    const double a = f(t), b = f(1 - t), s = a + b;
    return (fp(t) * b + a * fp(1 - t)) / (s * s);
  }
};

}  // namespace callias
