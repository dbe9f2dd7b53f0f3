#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace crosscut {

// Fractional part in [0, 1).
inline double frac(double x) { return x - std::floor(x); }

// Distance to the nearest integer.
inline double int_dist(double x) {
  double f = frac(x);
  return std::min(f, 1.0 - f);
}

inline bool near_integer(double x, double tol) { return int_dist(x) <= tol; }

// Fixed 17-significant-digit rendering; all file formats use this so that
// writes are byte-deterministic.
inline std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace crosscut
