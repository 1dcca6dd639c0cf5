#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace avd {

// Every equality / side decision in the library routes through one tolerant
// comparator so that degeneracy handling stays uniform and tunable.
struct Tolerance {
  double rel = 1e-9;      // relative tolerance for coordinate-sized quantities
  double angular = 1e-9;  // absolute tolerance for angles (radians)

  bool close(double a, double b, double scale = 1.0) const {
    return std::abs(a - b) <=
           rel * std::max({1.0, std::abs(a), std::abs(b), std::abs(scale)});
  }
  bool zero(double x, double scale = 1.0) const {
    return std::abs(x) <= rel * std::max(1.0, std::abs(scale));
  }
  // -1, 0, +1 with a dead band of rel*scale around zero.
  int sign(double x, double scale = 1.0) const {
    if (zero(x, scale)) return 0;
    return x > 0.0 ? 1 : -1;
  }
  bool angle_close(double a, double b) const;  // cyclic, defined in geom.hpp terms
};

enum class Side { PSide, QSide, On };

inline Side flip(Side s) {
  if (s == Side::PSide) return Side::QSide;
  if (s == Side::QSide) return Side::PSide;
  return Side::On;
}

enum class Errc {
  IdenticalSites,
  DegenerateContact,
  DegenerateInput,
  EmptyRegion,
  CoreNotInDomain,
  TraceDiverged,
  UnknownSite,
  LastSite,
  BadInput,
};

struct Error : std::runtime_error {
  Errc code;
  Error(Errc c, const std::string& msg) : std::runtime_error(msg), code(c) {}
};

}  // namespace avd
