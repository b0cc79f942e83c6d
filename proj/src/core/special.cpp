#include "special.hpp"

#include <cmath>
#include <numbers>

namespace sipkit {

namespace {

// Continued fraction erfcx(x) = (1/sqrt(pi)) / (x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
// evaluated with the modified Lentz algorithm; converges quickly for x >= 3.
double erfcx_continued_fraction(double x) {
  constexpr double tiny = 1e-300;
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = x + a / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return std::numbers::inv_sqrtpi / f;
}

}  // namespace

double erfc_two_sided(double x) { return std::erfc(x); }

double erfcx(double x) {
  if (x < 0.0) {
    // exp(x^2) erfc(x) = 2 exp(x^2) - erfcx(-x)
    return 2.0 * std::exp(x * x) - erfcx(-x);
  }
  if (x < 3.0) return std::exp(x * x) * std::erfc(x);
  return erfcx_continued_fraction(x);
}

double log_erfc(double x) {
  if (x < 3.0) return std::log(std::erfc(x));
  return std::log(erfcx(x)) - x * x;
}

}  // namespace sipkit
