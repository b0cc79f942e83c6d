#include "test_function.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "error.hpp"

namespace sipkit {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();
}  // namespace

TestFunction TestFunction::zero() { return {Kind::Zero, 0.0, 0.0, 0.0}; }

TestFunction TestFunction::constant(double value) { return {Kind::Constant, 0.0, 0.0, value}; }

TestFunction TestFunction::raised_cosine(double center, double halfwidth) {
  require(halfwidth > 0.0 && std::isfinite(center), "raised_cosine: halfwidth must be positive");
  return {Kind::RaisedCosine, center, halfwidth, 0.0};
}

TestFunction TestFunction::polynomial_bump(double center, double halfwidth) {
  require(halfwidth > 0.0 && std::isfinite(center), "polynomial_bump: halfwidth must be positive");
  return {Kind::PolynomialBump, center, halfwidth, 0.0};
}

TestFunction TestFunction::from_name(const std::string& name, double center, double halfwidth) {
  if (name == "zero") return zero();
  if (name == "raised-cosine") return raised_cosine(center, halfwidth);
  if (name == "poly-bump") return polynomial_bump(center, halfwidth);
  if (name == "raised-cosine-slope") return raised_cosine(center, halfwidth).slope();
  if (name == "poly-bump-slope") return polynomial_bump(center, halfwidth).slope();
  fail(ErrorCode::ConfigError, "unknown test function '" + name + "'");
}

const char* TestFunction::name() const noexcept {
  switch (kind_) {
    case Kind::Zero: return "zero";
    case Kind::Constant: return "constant";
    case Kind::RaisedCosine: return "raised-cosine";
    case Kind::PolynomialBump: return "poly-bump";
    case Kind::RaisedCosineSlope: return "raised-cosine-slope";
    case Kind::PolynomialSlope: return "poly-bump-slope";
  }
  return "?";
}

TestFunction TestFunction::slope() const {
  switch (kind_) {
    case Kind::RaisedCosine: return {Kind::RaisedCosineSlope, center_, halfwidth_, 0.0};
    case Kind::PolynomialBump: return {Kind::PolynomialSlope, center_, halfwidth_, 0.0};
    case Kind::Zero:
    case Kind::Constant: return zero();
    default: fail(ErrorCode::InvalidArgument, "slope: only defined for bumps");
  }
}

double TestFunction::operator()(double x) const noexcept {
  const double s = (x - center_) / halfwidth_;
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Constant: return value_;
    default: break;
  }
  if (!(std::abs(s) < 1.0)) return 0.0;
  const double q = 1.0 - s * s;
  switch (kind_) {
    case Kind::RaisedCosine: return 0.5 * (1.0 + std::cos(pi * s));
    case Kind::PolynomialBump: return q * q * q;
    case Kind::RaisedCosineSlope: return -0.5 * pi / halfwidth_ * std::sin(pi * s);
    case Kind::PolynomialSlope: return -6.0 * s * q * q / halfwidth_;
    default: return 0.0;
  }
}

double TestFunction::derivative(double x) const noexcept {
  const double s = (x - center_) / halfwidth_;
  if (kind_ == Kind::Zero || kind_ == Kind::Constant || !(std::abs(s) < 1.0)) return 0.0;
  const double a = halfwidth_;
  const double q = 1.0 - s * s;
  switch (kind_) {
    case Kind::RaisedCosine: return -0.5 * pi / a * std::sin(pi * s);
    case Kind::PolynomialBump: return -6.0 * s * q * q / a;
    case Kind::RaisedCosineSlope: return -0.5 * (pi / a) * (pi / a) * std::cos(pi * s);
    case Kind::PolynomialSlope: return -6.0 * q * (1.0 - 5.0 * s * s) / (a * a);
    default: return 0.0;
  }
}

double TestFunction::support_lo() const noexcept {
  if (kind_ == Kind::Zero) return 0.0;
  if (kind_ == Kind::Constant) return -inf;
  return center_ - halfwidth_;
}

double TestFunction::support_hi() const noexcept {
  if (kind_ == Kind::Zero) return -1.0;
  if (kind_ == Kind::Constant) return inf;
  return center_ + halfwidth_;
}

double TestFunction::integral() const noexcept {
  const double a = halfwidth_;
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Constant: return value_ == 0.0 ? 0.0 : std::copysign(inf, value_);
    case Kind::RaisedCosine: return a;
    case Kind::PolynomialBump: return 32.0 * a / 35.0;
    default: return 0.0;
  }
}

double TestFunction::l2_norm_sq() const noexcept {
  const double a = halfwidth_;
  switch (kind_) {
    case Kind::Zero: return 0.0;
    case Kind::Constant: return value_ == 0.0 ? 0.0 : inf;
    case Kind::RaisedCosine: return 0.75 * a;
    case Kind::PolynomialBump: return 2048.0 * a / 3003.0;
    case Kind::RaisedCosineSlope: return pi * pi / (4.0 * a);
    case Kind::PolynomialSlope: return 1024.0 / (385.0 * a);
  }
  return 0.0;
}

double TestFunction::dirichlet_integral() const noexcept {
  const double a = halfwidth_;
  switch (kind_) {
    case Kind::Zero:
    case Kind::Constant: return 0.0;
    case Kind::RaisedCosine: return pi * pi / (4.0 * a);
    case Kind::PolynomialBump: return 1024.0 / (385.0 * a);
    case Kind::RaisedCosineSlope: return std::pow(pi / a, 4) * a / 4.0;
    case Kind::PolynomialSlope: return 1024.0 / (35.0 * a * a * a);
  }
  return 0.0;
}

}  // namespace sipkit
