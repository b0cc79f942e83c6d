#pragma once

#include <string>

namespace sipkit {

/// Compactly supported test functions with closed-form derivative and
/// integrals.
class TestFunction {
 public:
  enum class Kind {
    Zero,
    Constant,
    RaisedCosine,      // (1 + cos(pi (x - c) / a)) / 2 on [c - a, c + a]
    PolynomialBump,    // (1 - ((x - c) / a)^2)^3 on [c - a, c + a]
    RaisedCosineSlope, // derivative of RaisedCosine
    PolynomialSlope,   // derivative of PolynomialBump
  };

  static TestFunction zero();
  static TestFunction constant(double value);
  static TestFunction raised_cosine(double center, double halfwidth);
  static TestFunction polynomial_bump(double center, double halfwidth);
  /// "zero" | "raised-cosine" | "poly-bump", with the derivative variants
  /// "raised-cosine-slope" | "poly-bump-slope".
  static TestFunction from_name(const std::string& name, double center, double halfwidth);

  Kind kind() const noexcept { return kind_; }
  const char* name() const noexcept;
  double center() const noexcept { return center_; }
  double halfwidth() const noexcept { return halfwidth_; }

  double operator()(double x) const noexcept;
  double derivative(double x) const noexcept;
  /// The derivative as a test function (bumps only).
  TestFunction slope() const;

  /// Closed interval outside which the function vanishes; infinite for
  /// constants, empty (lo > hi) for zero.
  double support_lo() const noexcept;
  double support_hi() const noexcept;
  bool compact() const noexcept { return kind_ != Kind::Constant; }

  /// Closed forms of int f, int f^2, int f'^2 (infinite for nonzero
  /// constants where applicable).
  double integral() const noexcept;
  double l2_norm_sq() const noexcept;
  double dirichlet_integral() const noexcept;

 private:
  TestFunction(Kind kind, double center, double halfwidth, double value)
      : kind_(kind), center_(center), halfwidth_(halfwidth), value_(value) {}

  Kind kind_;
  double center_;
  double halfwidth_;
  double value_;
};

}  // namespace sipkit
