#pragma once

namespace sipkit {

/// Complementary error function, (2/sqrt(pi)) * int_x^inf exp(-y^2) dy.
double erfc_two_sided(double x);

/// Scaled complementary error function exp(x^2) * erfc(x). Finite for all
/// x >= -26; behaves like 1/(x sqrt(pi)) for large x.
double erfcx(double x);

/// log(erfc(x)) without underflow for large positive x.
double log_erfc(double x);

}  // namespace sipkit
