#pragma once

namespace aitest::special {

/// Regularized incomplete beta function I_x(a, b) for a, b > 0.
///
/// Continued fraction (modified Lentz) evaluated on whichever side of
/// x = (a+1)/(a+b+2) converges fastest; the other side comes from
/// I_x(a,b) = 1 - I_{1-x}(b,a). Clamps x to [0,1].
double incomplete_beta(double x, double a, double b);

/// Beta(a, b) density at x; 0 outside (0,1).
double beta_pdf(double x, double a, double b);

}  // namespace aitest::special
