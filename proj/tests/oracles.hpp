#pragma once

// Independent reference computations for the test suites. Nothing here
// calls into the library's distribution code.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

// Composite Simpson rule with `panels` (even) subintervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
  if (panels % 2) ++panels;
  const double h = (b - a) / panels;
  double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Beta(1/2,1/2) CDF in closed form.
inline double arcsine_cdf(double p) { return 2.0 / std::numbers::pi * std::asin(std::sqrt(p)); }

// I_x(a,b) for integer a, b: the binomial tail P[Bin(a+b-1, x) >= a].
inline double incomplete_beta_integer(double x, int a, int b) {
  const int n = a + b - 1;
  double total = 0.0;
  for (int j = a; j <= n; ++j) {
    total += std::exp(std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0)) * std::pow(x, j) *
             std::pow(1.0 - x, n - j);
  }
  return total;
}

// Beta(a,b) density straight from the definition.
inline double beta_density(double x, double a, double b) {
  return std::pow(x, a - 1.0) * std::pow(1.0 - x, b - 1.0) * std::tgamma(a + b) / (std::tgamma(a) * std::tgamma(b));
}

// Arc length of y = cosh t on [0, n] by quadrature of sqrt(1 + sinh^2 t).
inline double catenary_arc_length(double n) {
  return simpson([](double t) { return std::sqrt(1.0 + std::sinh(t) * std::sinh(t)); }, 0.0, n, 20000);
}

inline std::vector<double> log_grid(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (count - 1)));
  }
  return out;
}

}  // namespace oracle
