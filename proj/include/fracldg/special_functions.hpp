#pragma once

#include <stdexcept>

namespace fracldg {

struct SpecialFunctionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Gamma function on the real line, relative accuracy better than 1e-13 on
// [-5, 30]. Negative non-integer arguments are lifted through the recurrence
// Gamma(x) = Gamma(x+2)/(x(x+1)). Throws std::domain_error at the poles.
double gamma_fn(double x);

// Gauss hypergeometric 2F1(a,b;c;z) for c > 0 and 0 <= z < 1 by direct
// compensated series summation; terminates when a term drops below
// 1e-16 * |partial sum|. Throws SpecialFunctionError if the 1e6-term cap is
// hit before convergence (only reachable for z extremely close to 1).
double hyp2f1(double a, double b, double c, double z);

}  // namespace fracldg
