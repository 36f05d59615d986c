#include "fracldg/special_functions.hpp"

#include <cmath>
#include <cstdint>
#include <string>

namespace fracldg {

double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw std::domain_error("gamma_fn: pole at x = " + std::to_string(x));
  if (x > 0.0) return std::tgamma(x);
  // Lift into the positive axis: Gamma(x) = Gamma(x+2k) / (x (x+1) ... (x+2k-1)).
  double denom = 1.0;
  double t = x;
  while (t < 1.0) {
    denom *= t;
    t += 1.0;
  }
  return std::tgamma(t) / denom;
}

double hyp2f1(double a, double b, double c, double z) {
  if (c <= 0.0) throw std::domain_error("hyp2f1: need c > 0");
  if (z < 0.0 || z >= 1.0) throw std::domain_error("hyp2f1: need 0 <= z < 1");
  if (z == 0.0) return 1.0;

  constexpr std::int64_t kMaxTerms = 1000000;
  double sum = 1.0;
  double comp = 0.0;  // Kahan compensation
  double term = 1.0;
  for (std::int64_t n = 0; n < kMaxTerms; ++n) {
    term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
    if (term == 0.0) return sum;  // terminating series
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) < 1e-16 * std::abs(sum) && n > 1) return sum;
  }
  throw SpecialFunctionError("hyp2f1: series did not converge (z too close to 1)");
}

}  // namespace fracldg
