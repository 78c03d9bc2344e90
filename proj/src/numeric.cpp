#include "ccshuffle/numeric.hpp"

#include <stdexcept>

namespace ccshuffle {

BigInt factorial(unsigned n) {
  BigInt r = 1;
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  // r stays integral: after step i it equals C(n-k+i, i).
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BigInt power(const BigInt& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

double to_double(const BigRational& q) {
  // cpp_rational -> double goes through numerator/denominator scaling and is
  // exact to rounding even when both parts overflow double.
  return q.convert_to<double>();
}

std::string to_string(const BigInt& v) { return v.str(); }

ExactProb make_prob(const BigRational& q) {
  if (q < 0) throw std::invalid_argument("probability must be nonnegative");
  return ExactProb{boost::multiprecision::numerator(q), boost::multiprecision::denominator(q)};
}

}  // namespace ccshuffle
