#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace ccshuffle {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

BigInt factorial(unsigned n);
BigInt binomial(unsigned n, unsigned k);
BigInt power(const BigInt& base, unsigned exponent);

double to_double(const BigRational& q);
std::string to_string(const BigInt& v);

/// Probability held as an (unreduced) fraction. Equality compares by
/// cross-multiplication, so 5/27 == 10/54.
struct ExactProb {
  BigInt numerator{0};
  BigInt denominator{1};

  BigRational rational() const { return BigRational(numerator, denominator); }
  double value() const { return to_double(rational()); }

  friend bool operator==(const ExactProb& a, const ExactProb& b) {
    return a.numerator * b.denominator == b.numerator * a.denominator;
  }
};

ExactProb make_prob(const BigRational& q);

}  // namespace ccshuffle
