#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace mecode {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Exact value of a finite double.
Rational to_rational(double v);
double to_double(const Rational& r);

// C(n, k) with arbitrary precision; 0 when k > n.
BigInt binomial(unsigned n, unsigned k);

}  // namespace mecode
