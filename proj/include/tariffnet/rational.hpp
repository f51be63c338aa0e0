#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace tariffnet {

using Rational = boost::multiprecision::cpp_rational;

/// Exact rational for the shortest decimal that round-trips `value`, so a
/// coefficient written as 0.1 in a scenario becomes exactly 1/10.
Rational decimal_rational(double value);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace tariffnet
