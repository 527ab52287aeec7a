#pragma once

#include "zslab/detail/boost_compat.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace zslab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Serializes in lowest terms: "p" when the denominator is 1, else "p/q".
inline std::string to_string(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) {
    return boost::multiprecision::numerator(r).str();
  }
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline std::string to_string(const BigInt& n) { return n.str(); }

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace zslab
