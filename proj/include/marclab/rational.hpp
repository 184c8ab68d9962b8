#ifndef MARCLAB_RATIONAL_HPP
#define MARCLAB_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace marclab {

// Exact rational scalar used for measures, positions and piece values.
// Conversions from double are exact (every finite double is a dyadic
// rational); conversions to double round once.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

double to_double(const Rat& r);

Rat rat_from_double(double x);

// Accepts "p/q", "p", or plain decimals like "0.25".
Rat rat_from_string(const std::string& s);

std::string rat_to_string(const Rat& r);

Rat rat_pow(const Rat& base, int exp);

Rat rat_abs(const Rat& r);

}  // namespace marclab

#endif
