#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace hfree {

// All counts are exact integers and all densities exact rationals; doubles
// appear only at the very end of threshold/bound evaluation.
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// C(n, k) as an exact big integer; 0 when k < 0 or k > n.
BigInt binomial(long n, long k);

double to_double(const Rat& q);

// "p/q" with the denominator omitted when it is 1.
std::string rat_to_string(const Rat& q);

// True when q is an integer.
bool is_integer(const Rat& q);

}  // namespace hfree
