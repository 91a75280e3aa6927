#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

#include <string>

namespace decmdp {

using BigInt = boost::multiprecision::cpp_int;

// Exact probability/reward scalar. boost::rational keeps the value
// normalized (lowest terms, positive denominator) after every operation.
using Rational = boost::rational<BigInt>;

// Parses "num/den" or a plain integer string. Throws std::invalid_argument
// on malformed input or a zero denominator.
Rational rational_from_string(const std::string& text);

// "num/den" for non-integers, plain "num" otherwise.
std::string rational_to_string(const Rational& value);

// Exact conversion: every finite double is a binary fraction.
Rational rational_from_double(double value);

double rational_to_double(const Rational& value);

}  // namespace decmdp
