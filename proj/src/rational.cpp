#include "decmdp/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace decmdp {

namespace {

BigInt parse_integer(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty integer");
  std::size_t pos = 0;
  if (text[0] == '+' || text[0] == '-') pos = 1;
  if (pos == text.size()) throw std::invalid_argument("bare sign: " + text);
  for (std::size_t i = pos; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw std::invalid_argument("not an integer: " + text);
    }
  }
  return BigInt(text);
}

}  // namespace

Rational rational_from_string(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational(parse_integer(text));
  }
  BigInt num = parse_integer(text.substr(0, slash));
  BigInt den = parse_integer(text.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + text);
  return Rational(num, den);
}

std::string rational_to_string(const Rational& value) {
  if (value.denominator() == 1) return value.numerator().str();
  return value.numerator().str() + "/" + value.denominator().str();
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  if (value == 0.0) return Rational(0);
  int exp = 0;
  double mant = std::frexp(value, &exp);  // value = mant * 2^exp, |mant| in [0.5,1)
  // 53 doublings make the mantissa integral.
  BigInt num = static_cast<long long>(std::ldexp(mant, 53));
  exp -= 53;
  if (exp >= 0) return Rational(num << exp);
  return Rational(num, BigInt(1) << (-exp));
}

double rational_to_double(const Rational& value) {
  return value.numerator().convert_to<double>() /
         value.denominator().convert_to<double>();
}

}  // namespace decmdp
