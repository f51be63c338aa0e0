#include "tariffnet/rational.hpp"

#include <charconv>
#include <cmath>
#include <string>
#include <string_view>

#include "tariffnet/errors.hpp"

namespace tariffnet {

Rational decimal_rational(double value) {
  if (!std::isfinite(value)) {
    throw DomainError("cannot convert a non-finite value to a rational");
  }
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  std::string_view text(buf, static_cast<std::size_t>(end - buf));

  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  int exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    if (!exp_text.empty() && exp_text.front() == '+') exp_text.remove_prefix(1);
    std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    text = text.substr(0, e);
  }
  std::string digits;
  for (char c : text) {
    if (c == '.') {
      continue;
    }
    digits.push_back(c);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    exponent -= static_cast<int>(text.size() - dot - 1);
  }

  // cpp_int reads a leading 0 as an octal prefix.
  const auto first = digits.find_first_not_of('0');
  digits = first == std::string::npos ? "0" : digits.substr(first);
  boost::multiprecision::cpp_int numerator(digits);
  boost::multiprecision::cpp_int scale = 1;
  for (int i = 0; i < std::abs(exponent); ++i) scale *= 10;
  Rational result = exponent >= 0 ? Rational(numerator * scale)
                                  : Rational(numerator, scale);
  return negative ? Rational(-result) : result;
}

}  // namespace tariffnet
