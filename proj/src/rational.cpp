#include "rtcover/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace rtcover {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  return true;
}

// cpp_int reads a leading 0 as an octal prefix.
boost::multiprecision::cpp_int from_digits(std::string_view s) {
  while (s.size() > 1 && s.front() == '0') s.remove_prefix(1);
  return boost::multiprecision::cpp_int{std::string(s)};
}

boost::multiprecision::cpp_int parse_integer(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not an integer: " + std::string(s));
  boost::multiprecision::cpp_int value = from_digits(s);
  return negative ? boost::multiprecision::cpp_int(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = parse_integer(text.substr(0, slash));
    auto den_text = text.substr(slash + 1);
    if (!all_digits(den_text)) throw std::invalid_argument("bad denominator in: " + std::string(text));
    boost::multiprecision::cpp_int den = from_digits(den_text);
    if (den == 0) throw std::invalid_argument("zero denominator in: " + std::string(text));
    return Rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) whole.remove_prefix(1);
    if (whole.empty()) whole = "0";
    if (!all_digits(whole) || !all_digits(frac))
      throw std::invalid_argument("bad decimal: " + std::string(text));
    std::string digits = std::string(whole) + std::string(frac);
    boost::multiprecision::cpp_int num = from_digits(digits);
    boost::multiprecision::cpp_int den = boost::multiprecision::pow(boost::multiprecision::cpp_int(10),
                                                                    static_cast<unsigned>(frac.size()));
    Rational value(num, den);
    return negative ? Rational(-value) : value;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) {
  auto num = boost::multiprecision::numerator(value);
  auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace rtcover
