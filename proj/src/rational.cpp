#include "mqsym/rational.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include "mqsym/error.hpp"

namespace mqsym {
namespace {

[[noreturn]] void malformed(std::string_view text) {
  throw Error(ErrorCode::ParseError, "malformed number '" + std::string(text) + "'");
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

Rational pow10(long exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  if (exponent >= 0) return Rational(p);
  return Rational(mpz_class(1), p);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) malformed(text);
    mpz_class n(std::string(num), 10), d(std::string(den), 10);
    if (d == 0) malformed(text);
    result = Rational(n, d);
    result.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = body.substr(e + 1);
      const char* first = exp_text.data();
      if (!exp_text.empty() && exp_text.front() == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, exp_text.data() + exp_text.size(), exponent);
      if (ec != std::errc{} || ptr != exp_text.data() + exp_text.size() || first == ptr) malformed(text);
      body = body.substr(0, e);
    }
    std::string_view int_part = body, frac_part;
    if (auto dot = body.find('.'); dot != std::string_view::npos) {
      int_part = body.substr(0, dot);
      frac_part = body.substr(dot + 1);
      if (!frac_part.empty() && !all_digits(frac_part)) malformed(text);
    }
    if (int_part.empty() && frac_part.empty()) malformed(text);
    if (!int_part.empty() && !all_digits(int_part)) malformed(text);
    std::string digits = std::string(int_part) + std::string(frac_part);
    mpz_class mantissa(digits, 10);
    result = Rational(mantissa) * pow10(exponent - static_cast<long>(frac_part.size()));
    result.canonicalize();
  }
  return negative ? Rational(-result) : result;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw Error(ErrorCode::ParseError, "non-finite number");
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error(ErrorCode::ParseError, "cannot format number");
  return parse_rational(std::string_view(buf.data(), static_cast<std::size_t>(ptr - buf.data())));
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_string(const ComplexRational& value) {
  if (value.is_real()) return to_string(value.re);
  if (sgn(value.re) == 0) return to_string(value.im) + "i";
  std::string out = "(" + to_string(value.re);
  out += sgn(value.im) > 0 ? "+" : "-";
  out += to_string(Rational(abs(value.im))) + "i)";
  return out;
}

}  // namespace mqsym
