#include "autarky/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace autarky {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  } else if (body.starts_with("\u2212")) {  // U+2212 MINUS SIGN
    negative = true;
    body.remove_prefix(std::string_view("\u2212").size());
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  }
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational value(negative ? mpz_class(-n) : n, d);
  value.canonicalize();
  return value;
}

std::string to_string(const Rational& value) {
  // get_str omits a unit denominator but does not reduce.
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_str(10);
}

}  // namespace autarky
