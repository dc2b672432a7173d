#include "cfsem/rational.hpp"

#include "cfsem/error.hpp"

#include <gmp.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <string>
#include <vector>

namespace cfsem {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c) != 0; });
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational out;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw InputError("malformed rational '" + std::string(text) + "'");
    }
    mpz_class d(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    out = Rational(mpz_class(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty())) {
      throw InputError("malformed decimal '" + std::string(text) + "'");
    }
    mpz_class num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
    out = Rational(num, den);
  } else {
    if (!all_digits(body)) throw InputError("malformed number '" + std::string(text) + "'");
    out = Rational(mpz_class(std::string(body), 10));
  }
  out.canonicalize();
  if (negative) out = -out;
  return out;
}

std::string to_string(const Rational& value) { return value.get_str(); }

std::string to_decimal(const Rational& value, int significant) {
  const std::size_t digits = static_cast<std::size_t>(std::max(significant, 1));
  if (value == 0) return "0." + std::string(digits, '0');
  const bool negative = value < 0;
  const Rational magnitude = negative ? Rational(-value) : value;

  // Decimal exponent e with 10^e <= magnitude < 10^(e+1).
  long e = static_cast<long>(mpz_sizeinbase(magnitude.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(magnitude.get_den_mpz_t(), 10));
  auto power = [](long k) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
    return k < 0 ? Rational(1, p) : Rational(p);
  };
  while (magnitude >= power(e + 1)) ++e;
  while (magnitude < power(e)) --e;

  // Round half up to `digits` significant digits.
  const Rational scaled = magnitude * power(static_cast<long>(digits) - 1 - e);
  mpz_class n = (scaled.get_num() * 2 + scaled.get_den()) / (scaled.get_den() * 2);
  std::string body = n.get_str();
  if (body.size() > digits) {
    ++e;
    body.pop_back();
  }

  std::string out = negative ? "-" : "";
  if (e < -5 || e >= static_cast<long>(digits)) {
    out += body.substr(0, 1) + "." + body.substr(1) + "e" + (e < 0 ? "-" : "+") +
           (std::labs(e) < 10 ? "0" : "") + std::to_string(std::labs(e));
  } else if (e < 0) {
    out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + body;
  } else {
    const auto point = static_cast<std::size_t>(e + 1);
    out += body.substr(0, point) + "." + body.substr(point);
  }
  return out;
}

std::string describe(const Rational& value, int significant) {
  return to_string(value) + " (" + to_decimal(value, significant) + ")";
}

}  // namespace cfsem
