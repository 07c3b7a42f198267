#include "stochrel/rational.hpp"

#include <cctype>
#include <limits>

namespace stochrel {

namespace {

bool valid_integer(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!valid_integer(num, true) || !valid_integer(den, false)) {
    throw Error("invalid rational literal '" + std::string(text) + "' (expected p or p/q)");
  }
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  BigInt d(std::string(den), 10);
  if (d == 0) throw Error("zero denominator in '" + std::string(text) + "'");
  Rational r{BigInt(n, 10), d};
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error("zero denominator");
  Rational r{BigInt(std::to_string(num), 10), BigInt(std::to_string(den), 10)};
  r.canonicalize();
  return r;
}

BigInt common_denominator(std::span<const Rational> values) {
  BigInt l = 1;
  for (const auto& v : values) {
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  }
  return l;
}

BigInt scale_to_integer(const Rational& value, const BigInt& scale) {
  BigInt q;
  BigInt prod = value.get_num() * scale;
  BigInt rem;
  mpz_tdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), prod.get_mpz_t(), value.get_den_mpz_t());
  if (rem != 0) throw Error("scale is not a multiple of the denominator");
  return q;
}

std::optional<std::int64_t> to_int64(const BigInt& value) {
  static const BigInt lo(std::to_string(std::numeric_limits<std::int64_t>::min()), 10);
  static const BigInt hi(std::to_string(std::numeric_limits<std::int64_t>::max()), 10);
  if (value < lo || value > hi) return std::nullopt;
  if (value.fits_slong_p()) return static_cast<std::int64_t>(value.get_si());
  return std::stoll(value.get_str());
}

Rational sum(std::span<const Rational> values) {
  Rational s = 0;
  for (const auto& v : values) s += v;
  return s;
}

}  // namespace stochrel
