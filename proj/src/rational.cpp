#include "herbrand/rational.hpp"

#include <stdexcept>

namespace herbrand {

Rational make_rational(std::int64_t num, std::int64_t den) {
  return make_rational(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::invalid_argument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  auto strip_plus = [](const std::string& s) {
    return (!s.empty() && s[0] == '+') ? s.substr(1) : s;
  };
  const auto slash = text.find('/');
  const std::string num = text.substr(0, slash);
  const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den))
    throw std::invalid_argument("malformed rational '" + text + "'");
  return make_rational(Integer(strip_plus(num)), Integer(strip_plus(den)));
}

std::string to_decimal_string(const Rational& q, int significant_digits) {
  // 4 bits per decimal digit plus slack is ample for the requested precision.
  mpf_class f(q, static_cast<mp_bitcnt_t>(significant_digits * 4 + 64));
  char* out = nullptr;
  const int n = gmp_asprintf(&out, "%.*Fg", significant_digits, f.get_mpf_t());
  if (n < 0 || out == nullptr) throw std::runtime_error("decimal rendering failed");
  std::string s(out);
  void (*freefunc)(void*, std::size_t);
  mp_get_memory_functions(nullptr, nullptr, &freefunc);
  freefunc(out, static_cast<std::size_t>(n) + 1);
  return s;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer " + z.get_str() + " exceeds 64 bits");
  return static_cast<std::int64_t>(z.get_si());
}

Integer ipow(std::int64_t base, unsigned exponent) {
  Integer result;
  mpz_pow_ui(result.get_mpz_t(), Integer(static_cast<long>(base)).get_mpz_t(), exponent);
  return result;
}

}  // namespace herbrand
