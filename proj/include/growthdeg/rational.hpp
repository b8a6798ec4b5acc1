#ifndef GROWTHDEG_RATIONAL_HPP
#define GROWTHDEG_RATIONAL_HPP

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace growthdeg {

// All arithmetic in this library is exact. Integer and Rational are
// arbitrary-precision; Rational values are kept fully reduced with a
// positive denominator (GMP canonical form).
using Integer = mpz_class;
using Rational = mpq_class;

/// Builds the reduced fraction num/den. Throws on zero denominator.
inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) {
    throw std::invalid_argument("make_rational: zero denominator");
  }
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integral(const Rational& q) {
  return mpz_cmp_ui(mpq_denref(q.get_mpq_t()), 1) == 0;
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline double to_double(const Rational& q) { return q.get_d(); }

/// Parses "p", "-p" or "p/q" (decimal digits only) into a reduced rational.
inline Rational parse_rational(std::string_view text) {
  const auto bad = [&] {
    throw std::invalid_argument("parse_rational: invalid rational '" +
                                std::string(text) + "'");
  };
  const auto is_int_token = [](std::string_view t) {
    if (!t.empty() && t.front() == '-') t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t) {
      if (c < '0' || c > '9') return false;
    }
    return true;
  };
  const std::size_t slash = text.find('/');
  std::string_view num_part = text.substr(0, slash);
  if (!is_int_token(num_part)) bad();
  Integer num(std::string(num_part), 10);
  if (slash == std::string_view::npos) return Rational(num);
  std::string_view den_part = text.substr(slash + 1);
  if (!is_int_token(den_part)) bad();
  Integer den(std::string(den_part), 10);
  if (den == 0) bad();
  return make_rational(num, den);
}

/// "p/q" for non-integers, a plain decimal string otherwise.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

inline std::size_t hash_combine(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

inline std::size_t hash_value(mpz_srcptr z) {
  std::size_t h = mpz_sgn(z) < 0 ? 0x5bf03635u : 0x2545f491u;
  const mp_size_t limbs = mpz_size(z);
  for (mp_size_t i = 0; i < limbs; ++i) {
    h = hash_combine(h, static_cast<std::size_t>(mpz_getlimbn(z, i)));
  }
  return h;
}

inline std::size_t hash_value(const Integer& z) {
  return hash_value(z.get_mpz_t());
}

inline std::size_t hash_value(const Rational& q) {
  return hash_combine(hash_value(mpq_numref(q.get_mpq_t())),
                      hash_value(mpq_denref(q.get_mpq_t())));
}

}  // namespace growthdeg

#endif  // GROWTHDEG_RATIONAL_HPP
