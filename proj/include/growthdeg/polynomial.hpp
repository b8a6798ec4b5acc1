#ifndef GROWTHDEG_POLYNOMIAL_HPP
#define GROWTHDEG_POLYNOMIAL_HPP

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "growthdeg/matrix.hpp"
#include "growthdeg/rational.hpp"

namespace growthdeg {

/// Univariate polynomial over the rationals. Coefficients are dense in
/// ascending degree with no trailing zeros; the zero polynomial is the
/// empty list (degree -1).
class Polynomial {
 public:
  Polynomial() = default;

  explicit Polynomial(Vector coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  static Polynomial zero() { return Polynomial(); }
  static Polynomial one() { return constant(1); }
  static Polynomial x() { return monomial(1); }

  static Polynomial constant(const Rational& c) {
    return Polynomial(Vector{c});
  }

  static Polynomial monomial(std::size_t degree, const Rational& coeff = 1) {
    Vector v(degree + 1);
    v[degree] = coeff;
    return Polynomial(std::move(v));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

  const Vector& coefficients() const { return coeffs_; }

  /// Coefficient of x^k (zero beyond the degree).
  Rational coeff(std::size_t k) const {
    return k < coeffs_.size() ? coeffs_[k] : Rational(0);
  }

  const Rational& leading() const {
    if (coeffs_.empty()) {
      throw std::invalid_argument("Polynomial::leading: zero polynomial");
    }
    return coeffs_.back();
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Vector r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
    return Polynomial(std::move(r));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Vector r(std::max(a.coeffs_.size(), b.coeffs_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
    return Polynomial(std::move(r));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    Vector r(a.coeffs_.size() + b.coeffs_.size() - 1);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
      if (a.coeffs_[i] == 0) continue;
      for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
        r[i + j] += a.coeffs_[i] * b.coeffs_[j];
      }
    }
    return Polynomial(std::move(r));
  }

  friend Polynomial operator*(const Polynomial& a, const Rational& c) {
    Vector r = a.coeffs_;
    for (auto& e : r) e *= c;
    return Polynomial(std::move(r));
  }

  Rational eval(const Rational& at) const {
    Rational r = 0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) r = r * at + coeffs_[i];
    return r;
  }

  Polynomial derivative() const {
    if (coeffs_.size() <= 1) return Polynomial();
    Vector r(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
      r[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    }
    return Polynomial(std::move(r));
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this * Rational(Rational(1) / leading());
  }

  /// Euclidean division: returns (quotient, remainder).
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a,
                                                  const Polynomial& b) {
    if (b.is_zero()) {
      throw std::invalid_argument("Polynomial::divmod: division by zero");
    }
    Vector rem = a.coeffs_;
    const int db = b.degree();
    if (a.degree() < db) return {Polynomial(), a};
    Vector quot(a.degree() - db + 1);
    for (int k = a.degree(); k >= db; --k) {
      const std::size_t uk = static_cast<std::size_t>(k);
      if (rem[uk] == 0) continue;
      const Rational q = rem[uk] / b.leading();
      quot[uk - db] = q;
      for (int j = 0; j <= db; ++j) {
        rem[uk - db + j] -= q * b.coeffs_[static_cast<std::size_t>(j)];
      }
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  /// True iff this polynomial divides p exactly.
  bool divides(const Polynomial& p) const {
    if (is_zero()) return p.is_zero();
    return divmod(p, *this).second.is_zero();
  }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const Rational& c = coeffs_[i];
      if (c == 0) continue;
      const bool first = out.empty();
      const bool neg = c < 0;
      const Rational mag = abs(c);
      if (first) {
        if (neg) out += "-";
      } else {
        out += neg ? " - " : " + ";
      }
      const bool unit = mag == 1;
      if (i == 0 || !unit) out += growthdeg::to_string(mag);
      if (i > 0) {
        if (!unit) out += "*";
        out += "x";
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  Vector coeffs_;
};

/// Monic gcd via the Euclidean algorithm; gcd(0, 0) = 0.
inline Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = Polynomial::divmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

/// Product of the distinct irreducible factors: p / gcd(p, p'), monic.
inline Polynomial squarefree_part(const Polynomial& p) {
  if (p.is_zero()) {
    throw std::invalid_argument("squarefree_part: zero polynomial");
  }
  if (p.degree() == 0) return Polynomial::one();
  const Polynomial g = gcd(p, p.derivative());
  return Polynomial::divmod(p, g).first.monic();
}

/// base^e mod m by binary exponentiation over polynomial remainders.
inline Polynomial powmod(const Polynomial& base, const Integer& e,
                         const Polynomial& m) {
  if (m.is_zero()) throw std::invalid_argument("powmod: zero modulus");
  if (e < 0) throw std::invalid_argument("powmod: negative exponent");
  if (m.degree() == 0) return Polynomial();
  Polynomial result = Polynomial::one();
  if (e == 0) return result;
  Polynomial b = Polynomial::divmod(base, m).second;
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = Polynomial::divmod(result * result, m).second;
    if (mpz_tstbit(e.get_mpz_t(), i)) {
      result = Polynomial::divmod(result * b, m).second;
    }
  }
  return result;
}

/// Characteristic polynomial det(xI - a), monic of degree a.rows().
/// Samuelson-Berkowitz recursion on leading principal submatrices;
/// division-free, so it is exact over any subring of the rationals.
inline Polynomial char_poly(const Matrix& a) {
  if (!a.square()) {
    throw DimensionError("char_poly: non-square matrix (" + a.shape() + ")");
  }
  const std::size_t n = a.rows();
  // desc[i] = coefficient of x^(r-i) for the current principal size r.
  Vector desc{Rational(1)};
  for (std::size_t r = 1; r <= n; ++r) {
    const Rational& alpha = a(r - 1, r - 1);
    Vector next(r + 1);
    for (std::size_t k = 0; k < r; ++k) {
      next[k] += desc[k];
      next[k + 1] -= alpha * desc[k];
    }
    if (r >= 2) {
      // Moments t_j = R M^j S for the bordering row R, column S and the
      // leading (r-1)x(r-1) block M.
      std::vector<Rational> moments;
      moments.reserve(r - 1);
      Vector u(r - 1);
      for (std::size_t i = 0; i < r - 1; ++i) u[i] = a(i, r - 1);
      for (std::size_t j = 0; j + 2 <= r; ++j) {
        Rational t = 0;
        for (std::size_t i = 0; i < r - 1; ++i) t += a(r - 1, i) * u[i];
        moments.push_back(std::move(t));
        if (j + 3 <= r) {
          Vector mu(r - 1);
          for (std::size_t i = 0; i < r - 1; ++i) {
            Rational acc = 0;
            for (std::size_t l = 0; l < r - 1; ++l) acc += a(i, l) * u[l];
            mu[i] = std::move(acc);
          }
          u = std::move(mu);
        }
      }
      for (std::size_t j = 0; j + 2 <= r; ++j) {
        Rational acc = 0;
        for (std::size_t k = 0; k <= j; ++k) acc += desc[k] * moments[j - k];
        next[j + 2] -= acc;
      }
    }
    desc = std::move(next);
  }
  std::reverse(desc.begin(), desc.end());
  return Polynomial(std::move(desc));
}

}  // namespace growthdeg

#endif  // GROWTHDEG_POLYNOMIAL_HPP
