#ifndef GROWTHDEG_MATRIX_HPP
#define GROWTHDEG_MATRIX_HPP

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "growthdeg/rational.hpp"

namespace growthdeg {

using Vector = std::vector<Rational>;

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Dense matrix of exact rationals, row-major. Empty (0x0) matrices are
/// legal and behave as the identity of the trivial space.
class Matrix {
 public:
  Matrix() = default;

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
      if (row.size() != cols_) {
        throw DimensionError("Matrix: ragged initializer rows");
      }
      for (const auto& e : row) entries_.push_back(e);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix zero(std::size_t rows, std::size_t cols) {
    return Matrix(rows, cols);
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  const Rational& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  Rational& operator()(std::size_t i, std::size_t j) {
    return entries_[i * cols_ + j];
  }

  bool is_zero() const {
    for (const auto& e : entries_) {
      if (e != 0) return false;
    }
    return true;
  }

  bool is_identity() const {
    if (!square()) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
      }
    }
    return true;
  }

  bool is_integral() const {
    for (const auto& e : entries_) {
      if (!growthdeg::is_integral(e)) return false;
    }
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  Vector col(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Vector row(std::size_t i) const {
    Vector v(cols_);
    for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
    return v;
  }

  std::string shape() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.entries_ == b.entries_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) {
    return !(a == b);
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o, "+");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      entries_[i] += o.entries_[i];
    }
    return *this;
  }

  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o, "-");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      entries_[i] -= o.entries_[i];
    }
    return *this;
  }

  Matrix& operator*=(const Rational& c) {
    for (auto& e : entries_) e *= c;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, const Rational& c) { return a *= c; }
  friend Matrix operator*(const Rational& c, Matrix a) { return a *= c; }
  friend Matrix operator-(const Matrix& a) {
    Matrix r = a;
    for (auto& e : r.entries_) e = -e;
    return r;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) {
      throw DimensionError("mat_mul: dimension mismatch (" + a.shape() +
                           " vs " + b.shape() + ")");
    }
    Matrix r(a.rows_, b.cols_);
    Rational acc;
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Rational& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const Rational& bkj = b(k, j);
          if (bkj == 0) continue;
          acc = aik * bkj;
          r(i, j) += acc;
        }
      }
    }
    return r;
  }

 private:
  void require_same_shape(const Matrix& o, const char* op) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) {
      throw DimensionError(std::string("Matrix ") + op +
                           ": shape mismatch (" + shape() + " vs " +
                           o.shape() + ")");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> entries_;
};

inline Matrix mat_mul(const Matrix& a, const Matrix& b) { return a * b; }

/// a^n by binary exponentiation; a^0 is the identity. Exact.
inline Matrix mat_pow(const Matrix& a, const Integer& n) {
  if (!a.square()) {
    throw DimensionError("mat_pow: non-square matrix (" + a.shape() + ")");
  }
  if (n < 0) throw std::invalid_argument("mat_pow: negative exponent");
  Matrix result = Matrix::identity(a.rows());
  if (n == 0) return result;
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(n.get_mpz_t(), i)) result = result * a;
  }
  return result;
}

enum class NormKind { inf_operator, frobenius_sq };

/// inf_operator: max over rows of the sum of absolute entries.
/// frobenius_sq: sum of squared entries (Tr(A A^T) for real entries);
/// note this is the squared Frobenius value, not homogeneous of degree 1.
inline Rational norm(const Matrix& a, NormKind kind) {
  Rational result = 0;
  switch (kind) {
    case NormKind::inf_operator: {
      for (std::size_t i = 0; i < a.rows(); ++i) {
        Rational row_sum = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) row_sum += abs(a(i, j));
        if (row_sum > result) result = row_sum;
      }
      return result;
    }
    case NormKind::frobenius_sq: {
      for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) result += a(i, j) * a(i, j);
      }
      return result;
    }
  }
  throw std::invalid_argument("norm: unknown kind");
}

inline const char* norm_name(NormKind kind) {
  return kind == NormKind::inf_operator ? "inf_operator" : "frobenius_sq";
}

// ---- vector helpers ----

inline bool is_zero(const Vector& v) {
  for (const auto& e : v) {
    if (e != 0) return false;
  }
  return true;
}

inline Rational dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw DimensionError("dot: length mismatch (" + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()) + ")");
  }
  Rational r = 0;
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

/// Matrix times column vector.
inline Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols() != v.size()) {
    throw DimensionError("matrix*vector: dimension mismatch (" + a.shape() +
                         " vs " + std::to_string(v.size()) + ")");
  }
  Vector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Rational acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * v[j];
    r[i] = std::move(acc);
  }
  return r;
}

/// Row vector times matrix.
inline Vector operator*(const Vector& v, const Matrix& a) {
  if (a.rows() != v.size()) {
    throw DimensionError("vector*matrix: dimension mismatch (" +
                         std::to_string(v.size()) + " vs " + a.shape() + ")");
  }
  Vector r(a.cols());
  for (std::size_t j = 0; j < a.cols(); ++j) {
    Rational acc = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) acc += v[i] * a(i, j);
    r[j] = std::move(acc);
  }
  return r;
}

/// Column vector times row vector.
inline Matrix outer(const Vector& col, const Vector& row) {
  Matrix r(col.size(), row.size());
  for (std::size_t i = 0; i < col.size(); ++i) {
    for (std::size_t j = 0; j < row.size(); ++j) r(i, j) = col[i] * row[j];
  }
  return r;
}

/// Total order: by shape, then lexicographic over entries.
inline int compare(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) return a.rows() < b.rows() ? -1 : 1;
  if (a.cols() != b.cols()) return a.cols() < b.cols() ? -1 : 1;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const int c = cmp(a(i, j), b(i, j));
      if (c != 0) return c;
    }
  }
  return 0;
}

struct MatrixLess {
  bool operator()(const Matrix& a, const Matrix& b) const {
    return compare(a, b) < 0;
  }
};

inline std::size_t hash_value(const Matrix& a) {
  std::size_t h = hash_combine(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      h = hash_combine(h, hash_value(a(i, j)));
    }
  }
  return h;
}

struct MatrixHash {
  std::size_t operator()(const Matrix& a) const { return hash_value(a); }
};

inline std::ostream& operator<<(std::ostream& os, const Matrix& a) {
  os << '[';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j) os << ',';
      os << to_string(a(i, j));
    }
    os << ']';
  }
  return os << ']';
}

}  // namespace growthdeg

#endif  // GROWTHDEG_MATRIX_HPP
