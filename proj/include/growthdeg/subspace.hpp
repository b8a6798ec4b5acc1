#ifndef GROWTHDEG_SUBSPACE_HPP
#define GROWTHDEG_SUBSPACE_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "growthdeg/matrix.hpp"

namespace growthdeg {

struct NotInvariantError : std::invalid_argument {
  NotInvariantError(const std::string& what, Vector witness_vec)
      : std::invalid_argument(what), witness(std::move(witness_vec)) {}
  Vector witness;
};

/// Subspace of Q^d held as a reduced column-echelon basis: pivot rows are
/// strictly increasing, each pivot entry is 1, and every other basis vector
/// vanishes on that pivot row. The representation is canonical, so two
/// equal subspaces compare equal as basis lists.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  static Subspace zero(std::size_t ambient_dim) {
    return Subspace(ambient_dim);
  }

  static Subspace full(std::size_t ambient_dim) {
    Subspace s(ambient_dim);
    for (std::size_t i = 0; i < ambient_dim; ++i) {
      Vector e(ambient_dim);
      e[i] = 1;
      s.insert(std::move(e));
    }
    return s;
  }

  static Subspace span(std::size_t ambient_dim,
                       const std::vector<Vector>& vectors) {
    Subspace s(ambient_dim);
    for (const auto& v : vectors) s.insert(v);
    return s;
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  bool is_zero() const { return basis_.empty(); }
  bool is_full() const { return basis_.size() == ambient_; }

  const std::vector<Vector>& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Rows that carry no pivot, in increasing order; the matching standard
  /// basis vectors complete basis() to a basis of the ambient space.
  std::vector<std::size_t> non_pivots() const {
    std::vector<std::size_t> out;
    std::size_t next = 0;
    for (std::size_t r = 0; r < ambient_; ++r) {
      if (next < pivots_.size() && pivots_[next] == r) {
        ++next;
      } else {
        out.push_back(r);
      }
    }
    return out;
  }

  /// Residual of v after eliminating all basis components.
  Vector reduce(Vector v) const {
    check_dim(v);
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      const Rational c = v[pivots_[j]];
      if (c == 0) continue;
      for (std::size_t r = 0; r < ambient_; ++r) v[r] -= c * basis_[j][r];
    }
    return v;
  }

  bool contains(const Vector& v) const { return growthdeg::is_zero(reduce(v)); }

  bool contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) return false;
    for (const auto& b : other.basis_) {
      if (!contains(b)) return false;
    }
    return true;
  }

  /// Coordinates of v in the basis, or nullopt when v lies outside.
  std::optional<Vector> coordinates(const Vector& v) const {
    check_dim(v);
    Vector coords(basis_.size());
    Vector rem = v;
    for (std::size_t j = 0; j < basis_.size(); ++j) {
      const Rational c = rem[pivots_[j]];
      coords[j] = c;
      if (c == 0) continue;
      for (std::size_t r = 0; r < ambient_; ++r) rem[r] -= c * basis_[j][r];
    }
    if (!growthdeg::is_zero(rem)) return std::nullopt;
    return coords;
  }

  /// Adds v to the span; returns true when the dimension grew.
  bool insert(Vector v) {
    Vector r = reduce(std::move(v));
    std::size_t pivot = ambient_;
    for (std::size_t i = 0; i < ambient_; ++i) {
      if (r[i] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot == ambient_) return false;
    const Rational inv = Rational(1) / r[pivot];
    for (auto& e : r) e *= inv;
    for (auto& b : basis_) {
      const Rational c = b[pivot];
      if (c == 0) continue;
      for (std::size_t i = 0; i < ambient_; ++i) b[i] -= c * r[i];
    }
    std::size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < pivot) ++pos;
    basis_.insert(basis_.begin() + static_cast<std::ptrdiff_t>(pos),
                  std::move(r));
    pivots_.insert(pivots_.begin() + static_cast<std::ptrdiff_t>(pos), pivot);
    return true;
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) {
    return !(a == b);
  }

 private:
  void check_dim(const Vector& v) const {
    if (v.size() != ambient_) {
      throw DimensionError("Subspace: vector length " +
                           std::to_string(v.size()) + " vs ambient " +
                           std::to_string(ambient_));
    }
  }

  std::size_t ambient_;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Smallest subspace containing the seed vectors and closed under left
/// multiplication by every generator. Terminates after at most d
/// enlargement rounds since each full pass either grows the dimension or
/// stops.
inline Subspace span_closure(const std::vector<Vector>& seed,
                             const std::vector<Matrix>& generators) {
  std::size_t ambient = 0;
  if (!generators.empty()) {
    ambient = generators.front().rows();
  } else if (!seed.empty()) {
    ambient = seed.front().size();
  } else {
    throw std::invalid_argument("span_closure: empty seed and generators");
  }
  for (const auto& g : generators) {
    if (!g.square() || g.rows() != ambient) {
      throw DimensionError("span_closure: generator shape " + g.shape() +
                           " vs ambient " + std::to_string(ambient));
    }
  }
  Subspace s(ambient);
  for (const auto& v : seed) s.insert(v);
  bool grew = true;
  while (grew) {
    grew = false;
    const std::vector<Vector> snapshot = s.basis();
    for (const auto& g : generators) {
      for (const auto& b : snapshot) {
        if (s.insert(g * b)) grew = true;
      }
    }
  }
  return s;
}

/// Throws NotInvariantError (with the offending image) unless a * w <= w.
inline void require_invariant(const Matrix& a, const Subspace& w,
                              const char* who) {
  if (!a.square() || a.rows() != w.ambient()) {
    throw DimensionError(std::string(who) + ": matrix shape " + a.shape() +
                         " vs ambient " + std::to_string(w.ambient()));
  }
  for (const auto& b : w.basis()) {
    Vector image = a * b;
    if (!w.contains(image)) {
      throw NotInvariantError(
          std::string(who) + ": subspace is not invariant under the matrix",
          std::move(image));
    }
  }
}

/// The action of a on w in the canonical basis of w (the e x e block).
inline Matrix restrict_to(const Matrix& a, const Subspace& w) {
  require_invariant(a, w, "restrict_to");
  const std::size_t e = w.dim();
  Matrix block(e, e);
  for (std::size_t j = 0; j < e; ++j) {
    const auto coords = w.coordinates(a * w.basis()[j]);
    for (std::size_t i = 0; i < e; ++i) block(i, j) = (*coords)[i];
  }
  return block;
}

struct ActionBlocks {
  Matrix restricted;  // e x e, action on w
  Matrix coupling;    // e x (d-e)
  Matrix quotient;    // (d-e) x (d-e), action on V/w
};

/// Splits a into blocks relative to the basis [w-basis | complement],
/// where the complement consists of the standard basis vectors on the
/// non-pivot rows of w. Requires a * w <= w; then
///   U^{-1} a U = [[restricted, coupling], [0, quotient]]
/// for U = extend_to_basis(w).
inline ActionBlocks split_action(const Matrix& a, const Subspace& w) {
  ActionBlocks blocks;
  blocks.restricted = restrict_to(a, w);
  const std::vector<std::size_t> rest = w.non_pivots();
  const std::size_t e = w.dim();
  const std::size_t q = rest.size();
  blocks.coupling = Matrix(e, q);
  blocks.quotient = Matrix(q, q);
  for (std::size_t j = 0; j < q; ++j) {
    Vector y = a.col(rest[j]);
    // Peel off the w-component; the pivots of w index its coordinates.
    for (std::size_t i = 0; i < e; ++i) {
      const Rational c = y[w.pivots()[i]];
      blocks.coupling(i, j) = c;
      if (c == 0) continue;
      for (std::size_t r = 0; r < y.size(); ++r) {
        y[r] -= c * w.basis()[i][r];
      }
    }
    for (std::size_t k = 0; k < q; ++k) blocks.quotient(k, j) = y[rest[k]];
  }
  return blocks;
}

/// The induced action on V/w in complement coordinates.
inline Matrix quotient_action(const Matrix& a, const Subspace& w) {
  return split_action(a, w).quotient;
}

/// U = [basis of w | standard complement]; invertible by construction.
inline Matrix extend_to_basis(const Subspace& w) {
  const std::size_t d = w.ambient();
  Matrix u(d, d);
  std::size_t col = 0;
  for (const auto& b : w.basis()) {
    for (std::size_t r = 0; r < d; ++r) u(r, col) = b[r];
    ++col;
  }
  for (std::size_t r : w.non_pivots()) {
    u(r, col) = 1;
    ++col;
  }
  return u;
}

}  // namespace growthdeg

#endif  // GROWTHDEG_SUBSPACE_HPP
