#ifndef GROWTHDEG_TAMENESS_HPP
#define GROWTHDEG_TAMENESS_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "growthdeg/matrix.hpp"
#include "growthdeg/polynomial.hpp"
#include "growthdeg/subspace.hpp"

namespace growthdeg {

/// B(d) = lcm of all m with Euler phi(m) <= d. Any root of unity
/// satisfying a rational polynomial of degree <= d has order dividing
/// B(d), so x tame implies the eigenvalues of x^B(d) all lie in {0, 1}.
struct CycloBound {
  unsigned dim = 0;
  Integer bound;
};

namespace detail {

inline unsigned long euler_phi(unsigned long m) {
  unsigned long result = m;
  for (unsigned long p = 2; p * p <= m; ++p) {
    if (m % p == 0) {
      result -= result / p;
      while (m % p == 0) m /= p;
    }
  }
  if (m > 1) result -= result / m;
  return result;
}

}  // namespace detail

/// Enumeration terminates because phi(m) >= sqrt(m/2), so phi(m) <= d
/// forces m <= 2 d^2.
inline CycloBound cyclo_exponent(unsigned d) {
  if (d == 0) throw std::invalid_argument("cyclo_exponent: dimension 0");
  CycloBound out;
  out.dim = d;
  out.bound = 1;
  const unsigned long limit = 2ul * d * d;
  for (unsigned long m = 1; m <= limit; ++m) {
    if (detail::euler_phi(m) <= d) {
      mpz_lcm_ui(out.bound.get_mpz_t(), out.bound.get_mpz_t(), m);
    }
  }
  return out;
}

/// Verdict of a tameness test. Non-tame verdicts carry the offending
/// matrix and its characteristic polynomial.
struct TamenessVerdict {
  bool tame = false;
  std::optional<Matrix> witness;
  std::optional<Polynomial> witness_char_poly;
};

struct NotTameError : std::runtime_error {
  NotTameError(const std::string& what, TamenessVerdict v)
      : std::runtime_error(what), verdict(std::move(v)) {}
  TamenessVerdict verdict;
};

/// A matrix is tame when every eigenvalue is zero or a root of unity.
/// With B = B(d) this is equivalent to (x^{2B} - x^B)^d = 0: the nonzero
/// eigenvalues of a rational matrix of dimension <= d that are roots of
/// unity have order dividing B, so x^B has eigenvalues in {0, 1} exactly
/// when x is tame, and the difference x^{2B} - x^B is then nilpotent.
inline TamenessVerdict is_tame_matrix(const Matrix& x, unsigned d) {
  if (!x.square()) {
    throw DimensionError("is_tame_matrix: non-square matrix (" + x.shape() +
                         ")");
  }
  if (x.rows() > d) {
    throw std::invalid_argument("is_tame_matrix: matrix dimension " +
                                std::to_string(x.rows()) +
                                " exceeds bound " + std::to_string(d));
  }
  const Integer b = cyclo_exponent(d).bound;
  const Matrix xb = mat_pow(x, b);
  const Matrix diff = xb * xb - xb;
  TamenessVerdict verdict;
  verdict.tame = mat_pow(diff, Integer(static_cast<unsigned long>(
                                   x.rows() == 0 ? 1 : x.rows())))
                     .is_zero();
  if (!verdict.tame) {
    verdict.witness = x;
    verdict.witness_char_poly = char_poly(x);
  }
  return verdict;
}

/// Characteristic-polynomial route: p is the char poly of a tame matrix
/// iff the squarefree part of p divides x (x^B - 1). Agrees with
/// is_tame_matrix on companion matrices; kept as an independent oracle.
inline bool is_tame_charpoly(const Polynomial& p, unsigned d) {
  if (!p.is_monic()) {
    throw std::invalid_argument("is_tame_charpoly: polynomial is not monic");
  }
  if (p.degree() > static_cast<int>(d)) {
    throw std::invalid_argument("is_tame_charpoly: degree " +
                                std::to_string(p.degree()) +
                                " exceeds bound " + std::to_string(d));
  }
  const Integer b = cyclo_exponent(d).bound;
  const Polynomial q = squarefree_part(p);
  if (q.degree() <= 0) return true;
  // q | x (x^B - 1)  <=>  x^{B+1} == x mod q.
  const Polynomial lhs = powmod(Polynomial::x(), b + 1, q);
  const Polynomial rhs = Polynomial::divmod(Polynomial::x(), q).second;
  return lhs == rhs;
}

struct EnumerationBudget {
  std::size_t max_word_len = 0;  // 0 resolves to 2 * dimension
  std::size_t max_elements = 200000;
};

struct ProductEnumeration {
  std::vector<Matrix> elements;  // distinct products incl. identity, BFS order
  bool capped = false;           // element cap hit; enumeration incomplete
  bool closed = false;           // no new products before the length limit
};

/// Distinct products of the generators up to the given word length,
/// including the identity (the empty product). Breadth-first with exact
/// dedup, so the order is deterministic.
inline ProductEnumeration enumerate_products(const std::vector<Matrix>& gens,
                                             std::size_t max_word_len,
                                             std::size_t max_elements) {
  std::size_t dim = 0;
  if (!gens.empty()) dim = gens.front().rows();
  for (const auto& g : gens) {
    if (!g.square() || g.rows() != dim) {
      throw DimensionError("enumerate_products: generator shape " + g.shape());
    }
  }
  ProductEnumeration out;
  std::unordered_set<Matrix, MatrixHash> seen;
  std::vector<Matrix> frontier{Matrix::identity(dim)};
  seen.insert(frontier.front());
  out.elements.push_back(frontier.front());
  for (std::size_t len = 1; len <= max_word_len; ++len) {
    std::vector<Matrix> next;
    for (const auto& p : frontier) {
      for (const auto& g : gens) {
        Matrix prod = p * g;
        if (seen.insert(prod).second) {
          out.elements.push_back(prod);
          if (out.elements.size() > max_elements) {
            out.capped = true;
            return out;
          }
          next.push_back(std::move(prod));
        }
      }
    }
    if (next.empty()) {
      out.closed = true;
      return out;
    }
    frontier = std::move(next);
  }
  return out;
}

/// Simultaneous block triangularization of a tame generator family.
struct BlockTriangularization {
  Matrix basis_change;             // U, invertible
  std::size_t split = 0;           // e, 1 <= e <= d-1
  std::vector<Matrix> restricted;  // B_i, e x e
  std::vector<Matrix> coupling;    // D_i, e x (d-e)
  std::vector<Matrix> quotient;    // C_i, (d-e) x (d-e)
  Subspace invariant;              // the common invariant subspace found

  BlockTriangularization() : invariant(0) {}
};

/// Searches for a proper nonzero common invariant subspace, seeded by the
/// columns of X^{2a} - X^a over semigroup elements X enumerated up to the
/// budget (a = B(d)) and closed under the generators. Returns the basis
/// change U = [W-basis | complement] with the exact block families, or
/// nullopt when nothing proper was found within budget - which is the
/// expected outcome for a finite semigroup. Every generator must be tame.
inline std::optional<BlockTriangularization> block_triangularize(
    const std::vector<Matrix>& gens, EnumerationBudget budget = {}) {
  if (gens.empty()) {
    throw std::invalid_argument("block_triangularize: no generators");
  }
  const std::size_t d = gens.front().rows();
  if (d < 2) {
    throw std::invalid_argument("block_triangularize: dimension must be >= 2");
  }
  for (const auto& g : gens) {
    TamenessVerdict v = is_tame_matrix(g, static_cast<unsigned>(d));
    if (!v.tame) {
      throw NotTameError("block_triangularize: generator is not tame",
                         std::move(v));
    }
  }
  const Integer a = cyclo_exponent(static_cast<unsigned>(d)).bound;
  const std::size_t word_len =
      budget.max_word_len ? budget.max_word_len : 2 * d;
  const ProductEnumeration semi =
      enumerate_products(gens, word_len, budget.max_elements);
  std::vector<Vector> seed;
  for (const auto& x : semi.elements) {
    const Matrix xa = mat_pow(x, a);
    const Matrix diff = xa * xa - xa;
    for (std::size_t j = 0; j < d; ++j) {
      Vector c = diff.col(j);
      if (!is_zero(c)) seed.push_back(std::move(c));
    }
  }
  Subspace w = seed.empty() ? Subspace::zero(d) : span_closure(seed, gens);
  if (w.dim() == 0 || w.dim() == d) return std::nullopt;
  BlockTriangularization out;
  out.basis_change = extend_to_basis(w);
  out.split = w.dim();
  for (const auto& g : gens) {
    ActionBlocks blocks = split_action(g, w);
    out.restricted.push_back(std::move(blocks.restricted));
    out.coupling.push_back(std::move(blocks.coupling));
    out.quotient.push_back(std::move(blocks.quotient));
  }
  out.invariant = std::move(w);
  return out;
}

}  // namespace growthdeg

#endif  // GROWTHDEG_TAMENESS_HPP
