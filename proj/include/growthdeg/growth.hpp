#ifndef GROWTHDEG_GROWTH_HPP
#define GROWTHDEG_GROWTH_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>
#include <utility>
#include <vector>

#include "growthdeg/matrix.hpp"
#include "growthdeg/polynomial.hpp"
#include "growthdeg/subspace.hpp"
#include "growthdeg/tameness.hpp"

namespace growthdeg {

struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

/// A finite set of square integer matrices acting on Q^d. The growth
/// classification for integer matrices relies on Kronecker's theorem, so
/// integrality is enforced here; the underlying machinery also runs on
/// rational families via the std::vector<Matrix> entry points.
class GeneratorSet {
 public:
  GeneratorSet(std::vector<Matrix> matrices, std::vector<std::string> labels = {})
      : matrices_(std::move(matrices)), labels_(std::move(labels)) {
    if (matrices_.empty()) {
      throw std::invalid_argument("GeneratorSet: no matrices");
    }
    dim_ = matrices_.front().rows();
    for (const auto& m : matrices_) {
      if (!m.square() || m.rows() != dim_) {
        throw DimensionError("GeneratorSet: matrix shape " + m.shape() +
                             " does not match dimension " +
                             std::to_string(dim_));
      }
      if (!m.is_integral()) {
        throw std::invalid_argument(
            "GeneratorSet: matrices must have integer entries");
      }
    }
    if (!labels_.empty() && labels_.size() != matrices_.size()) {
      throw std::invalid_argument("GeneratorSet: label count mismatch");
    }
  }

  std::size_t dim() const { return dim_; }
  std::size_t alphabet() const { return matrices_.size(); }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  std::size_t dim_ = 0;
  std::vector<Matrix> matrices_;
  std::vector<std::string> labels_;
};

struct Budgets {
  std::size_t max_n = 32;
  std::size_t word_budget = 0;  // 0 resolves to 2 * dimension
  std::size_t closure_cap = 1000000;
  std::size_t frontier_budget = 200000;
  NormKind norm = NormKind::inf_operator;
  std::size_t seq_max_len = 0;  // 0 resolves per alphabet size
};

namespace detail {

inline unsigned thread_count() {
  static const unsigned n = [] {
    const char* env = std::getenv("GROWTHDEG_THREADS");
    if (!env) return 1u;
    const long parsed = std::strtol(env, nullptr, 10);
    if (parsed < 1) return 1u;
    if (parsed > 64) return 64u;
    return static_cast<unsigned>(parsed);
  }();
  return n;
}

/// products[i * m + j] = gens[j] * frontier[i]. Chunked across threads
/// with in-order concatenation, so the result does not depend on the
/// thread count.
inline std::vector<Matrix> expand_frontier(const std::vector<Matrix>& frontier,
                                           const std::vector<Matrix>& gens) {
  const std::size_t m = gens.size();
  std::vector<Matrix> products(frontier.size() * m);
  const unsigned threads = thread_count();
  const auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        products[i * m + j] = gens[j] * frontier[i];
      }
    }
  };
  if (threads <= 1 || frontier.size() < 64) {
    work(0, frontier.size());
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (frontier.size() + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(frontier.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }
  return products;
}

inline void sort_unique(std::vector<Matrix>& mats) {
  std::sort(mats.begin(), mats.end(), MatrixLess{});
  mats.erase(std::unique(mats.begin(), mats.end()), mats.end());
}

inline std::size_t resolve_word_budget(const Budgets& b, std::size_t dim) {
  return b.word_budget ? b.word_budget : 2 * dim;
}

inline void check_generators(const std::vector<Matrix>& gens) {
  if (gens.empty()) throw std::invalid_argument("no generator matrices");
  const std::size_t d = gens.front().rows();
  if (d == 0) {
    throw std::invalid_argument("zero-dimensional generator matrices");
  }
  for (const auto& g : gens) {
    if (!g.square() || g.rows() != d) {
      throw DimensionError("generator shape " + g.shape() +
                           " does not match dimension " + std::to_string(d));
    }
  }
}

/// log of a positive rational through mantissa/exponent pairs, safe for
/// values far beyond double range.
inline double log_rational(const Rational& q) {
  signed long en = 0, ed = 0;
  const double dn = mpz_get_d_2exp(&en, mpq_numref(q.get_mpq_t()));
  const double dd = mpz_get_d_2exp(&ed, mpq_denref(q.get_mpq_t()));
  constexpr double ln2 = 0.6931471805599453;
  return std::log(std::fabs(dn)) + static_cast<double>(en) * ln2 -
         (std::log(std::fabs(dd)) + static_cast<double>(ed) * ln2);
}

}  // namespace detail

/// Exact table of m_n = max over all products of exactly n generators of
/// the chosen norm, with the count of distinct products per length.
struct MnTable {
  NormKind norm = NormKind::inf_operator;
  std::vector<Rational> values;       // m_0 .. m_N
  std::vector<std::size_t> frontier;  // distinct products per length
  bool truncated = false;
  std::size_t reliable_upto = 0;  // values beyond this index are lower bounds
};

/// Frontier recursion S_0 = {I}, S_{n+1} = dedup{ A_i P }. When a frontier
/// exceeds the budget it is cut back to the first `budget` elements in
/// canonical order and everything from that length on is marked unreliable.
inline MnTable mn_bruteforce(const std::vector<Matrix>& gens, std::size_t max_n,
                             NormKind kind, std::size_t frontier_budget) {
  detail::check_generators(gens);
  const std::size_t d = gens.front().rows();
  MnTable table;
  table.norm = kind;
  table.reliable_upto = max_n;
  std::vector<Matrix> frontier{Matrix::identity(d)};
  table.values.push_back(norm(frontier.front(), kind));
  table.frontier.push_back(1);
  for (std::size_t n = 1; n <= max_n; ++n) {
    std::vector<Matrix> next = detail::expand_frontier(frontier, gens);
    detail::sort_unique(next);
    table.frontier.push_back(next.size());
    if (next.size() > frontier_budget) {
      if (!table.truncated) {
        table.truncated = true;
        table.reliable_upto = n - 1;
      }
      next.resize(frontier_budget);
    }
    Rational best = 0;
    for (const auto& p : next) {
      Rational v = norm(p, kind);
      if (v > best) best = std::move(v);
    }
    table.values.push_back(std::move(best));
    frontier = std::move(next);
  }
  return table;
}

inline MnTable mn_bruteforce(const GeneratorSet& gens, std::size_t max_n,
                             NormKind kind, std::size_t frontier_budget) {
  return mn_bruteforce(gens.matrices(), max_n, kind, frontier_budget);
}

/// True iff every product of exactly d generators vanishes. If all long
/// products vanish then every semigroup element is nilpotent, hence by
/// Levitzki's theorem simultaneously strictly triangularizable, and all
/// products of length d already vanish; conversely zero at length d forces
/// zero forever. This turns the limit condition m_n -> 0 into a finite
/// check.
inline bool detect_degenerate(const std::vector<Matrix>& gens) {
  detail::check_generators(gens);
  const std::size_t d = gens.front().rows();
  std::vector<Matrix> frontier = gens;
  detail::sort_unique(frontier);
  for (std::size_t n = 1; n <= d; ++n) {
    bool all_zero = true;
    for (const auto& p : frontier) {
      if (!p.is_zero()) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) return true;
    if (n == d) break;
    std::vector<Matrix> next = detail::expand_frontier(frontier, gens);
    detail::sort_unique(next);
    frontier = std::move(next);
  }
  return false;
}

inline bool detect_degenerate(const GeneratorSet& gens) {
  return detect_degenerate(gens.matrices());
}

/// Word over the alphabet {1, .., m}; symbol i selects the i-th generator.
using Word = std::vector<int>;

struct WitnessSearch {
  std::optional<Word> witness;  // first word whose product is not tame
  bool budget_exhausted = false;
};

/// Breadth-first scan of distinct products for one failing the tameness
/// test. A non-tame product of integer matrices certifies exponential
/// growth: by Kronecker's theorem an algebraic integer that is neither
/// zero nor a root of unity has a conjugate of modulus > 1.
inline WitnessSearch detect_exponential(const std::vector<Matrix>& gens,
                                        std::size_t max_word_len,
                                        std::size_t element_cap = 200000) {
  detail::check_generators(gens);
  const std::size_t d = gens.front().rows();
  const unsigned dim = static_cast<unsigned>(d);
  WitnessSearch out;
  std::unordered_set<Matrix, MatrixHash> seen;
  std::deque<std::pair<Matrix, Word>> queue;
  const Matrix id = Matrix::identity(d);
  seen.insert(id);
  queue.emplace_back(id, Word{});
  while (!queue.empty()) {
    auto [mat, word] = std::move(queue.front());
    queue.pop_front();
    if (word.size() >= max_word_len) {
      out.budget_exhausted = true;
      continue;
    }
    for (std::size_t j = 0; j < gens.size(); ++j) {
      Matrix prod = mat * gens[j];
      if (!seen.insert(prod).second) continue;
      Word next_word = word;
      next_word.push_back(static_cast<int>(j) + 1);
      if (!is_tame_matrix(prod, dim).tame) {
        out.witness = std::move(next_word);
        return out;
      }
      if (seen.size() > element_cap) {
        out.budget_exhausted = true;
        return out;
      }
      queue.emplace_back(std::move(prod), std::move(next_word));
    }
  }
  return out;
}

inline WitnessSearch detect_exponential(const GeneratorSet& gens,
                                        std::size_t max_word_len,
                                        std::size_t element_cap = 200000) {
  return detect_exponential(gens.matrices(), max_word_len, element_cap);
}

struct SemigroupClosure {
  bool finite = false;
  std::vector<Matrix> elements;  // BFS discovery order, identity first
};

/// Breadth-first closure of the generated semigroup (with identity).
/// finite is set iff the closure stabilizes within the cap.
inline SemigroupClosure semigroup_closure(const std::vector<Matrix>& gens,
                                          std::size_t cap) {
  detail::check_generators(gens);
  SemigroupClosure out;
  std::unordered_set<Matrix, MatrixHash> seen;
  std::deque<Matrix> queue;
  const Matrix id = Matrix::identity(gens.front().rows());
  seen.insert(id);
  out.elements.push_back(id);
  if (out.elements.size() > cap) return out;  // cap below the identity
  queue.push_back(id);
  while (!queue.empty()) {
    Matrix front = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Matrix prod = front * g;
      if (!seen.insert(prod).second) continue;
      out.elements.push_back(prod);
      if (out.elements.size() > cap) return out;  // finite stays false
      queue.push_back(std::move(prod));
    }
  }
  out.finite = true;
  return out;
}

inline SemigroupClosure semigroup_closure(const GeneratorSet& gens,
                                          std::size_t cap) {
  return semigroup_closure(gens.matrices(), cap);
}

/// Invariant-subspace chain V = V(0) > V(1) > ... > V(k) = 0 with
/// exponent a = B(d). The depth k is the degree witness: m_n grows like
/// n^{k-1}.
struct Filtration {
  Integer exponent;                         // the a used in X^{2a} - X^a
  std::vector<Subspace> chain;              // ambient coordinates, full .. zero
  std::vector<std::size_t> quotient_sizes;  // per level, |quotient semigroup|

  std::size_t depth() const { return chain.empty() ? 0 : chain.size() - 1; }
};

struct FiltrationResult {
  std::optional<Filtration> value;
  std::string failure;  // nonempty when the budgets were exhausted
};

namespace detail {

/// One filtration level: the span closure of { (X^{2a} - X^a) e_j } over
/// distinct products X up to the word budget. Larger budgets only grow
/// the space.
inline std::optional<Subspace> level_subspace(const std::vector<Matrix>& gens,
                                              const Integer& a,
                                              std::size_t word_len,
                                              std::size_t element_cap) {
  const ProductEnumeration semi =
      enumerate_products(gens, word_len, element_cap);
  if (semi.capped) return std::nullopt;
  const std::size_t d = gens.front().rows();
  std::vector<Vector> seed;
  for (const auto& x : semi.elements) {
    const Matrix xa = mat_pow(x, a);
    const Matrix diff = xa * xa - xa;
    for (std::size_t j = 0; j < d; ++j) {
      Vector c = diff.col(j);
      if (!is_zero(c)) seed.push_back(std::move(c));
    }
  }
  if (seed.empty()) return Subspace::zero(d);
  return span_closure(seed, gens);
}

}  // namespace detail

/// Builds the filtration level by level. At each level the candidate
/// subspace must stabilize across two consecutive word-budget increments
/// before it is accepted, the quotient action must generate a finite
/// semigroup (verified, not assumed), and the dimension must strictly
/// drop. Any failure is reported as an inconclusive outcome rather than a
/// guess.
inline FiltrationResult filtration(const std::vector<Matrix>& gens,
                                   std::size_t word_budget,
                                   std::size_t closure_cap,
                                   std::size_t element_cap = 200000) {
  detail::check_generators(gens);
  const std::size_t d = gens.front().rows();
  for (const auto& g : gens) {
    TamenessVerdict v = is_tame_matrix(g, static_cast<unsigned>(d));
    if (!v.tame) {
      throw NotTameError("filtration: generator is not tame", std::move(v));
    }
  }
  if (detect_degenerate(gens)) {
    throw std::invalid_argument("filtration: degenerate generator set");
  }
  const Integer a = cyclo_exponent(static_cast<unsigned>(d)).bound;
  const std::size_t base_budget = word_budget ? word_budget : 2 * d;

  FiltrationResult result;
  Filtration filt;
  filt.exponent = a;
  filt.chain.push_back(Subspace::full(d));

  // Basis columns of the current level inside the original space.
  Matrix level_basis = Matrix::identity(d);
  std::vector<Matrix> level_gens = gens;

  while (true) {
    const std::size_t level_dim = level_basis.cols();
    // Stabilize the candidate subspace across two budget increments.
    std::optional<Subspace> candidate;
    {
      std::size_t budget = base_budget;
      const std::size_t max_budget = base_budget + 2 * d + 4;
      std::optional<Subspace> prev =
          detail::level_subspace(level_gens, a, budget, element_cap);
      if (!prev) {
        result.failure = "product enumeration exceeded the element cap";
        return result;
      }
      std::size_t stable = 0;
      while (stable < 2) {
        ++budget;
        if (budget > max_budget) break;
        std::optional<Subspace> cur =
            detail::level_subspace(level_gens, a, budget, element_cap);
        if (!cur) {
          result.failure = "product enumeration exceeded the element cap";
          return result;
        }
        if (*cur == *prev) {
          ++stable;
        } else {
          stable = 0;
          prev = std::move(cur);
        }
      }
      if (stable < 2) {
        result.failure = "invariant subspace failed to stabilize within the "
                         "word budget";
        return result;
      }
      candidate = std::move(prev);
    }
    const Subspace& w = *candidate;
    if (w.dim() >= level_dim) {
      result.failure = "invariant subspace chain failed to decrease "
                       "(non-tame product beyond the search budget?)";
      return result;
    }
    // The quotient action must generate a finite semigroup.
    std::vector<Matrix> quotient_gens;
    quotient_gens.reserve(level_gens.size());
    for (const auto& g : level_gens) {
      quotient_gens.push_back(quotient_action(g, w));
    }
    const SemigroupClosure closure =
        semigroup_closure(quotient_gens, closure_cap);
    if (!closure.finite) {
      result.failure = "quotient semigroup exceeded the closure cap";
      return result;
    }
    filt.quotient_sizes.push_back(closure.elements.size());

    // Map the local subspace into ambient coordinates.
    std::vector<Vector> ambient_basis;
    for (const auto& b : w.basis()) {
      ambient_basis.push_back(level_basis * b);
    }
    filt.chain.push_back(Subspace::span(d, ambient_basis));
    if (w.dim() == 0) break;

    // Recurse on the restriction.
    Matrix next_basis(d, w.dim());
    for (std::size_t j = 0; j < w.dim(); ++j) {
      for (std::size_t r = 0; r < d; ++r) next_basis(r, j) = ambient_basis[j][r];
    }
    std::vector<Matrix> restricted;
    restricted.reserve(level_gens.size());
    for (const auto& g : level_gens) {
      restricted.push_back(restrict_to(g, w));
    }
    level_basis = std::move(next_basis);
    level_gens = std::move(restricted);
  }

  if (filt.depth() < 1 || filt.depth() > d) {
    throw InvariantViolation("filtration: chain depth " +
                             std::to_string(filt.depth()) +
                             " outside [1, " + std::to_string(d) + "]");
  }
  result.value = std::move(filt);
  return result;
}

inline FiltrationResult filtration(const GeneratorSet& gens,
                                   std::size_t word_budget,
                                   std::size_t closure_cap,
                                   std::size_t element_cap = 200000) {
  return filtration(gens.matrices(), word_budget, closure_cap, element_cap);
}

enum class GrowthVerdict { degenerate, polynomial, exponential, inconclusive };

enum class RhoClass { zero, one, greater_than_one, unknown };

inline const char* verdict_name(GrowthVerdict v) {
  switch (v) {
    case GrowthVerdict::degenerate: return "degenerate";
    case GrowthVerdict::polynomial: return "polynomial";
    case GrowthVerdict::exponential: return "exponential";
    case GrowthVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

inline const char* rho_name(RhoClass r) {
  switch (r) {
    case RhoClass::zero: return "zero";
    case RhoClass::one: return "one";
    case RhoClass::greater_than_one: return "greater_than_one";
    case RhoClass::unknown: return "unknown";
  }
  return "?";
}

struct GrowthReport {
  GrowthVerdict verdict = GrowthVerdict::inconclusive;
  int degree = -1;  // k - 1 for polynomial verdicts
  std::optional<Filtration> filtration;
  Word witness_word;  // exponential verdicts
  std::optional<Polynomial> witness_char_poly;
  MnTable mn;
  std::optional<double> empirical_slope;
  std::size_t fit_lo = 0, fit_hi = 0;
  std::optional<Rational> empirical_c1, empirical_c2;
  RhoClass rho = RhoClass::unknown;
  std::string inconclusive_reason;
  Budgets budgets_used;
};

namespace detail {

inline std::optional<double> fit_slope(const MnTable& table, std::size_t lo,
                                       std::size_t hi) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n = std::max<std::size_t>(lo, 1); n <= hi; ++n) {
    if (n >= table.values.size()) break;
    if (table.values[n] <= 0) continue;
    pts.emplace_back(std::log(static_cast<double>(n)),
                     log_rational(table.values[n]));
  }
  if (pts.size() < 2) return std::nullopt;
  double mx = 0, my = 0;
  for (const auto& [x, y] : pts) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(pts.size());
  my /= static_cast<double>(pts.size());
  double num = 0, den = 0;
  for (const auto& [x, y] : pts) {
    num += (x - mx) * (y - my);
    den += (x - mx) * (x - mx);
  }
  if (den == 0) return std::nullopt;
  return num / den;
}

}  // namespace detail

/// Growth classification for a family of square rational matrices. The
/// exponential verdict relies on products having integer characteristic
/// polynomials; that holds for integer generators and for minimized
/// representations of integer-valued regular sequences (their products
/// are conjugate to integer matrices). Callers with plain integer
/// generators should use growth_degree on a GeneratorSet.
inline GrowthReport classify_growth(const std::vector<Matrix>& matrices,
                                    const Budgets& budgets = {}) {
  detail::check_generators(matrices);
  const std::size_t d = matrices.front().rows();
  const std::size_t word_budget = detail::resolve_word_budget(budgets, d);

  GrowthReport report;
  report.budgets_used = budgets;
  report.budgets_used.word_budget = word_budget;
  report.mn =
      mn_bruteforce(matrices, budgets.max_n, budgets.norm, budgets.frontier_budget);

  if (detect_degenerate(matrices)) {
    report.verdict = GrowthVerdict::degenerate;
    report.rho = RhoClass::zero;
  } else {
    WitnessSearch search;
    // Generators first, so a non-tame generator is reported as the
    // length-1 witness no matter how tight the enumeration caps are.
    for (std::size_t j = 0; j < matrices.size() && !search.witness; ++j) {
      if (!is_tame_matrix(matrices[j], static_cast<unsigned>(d)).tame) {
        search.witness = Word{static_cast<int>(j) + 1};
      }
    }
    if (!search.witness) {
      search = detect_exponential(matrices, word_budget, budgets.frontier_budget);
    }
    if (search.witness) {
      report.verdict = GrowthVerdict::exponential;
      report.rho = RhoClass::greater_than_one;
      report.witness_word = *search.witness;
      Matrix prod = Matrix::identity(d);
      for (int sym : report.witness_word) {
        prod = prod * matrices[static_cast<std::size_t>(sym - 1)];
      }
      report.witness_char_poly = char_poly(prod);
    } else {
      FiltrationResult filt = filtration(matrices, word_budget,
                                         budgets.closure_cap,
                                         budgets.frontier_budget);
      if (filt.value) {
        report.verdict = GrowthVerdict::polynomial;
        report.rho = RhoClass::one;
        report.degree = static_cast<int>(filt.value->depth()) - 1;
        report.filtration = std::move(filt.value);
      } else {
        report.verdict = GrowthVerdict::inconclusive;
        report.rho = RhoClass::unknown;
        report.inconclusive_reason = filt.failure;
        if (search.budget_exhausted) {
          report.inconclusive_reason +=
              "; exponential witness search exhausted its budget";
        }
      }
    }
  }

  const std::size_t hi = report.mn.reliable_upto;
  const std::size_t lo = std::max<std::size_t>(1, hi / 2);
  report.fit_lo = lo;
  report.fit_hi = hi;
  report.empirical_slope = detail::fit_slope(report.mn, lo, hi);
  if (report.verdict == GrowthVerdict::polynomial) {
    const unsigned long deg = static_cast<unsigned long>(report.degree);
    for (std::size_t n = 1; n <= hi && n < report.mn.values.size(); ++n) {
      Integer nk;
      mpz_ui_pow_ui(nk.get_mpz_t(), n, deg);
      const Rational ratio = report.mn.values[n] / Rational(nk);
      if (!report.empirical_c1 || ratio < *report.empirical_c1) {
        report.empirical_c1 = ratio;
      }
      if (!report.empirical_c2 || ratio > *report.empirical_c2) {
        report.empirical_c2 = ratio;
      }
    }
  }
  return report;
}

/// Full pipeline for integer generator sets: degenerate check, exponential
/// witness search, then the filtration degree with empirical evidence.
inline GrowthReport growth_degree(const GeneratorSet& gens,
                                  const Budgets& budgets = {}) {
  GrowthReport report = classify_growth(gens.matrices(), budgets);
  if (report.verdict != GrowthVerdict::degenerate) {
    // Non-degenerate integer sets satisfy m_n >= 1 for every n.
    for (std::size_t n = 0;
         n <= report.mn.reliable_upto && n < report.mn.values.size(); ++n) {
      if (report.mn.values[n] < 1) {
        throw InvariantViolation(
            "growth_degree: m_n < 1 for a non-degenerate integer set at n=" +
            std::to_string(n));
      }
    }
  }
  return report;
}

/// Exact check of the power identity used to trade X^{na} against
/// (X^{2a} - X^a)^2 telescopes: for n >= 4,
///   X^{na} - X^a = (X^{2a} - X^a)^2 (sum_{i=0}^{n-4} (n-3-i) X^{ai})
///                  + n (X^{3a} - X^{2a}) - (X^{2a} - X^a)(2 X^a - I).
inline bool verify_telescoping(const Matrix& x, const Integer& a,
                               std::size_t n) {
  if (!x.square()) {
    throw DimensionError("verify_telescoping: non-square matrix (" +
                         x.shape() + ")");
  }
  if (a <= 0) throw std::invalid_argument("verify_telescoping: a must be >= 1");
  if (n < 4) throw std::invalid_argument("verify_telescoping: n must be >= 4");
  const Matrix id = Matrix::identity(x.rows());
  const Matrix p = mat_pow(x, a);
  const Matrix p2 = p * p;
  const Matrix p3 = p2 * p;
  Matrix sum = Matrix::zero(x.rows(), x.rows());
  Matrix pi = id;  // X^{ai}
  for (std::size_t i = 0; i + 4 <= n; ++i) {
    sum += pi * Rational(static_cast<long>(n - 3 - i));
    pi = pi * p;
  }
  const Matrix lhs = mat_pow(p, Integer(static_cast<unsigned long>(n))) - p;
  const Matrix diff = p2 - p;
  const Matrix rhs = diff * diff * sum +
                     (p3 - p2) * Rational(static_cast<long>(n)) -
                     diff * (p * Rational(2) - id);
  return lhs == rhs;
}

/// Checks that g(n) = w^T (prod_i X_i^n Z_i) v is a polynomial along every
/// residue class of the step s: samples g(s n + l) for n = d .. d + D + 2
/// (D = d * #factors bounds the degree) and requires the (D+1)-th finite
/// differences to vanish. Every X_i must be tame.
inline bool poly_progression_check(
    const std::vector<std::pair<Matrix, Matrix>>& factors, const Vector& v,
    const Vector& w, const Integer& s, unsigned degree_bound) {
  if (s <= 0) {
    throw std::invalid_argument("poly_progression_check: step must be >= 1");
  }
  for (const auto& [x, z] : factors) {
    TamenessVerdict verdict = is_tame_matrix(x, degree_bound);
    if (!verdict.tame) {
      throw NotTameError("poly_progression_check: factor is not tame",
                         std::move(verdict));
    }
    if (!z.square() || z.rows() != x.rows()) {
      throw DimensionError("poly_progression_check: factor shape mismatch");
    }
  }
  const std::size_t k = factors.size();
  const std::size_t big_d = static_cast<std::size_t>(degree_bound) * k;
  const std::size_t start = degree_bound;
  const std::size_t samples = big_d + 3;
  const auto eval_g = [&](const Integer& exponent) {
    Vector row = w;
    for (const auto& [x, z] : factors) {
      row = row * mat_pow(x, exponent);
      row = row * z;
    }
    return dot(row, v);
  };
  for (Integer ell = 0; ell < s; ++ell) {
    std::vector<Rational> values;
    values.reserve(samples);
    for (std::size_t i = 0; i < samples; ++i) {
      const Integer exponent =
          s * Integer(static_cast<unsigned long>(start + i)) + ell;
      values.push_back(eval_g(exponent));
    }
    for (std::size_t round = 0; round <= big_d; ++round) {
      for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        values[i] = values[i + 1] - values[i];
      }
      values.pop_back();
    }
    for (const auto& r : values) {
      if (r != 0) return false;
    }
  }
  return true;
}

}  // namespace growthdeg

#endif  // GROWTHDEG_GROWTH_HPP
