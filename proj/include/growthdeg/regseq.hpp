#ifndef GROWTHDEG_REGSEQ_HPP
#define GROWTHDEG_REGSEQ_HPP

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "growthdeg/growth.hpp"
#include "growthdeg/matrix.hpp"
#include "growthdeg/subspace.hpp"

namespace growthdeg {

/// Linear representation of a sequence on words over {1, .., m}:
///   f(i_1 .. i_s) = w^T A_{i_1} ... A_{i_s} v.
/// The leftmost symbol is applied first (outermost factor).
struct LinRep {
  std::size_t alphabet = 0;
  std::size_t dim = 0;
  Vector w;                      // row vector, length dim
  std::vector<Matrix> matrices;  // one per symbol, dim x dim
  Vector v;                      // column vector, length dim

  LinRep() = default;

  LinRep(std::size_t alphabet_size, Vector left, std::vector<Matrix> mats,
         Vector right)
      : alphabet(alphabet_size),
        w(std::move(left)),
        matrices(std::move(mats)),
        v(std::move(right)) {
    if (alphabet == 0) throw std::invalid_argument("LinRep: empty alphabet");
    if (matrices.size() != alphabet) {
      throw std::invalid_argument("LinRep: expected " +
                                  std::to_string(alphabet) + " matrices, got " +
                                  std::to_string(matrices.size()));
    }
    dim = w.size();
    if (dim == 0) throw std::invalid_argument("LinRep: zero dimension");
    if (v.size() != dim) {
      throw DimensionError("LinRep: vector lengths disagree (" +
                           std::to_string(w.size()) + " vs " +
                           std::to_string(v.size()) + ")");
    }
    for (const auto& m : matrices) {
      if (!m.square() || m.rows() != dim) {
        throw DimensionError("LinRep: matrix shape " + m.shape() +
                             " vs dimension " + std::to_string(dim));
      }
    }
  }
};

inline void check_symbols(const LinRep& rep, const Word& word) {
  for (int sym : word) {
    if (sym < 1 || static_cast<std::size_t>(sym) > rep.alphabet) {
      throw std::invalid_argument("word symbol " + std::to_string(sym) +
                                  " out of range 1.." +
                                  std::to_string(rep.alphabet));
    }
  }
}

inline Rational eval(const LinRep& rep, const Word& word) {
  check_symbols(rep, word);
  Vector row = rep.w;
  for (int sym : word) {
    row = row * rep.matrices[static_cast<std::size_t>(sym - 1)];
  }
  return dot(row, rep.v);
}

/// Representation of f + lambda g as a block-diagonal sum.
inline LinRep add(const LinRep& f, const LinRep& g, const Rational& lambda) {
  if (f.alphabet != g.alphabet) {
    throw std::invalid_argument("add: alphabet mismatch (" +
                                std::to_string(f.alphabet) + " vs " +
                                std::to_string(g.alphabet) + ")");
  }
  const std::size_t d = f.dim + g.dim;
  Vector w(d), v(d);
  for (std::size_t i = 0; i < f.dim; ++i) {
    w[i] = f.w[i];
    v[i] = f.v[i];
  }
  for (std::size_t i = 0; i < g.dim; ++i) {
    w[f.dim + i] = g.w[i];
    v[f.dim + i] = lambda * g.v[i];
  }
  std::vector<Matrix> mats;
  mats.reserve(f.alphabet);
  for (std::size_t s = 0; s < f.alphabet; ++s) {
    Matrix m(d, d);
    for (std::size_t i = 0; i < f.dim; ++i) {
      for (std::size_t j = 0; j < f.dim; ++j) m(i, j) = f.matrices[s](i, j);
    }
    for (std::size_t i = 0; i < g.dim; ++i) {
      for (std::size_t j = 0; j < g.dim; ++j) {
        m(f.dim + i, f.dim + j) = g.matrices[s](i, j);
      }
    }
    mats.push_back(std::move(m));
  }
  return LinRep(f.alphabet, std::move(w), std::move(mats), std::move(v));
}

/// Convolution product (f * g)(i_1..i_s) = sum_j f(i_1..i_j) g(i_{j+1}..i_s)
/// as a single (d1+d2)-dimensional representation: per symbol
///   [[A_i, v1 w2^T B_i], [0, B_i]],
/// with row [w1^T, 0] and column [v1 g(eps); v2]. The top-right block
/// accumulates exactly one term per split point.
inline LinRep convolve(const LinRep& f, const LinRep& g) {
  if (f.alphabet != g.alphabet) {
    throw std::invalid_argument("convolve: alphabet mismatch (" +
                                std::to_string(f.alphabet) + " vs " +
                                std::to_string(g.alphabet) + ")");
  }
  const std::size_t d = f.dim + g.dim;
  const Rational g_eps = dot(g.w, g.v);
  Vector w(d), v(d);
  for (std::size_t i = 0; i < f.dim; ++i) {
    w[i] = f.w[i];
    v[i] = f.v[i] * g_eps;
  }
  for (std::size_t i = 0; i < g.dim; ++i) v[f.dim + i] = g.v[i];
  std::vector<Matrix> mats;
  mats.reserve(f.alphabet);
  for (std::size_t s = 0; s < f.alphabet; ++s) {
    const Matrix top_right = outer(f.v, g.w) * g.matrices[s];
    Matrix m(d, d);
    for (std::size_t i = 0; i < f.dim; ++i) {
      for (std::size_t j = 0; j < f.dim; ++j) m(i, j) = f.matrices[s](i, j);
      for (std::size_t j = 0; j < g.dim; ++j) {
        m(i, f.dim + j) = top_right(i, j);
      }
    }
    for (std::size_t i = 0; i < g.dim; ++i) {
      for (std::size_t j = 0; j < g.dim; ++j) {
        m(f.dim + i, f.dim + j) = g.matrices[s](i, j);
      }
    }
    mats.push_back(std::move(m));
  }
  return LinRep(f.alphabet, std::move(w), std::move(mats), std::move(v));
}

/// Direct evaluation of the convolution sum from callable evaluators;
/// test oracle for convolve.
inline Rational conv_oracle(const std::function<Rational(const Word&)>& f,
                            const std::function<Rational(const Word&)>& g,
                            const Word& word) {
  Rational total = 0;
  for (std::size_t j = 0; j <= word.size(); ++j) {
    const Word prefix(word.begin(), word.begin() + static_cast<std::ptrdiff_t>(j));
    const Word suffix(word.begin() + static_cast<std::ptrdiff_t>(j), word.end());
    total += f(prefix) * g(suffix);
  }
  return total;
}

namespace detail {

/// Scalar c > 0 such that c * vec is a primitive integer vector.
inline Rational primitive_scale(const Vector& vec) {
  Integer lcm_den = 1;
  for (const auto& e : vec) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(),
            mpq_denref(e.get_mpq_t()));
  }
  Integer gcd_num = 0;
  for (const auto& e : vec) {
    const Integer scaled_num = Integer(e.get_num()) *
                               (lcm_den / Integer(e.get_den()));
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), scaled_num.get_mpz_t());
  }
  if (gcd_num == 0) return Rational(1);
  return make_rational(lcm_den, gcd_num);
}

/// Restricts the representation to an invariant subspace, conjugated by
/// the diagonal scaling that clears denominators from the basis vectors.
struct RestrictedRep {
  std::vector<Matrix> matrices;
  Vector w;  // row coordinates
  Vector v;  // column coordinates
};

inline RestrictedRep restrict_rep(const std::vector<Matrix>& mats,
                                  const Vector& w_row, const Vector& v_col,
                                  const Subspace& space) {
  const std::size_t r = space.dim();
  std::vector<Rational> scale(r);
  for (std::size_t j = 0; j < r; ++j) {
    scale[j] = primitive_scale(space.basis()[j]);
  }
  RestrictedRep out;
  out.matrices.reserve(mats.size());
  for (const auto& a : mats) {
    Matrix m = restrict_to(a, space);
    // Conjugate by diag(scale): entry (k, j) scales by scale[j] / scale[k].
    for (std::size_t k = 0; k < r; ++k) {
      for (std::size_t j = 0; j < r; ++j) {
        if (m(k, j) != 0) m(k, j) = m(k, j) * scale[j] / scale[k];
      }
    }
    out.matrices.push_back(std::move(m));
  }
  const auto coords = space.coordinates(v_col);
  if (!coords) {
    throw InvariantViolation("restrict_rep: vector outside invariant space");
  }
  out.v.resize(r);
  out.w.resize(r);
  for (std::size_t j = 0; j < r; ++j) {
    out.v[j] = (*coords)[j] / scale[j];
    out.w[j] = dot(w_row, space.basis()[j]) * scale[j];
  }
  return out;
}

inline LinRep zero_rep(std::size_t alphabet) {
  return LinRep(alphabet, Vector{0},
                std::vector<Matrix>(alphabet, Matrix::zero(1, 1)), Vector{0});
}

}  // namespace detail

/// Equivalent representation of minimal dimension over the rationals:
/// restrict to the forward space span{A_w v}, then to the backward space
/// span{w^T A_w} of the restriction. Basis vectors are rescaled to
/// primitive integer form, so integer inputs usually stay integer.
/// Evaluation is preserved exactly on every word.
inline LinRep minimize(const LinRep& rep) {
  const Subspace forward = span_closure({rep.v}, rep.matrices);
  if (forward.dim() == 0) return detail::zero_rep(rep.alphabet);
  detail::RestrictedRep fwd =
      detail::restrict_rep(rep.matrices, rep.w, rep.v, forward);

  std::vector<Matrix> transposed;
  transposed.reserve(fwd.matrices.size());
  for (const auto& m : fwd.matrices) transposed.push_back(m.transpose());
  const Subspace backward = span_closure({fwd.w}, transposed);
  if (backward.dim() == 0) return detail::zero_rep(rep.alphabet);
  detail::RestrictedRep bwd =
      detail::restrict_rep(transposed, fwd.v, fwd.w, backward);

  // Transpose back: the row/column roles swap once more.
  std::vector<Matrix> mats;
  mats.reserve(bwd.matrices.size());
  for (const auto& m : bwd.matrices) mats.push_back(m.transpose());
  return LinRep(rep.alphabet, std::move(bwd.v), std::move(mats),
                std::move(bwd.w));
}

/// Deterministic finite automaton with output on each state.
struct Dfao {
  std::size_t states = 0;
  std::size_t initial = 0;
  std::vector<std::vector<std::size_t>> transitions;  // [symbol-1][state]
  std::vector<Rational> output;                       // per state

  void validate() const {
    if (states == 0) throw std::invalid_argument("Dfao: no states");
    if (initial >= states) {
      throw std::invalid_argument("Dfao: initial state out of range");
    }
    if (transitions.empty()) {
      throw std::invalid_argument("Dfao: empty alphabet");
    }
    for (const auto& row : transitions) {
      if (row.size() != states) {
        throw std::invalid_argument("Dfao: transition row size mismatch");
      }
      for (std::size_t target : row) {
        if (target >= states) {
          throw std::invalid_argument("Dfao: transition target out of range");
        }
      }
    }
    if (output.size() != states) {
      throw std::invalid_argument("Dfao: output size mismatch");
    }
  }
};

/// State-indicator representation: 0/1 transition matrices, initial-state
/// indicator row, output column. eval equals output(delta*(initial, word)).
inline LinRep from_dfao(const Dfao& a) {
  a.validate();
  const std::size_t m = a.transitions.size();
  std::vector<Matrix> mats;
  mats.reserve(m);
  for (std::size_t s = 0; s < m; ++s) {
    Matrix t(a.states, a.states);
    for (std::size_t q = 0; q < a.states; ++q) t(q, a.transitions[s][q]) = 1;
    mats.push_back(std::move(t));
  }
  Vector w(a.states);
  w[a.initial] = 1;
  return LinRep(m, std::move(w), std::move(mats), a.output);
}

/// max |f(w)| over each word length 0..max_len, by a depth-first scan of
/// the prefix tree carrying w^T A_prefix.
inline std::vector<Rational> max_abs_per_length(const LinRep& rep,
                                                std::size_t max_len) {
  std::vector<Rational> best(max_len + 1, Rational(0));
  const std::function<void(const Vector&, std::size_t)> walk =
      [&](const Vector& row, std::size_t depth) {
        Rational value = abs(dot(row, rep.v));
        if (value > best[depth]) best[depth] = std::move(value);
        if (depth == max_len) return;
        for (const auto& m : rep.matrices) walk(row * m, depth + 1);
      };
  walk(rep.w, 0);
  return best;
}

enum class SeqVerdict { degenerate, finite_degree, infinite_degree, inconclusive };

enum class ThreeValued { yes, no, inconclusive };

inline const char* seq_verdict_name(SeqVerdict v) {
  switch (v) {
    case SeqVerdict::degenerate: return "degenerate";
    case SeqVerdict::finite_degree: return "finite_degree";
    case SeqVerdict::infinite_degree: return "infinite";
    case SeqVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

inline const char* three_valued_name(ThreeValued t) {
  switch (t) {
    case ThreeValued::yes: return "yes";
    case ThreeValued::no: return "no";
    case ThreeValued::inconclusive: return "inconclusive";
  }
  return "?";
}

struct SeqGrowthReport {
  SeqVerdict verdict = SeqVerdict::inconclusive;
  int grdeg = -1;  // finite_degree only
  ThreeValued in_r0 = ThreeValued::inconclusive;
  std::size_t minimized_dim = 0;
  std::optional<GrowthReport> matrix_report;
  std::vector<Rational> max_abs;  // max |f| per word length
  std::optional<double> empirical_slope;
};

namespace detail {

inline std::size_t resolve_seq_len(const Budgets& budgets,
                                   std::size_t alphabet) {
  if (budgets.seq_max_len) return budgets.seq_max_len;
  // Keep the brute-force scan near 2^16 words.
  std::size_t len = 1;
  double words = static_cast<double>(alphabet);
  while (len < 16 && words * static_cast<double>(alphabet) <= 65536.0) {
    words *= static_cast<double>(alphabet);
    ++len;
  }
  return len;
}

inline std::optional<double> fit_slope_values(const std::vector<Rational>& vals,
                                              std::size_t lo, std::size_t hi) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t n = std::max<std::size_t>(lo, 1); n <= hi && n < vals.size();
       ++n) {
    if (vals[n] <= 0) continue;
    pts.emplace_back(std::log(static_cast<double>(n)), log_rational(vals[n]));
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

/// Growth degree of the sequence: minimize, classify the minimized matrix
/// family, and map the verdict. Finite degree certifies membership in the
/// convolution algebra generated by automatic sequences; a non-tame
/// product certifies unbounded (exponential) growth for integer-valued
/// sequences. The brute-force |f| scan over words is the primary
/// empirical evidence here, so the matrix-side m_n table is capped at
/// length 16 (convolution families have fat frontiers).
inline SeqGrowthReport growth_degree_seq(const LinRep& rep,
                                         const Budgets& budgets = {}) {
  SeqGrowthReport out;
  const LinRep reduced = minimize(rep);
  const bool vanished = is_zero(reduced.w) && is_zero(reduced.v);
  out.minimized_dim = vanished ? 0 : reduced.dim;

  const std::size_t max_len = detail::resolve_seq_len(budgets, rep.alphabet);
  out.max_abs = max_abs_per_length(reduced, max_len);
  out.empirical_slope = detail::fit_slope_values(
      out.max_abs, std::max<std::size_t>(1, max_len / 2), max_len);

  if (vanished || detect_degenerate(reduced.matrices)) {
    // f(w) = 0 for all sufficiently long w. Such a sequence takes finitely
    // many values, hence is automatic and belongs to the algebra.
    out.verdict = SeqVerdict::degenerate;
    out.in_r0 = ThreeValued::yes;
    return out;
  }

  Budgets inner = budgets;
  inner.max_n = std::min<std::size_t>(inner.max_n, 16);
  GrowthReport report = classify_growth(reduced.matrices, inner);
  switch (report.verdict) {
    case GrowthVerdict::polynomial:
      out.verdict = SeqVerdict::finite_degree;
      out.grdeg = report.degree;
      out.in_r0 = ThreeValued::yes;
      break;
    case GrowthVerdict::exponential:
      out.verdict = SeqVerdict::infinite_degree;
      out.in_r0 = ThreeValued::no;
      break;
    case GrowthVerdict::degenerate:
      out.verdict = SeqVerdict::degenerate;
      out.in_r0 = ThreeValued::yes;
      break;
    case GrowthVerdict::inconclusive:
      out.verdict = SeqVerdict::inconclusive;
      out.in_r0 = ThreeValued::inconclusive;
      break;
  }
  out.matrix_report = std::move(report);
  return out;
}

}  // namespace growthdeg

#endif  // GROWTHDEG_REGSEQ_HPP
