#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmaps/errors.hpp"
#include "pmaps/matrix.hpp"
#include "pmaps/multi_poly.hpp"
#include "pmaps/poly_map.hpp"

namespace pmaps {

// Supported size of the symbolic determinant and nilpotency routines.
struct DeskScale {
  static constexpr std::size_t max_dimension = 6;
  static constexpr unsigned max_entry_degree = 3;
};

inline void require_desk_scale(const PolyMatrix& j) {
  if (j.rows() > DeskScale::max_dimension || j.cols() > DeskScale::max_dimension) {
    throw ResourceError("symbolic routines support dimension <= " + std::to_string(DeskScale::max_dimension));
  }
  for (const auto& e : j.data()) {
    if (e.degree().value_or(0) > DeskScale::max_entry_degree) {
      throw ResourceError("symbolic routines support Jacobian entries of degree <= " +
                          std::to_string(DeskScale::max_entry_degree));
    }
  }
}

inline void require_square(const PolyMap& f) {
  if (!f.is_square()) throw PreconditionError("square map required (n = m)");
}

// Fresh symbols standing for "all alpha_1..alpha_m in C^n": block i is the
// tuple A<i>_1..A<i>_n, followed by optional weights b1..bs and extra names.
class SymbolicPointSet {
 public:
  SymbolicPointSet(std::size_t n, std::size_t blocks, std::size_t weights = 0, std::vector<std::string> extra = {})
      : n_(n), blocks_(blocks), weights_(weights), extra_(extra.size()) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= blocks; ++i) {
      for (std::size_t k = 1; k <= n; ++k) names.push_back("A" + std::to_string(i) + "_" + std::to_string(k));
    }
    for (std::size_t i = 1; i <= weights; ++i) names.push_back("b" + std::to_string(i));
    for (auto& e : extra) names.push_back(std::move(e));
    ctx_ = make_context(std::move(names));
    for (std::size_t i = 0; i < blocks; ++i) {
      std::vector<MultiPoly> pt;
      for (std::size_t k = 0; k < n; ++k) pt.push_back(MultiPoly::variable(ctx_, i * n + k));
      points_.push_back(std::move(pt));
    }
  }

  const ContextPtr& context() const noexcept { return ctx_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t blocks() const noexcept { return blocks_; }
  std::size_t weights() const noexcept { return weights_; }

  const std::vector<MultiPoly>& point(std::size_t block) const { return points_.at(block); }

  MultiPoly weight(std::size_t i) const {
    if (i >= weights_) throw PreconditionError("weight index out of range");
    return MultiPoly::variable(ctx_, blocks_ * n_ + i);
  }

  MultiPoly extra(std::size_t i) const {
    if (i >= extra_) throw PreconditionError("extra symbol index out of range");
    return MultiPoly::variable(ctx_, blocks_ * n_ + weights_ + i);
  }

  MultiPoly weight_sum() const {
    MultiPoly s(ctx_);
    for (std::size_t i = 0; i < weights_; ++i) s += weight(i);
    return s;
  }

 private:
  std::size_t n_;
  std::size_t blocks_;
  std::size_t weights_;
  std::size_t extra_;
  ContextPtr ctx_;
  std::vector<std::vector<MultiPoly>> points_;
};

inline PolyMatrix evaluate_at_block(const PolyMatrix& j, const SymbolicPointSet& pts, std::size_t block) {
  if (j.cols() != pts.n()) throw PreconditionError("matrix columns must match the block length");
  return substitute_matrix(j, pts.point(block));
}

// sum_i J|_{X=A<i>} or, weighted, sum_i b_i * J|_{X=A<i>}.
inline PolyMatrix symbolic_sum(const PolyMatrix& j, const SymbolicPointSet& pts, bool weighted = false) {
  if (j.cols() != pts.n()) throw PreconditionError("matrix columns must match the block length");
  if (weighted && pts.weights() < pts.blocks()) throw PreconditionError("weighted sum needs one weight per block");
  PolyMatrix total(j.rows(), j.cols(), MultiPoly(pts.context()));
  for (std::size_t i = 0; i < pts.blocks(); ++i) {
    PolyMatrix term = evaluate_at_block(j, pts, i);
    if (weighted) {
      const MultiPoly b = pts.weight(i);
      for (std::size_t r = 0; r < term.rows(); ++r) {
        for (std::size_t c = 0; c < term.cols(); ++c) term(r, c) = term(r, c) * b;
      }
    }
    total += term;
  }
  return total;
}

// M^k == 0 for some k <= M.rows(); over an integral domain this is nilpotency.
inline bool is_nilpotent(const PolyMatrix& m) {
  if (!m.is_square()) throw PreconditionError("nilpotency of a non-square matrix");
  PolyMatrix power = m;
  for (std::size_t k = 1; k < m.rows(); ++k) {
    if (power.is_zero()) return true;
    power = power * m;
  }
  return power.is_zero();
}

// J H|_{A1} * ... * J H|_{An} == 0 identically.
inline bool is_strongly_nilpotent(const PolyMap& h) {
  require_square(h);
  const PolyMatrix j = jacobian(h);
  require_desk_scale(j);
  const SymbolicPointSet pts(h.n(), h.n());
  PolyMatrix product = evaluate_at_block(j, pts, 0);
  for (std::size_t i = 1; i < h.n() && !product.is_zero(); ++i) product = product * evaluate_at_block(j, pts, i);
  return product.is_zero();
}

// (sum_{i=1..n} J H|_{Ai})^n == 0 identically. A single block count m = n
// covers every m: all principal-minor sums of the n-block sum vanish, and
// their propagation to arbitrary weighted sums makes every finite sum nilpotent.
inline bool is_additive_nilpotent(const PolyMap& h) {
  require_square(h);
  const PolyMatrix j = jacobian(h);
  require_desk_scale(j);
  const SymbolicPointSet pts(h.n(), h.n());
  return is_nilpotent(symbolic_sum(j, pts));
}

struct SumInvertibilityVerdict {
  bool holds = false;
  std::size_t m = 0;
  std::optional<Scalar> mu;  // the constant determinant when it holds
  MultiPoly determinant;     // symbolic det(sum_i JF|_{Ai})
};

inline SumInvertibilityVerdict invertible_sum_check(const PolyMap& f, std::size_t m) {
  require_square(f);
  if (m == 0) throw PreconditionError("block count must be positive");
  const PolyMatrix j = jacobian(f);
  require_desk_scale(j);
  const SymbolicPointSet pts(f.n(), m);
  SumInvertibilityVerdict v;
  v.m = m;
  v.determinant = determinant(symbolic_sum(j, pts));
  if (v.determinant.is_constant() && !v.determinant.is_zero()) {
    v.holds = true;
    v.mu = v.determinant.constant_term();
  }
  return v;
}

inline SumInvertibilityVerdict invertible_sum_check(const PolyMap& f) { return invertible_sum_check(f, f.n()); }

struct KellerVerdict {
  bool holds = false;
  MultiPoly determinant;
  std::optional<Scalar> constant;
};

inline KellerVerdict keller_check(const PolyMap& f) {
  require_square(f);
  const PolyMatrix j = jacobian(f);
  require_desk_scale(j);
  KellerVerdict v;
  v.determinant = determinant(j);
  if (v.determinant.is_constant() && !v.determinant.is_zero()) {
    v.holds = true;
    v.constant = v.determinant.constant_term();
  }
  return v;
}

}  // namespace pmaps
