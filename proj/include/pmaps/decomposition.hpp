#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>

#include "pmaps/errors.hpp"
#include "pmaps/matrix.hpp"
#include "pmaps/poly_map.hpp"
#include "pmaps/symbolic.hpp"

namespace pmaps {

// F = c + L o (X + H)            (left form)
// F = c + (X + H_conj) o L       (right form, H_conj = L o H o L^-1)
// with H and H_conj free of constant and linear terms.
struct Decomposition {
  ScalarMatrix L;
  ScalarMatrix L_inverse;
  Vector c;
  PolyMap H;
  PolyMap H_conj;
  bool H_additive_nilpotent = false;
  bool H_conj_additive_nilpotent = false;

  PolyMap recompose_left() const {
    const PolyMap inner = PolyMap::identity(H.context()) + H;
    return add_constant(apply_matrix(L, inner), c);
  }

  PolyMap recompose_right() const {
    const PolyMap outer = PolyMap::identity(H.context()) + H_conj;
    return add_constant(outer.compose(PolyMap::linear(H.context(), L)), c);
  }
};

inline ScalarMatrix invert_linear_part(const ScalarMatrix& l) {
  auto inv = inverse(l);
  if (!inv) throw PreconditionError("singular linear part");
  return *std::move(inv);
}

// L o H o L^-1 for a scalar matrix L.
inline PolyMap conjugate(const PolyMap& h, const ScalarMatrix& l, const ScalarMatrix& l_inverse) {
  return apply_matrix(l, h.compose(PolyMap::linear(h.context(), l_inverse)));
}

inline Decomposition decompose(const PolyMap& f, bool check_nilpotency = true) {
  require_square(f);
  const LinearPart lp = linear_part(f);
  const ScalarMatrix l_inv = invert_linear_part(lp.matrix);
  Vector neg_c = lp.constant;
  for (auto& x : neg_c) x = -x;
  PolyMap h = apply_matrix(l_inv, add_constant(f, neg_c)) - PolyMap::identity(f.context());
  if (h.has_terms_of_degree(0) || h.has_terms_of_degree(1)) {
    throw InternalError("normalized H kept terms of degree <= 1");
  }
  PolyMap h_conj = conjugate(h, lp.matrix, l_inv);
  Decomposition d{lp.matrix, l_inv, lp.constant, std::move(h), std::move(h_conj), false, false};
  if (check_nilpotency) {
    d.H_additive_nilpotent = is_additive_nilpotent(d.H);
    d.H_conj_additive_nilpotent = is_additive_nilpotent(d.H_conj);
  }
  return d;
}

struct Dpr3Result {
  bool determinant_identity = false;  // det(mu JL + sum b_i JF|_{Ai}) = (mu + sum b_i)^n det JL
  bool weighted_sum_nilpotent = false;  // sum b_i J(L^-1 o H)|_{Ai} nilpotent
};

// Both sides of the determinant / nilpotency equivalence for F = L + H with an
// invertible map L of degree one, s symbolic blocks and symbolic weights.
inline Dpr3Result dpr3_check(const PolyMap& l, const PolyMap& h, std::size_t s) {
  require_square(l);
  if (s == 0) throw PreconditionError("block count must be positive");
  if (l.degree() > 1) throw PreconditionError("L must have degree at most one");
  if (!same_context(l.context(), h.context()) || l.m() != h.m()) throw ContextMismatch("L and H have different shapes");
  const LinearPart lp = linear_part(l);
  const auto l_inv = inverse(lp.matrix);
  if (!l_inv) throw PreconditionError("singular L");

  const PolyMap f = l + h;
  const PolyMatrix jf = jacobian(f);
  require_desk_scale(jf);
  const std::size_t n = f.n();
  const SymbolicPointSet pts(n, s, s, {"mu"});
  const MultiPoly mu = pts.extra(0);

  PolyMatrix lhs_matrix = symbolic_sum(jf, pts, true);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (!lp.matrix(r, c).is_zero()) lhs_matrix(r, c) += mu * lp.matrix(r, c);
    }
  }
  const MultiPoly lhs = determinant(lhs_matrix);
  const MultiPoly rhs = (mu + pts.weight_sum()).pow(static_cast<unsigned>(n)) * determinant(lp.matrix);

  const PolyMatrix jn = jacobian(apply_matrix(*l_inv, h));
  Dpr3Result r;
  r.determinant_identity = lhs == rhs;
  r.weighted_sum_nilpotent = is_nilpotent(symbolic_sum(jn, pts, true));
  if (r.determinant_identity != r.weighted_sum_nilpotent) {
    throw InternalError("determinant identity and nilpotency disagree");
  }
  return r;
}

struct Classification {
  bool positive = false;
  SumInvertibilityVerdict sum;
  std::optional<Decomposition> decomposition;
  std::string verdict;
};

// Positive iff the sum of n evaluated Jacobians has a nonzero constant
// determinant; then F = c + L o (X + H) with J H additive-nilpotent, and F is
// an invertible polynomial map.
inline Classification classify(const PolyMap& f) {
  require_square(f);
  Classification c;
  c.sum = invertible_sum_check(f, f.n());
  if (!c.sum.holds) {
    c.verdict = "dth3-negative: det of the sum of " + std::to_string(f.n()) +
                " evaluated Jacobians is not a nonzero constant";
    return c;
  }
  c.decomposition = decompose(f);
  if (!c.decomposition->H_additive_nilpotent || !c.decomposition->H_conj_additive_nilpotent) {
    throw InternalError("invertible Jacobian sums without an additive-nilpotent H");
  }
  c.positive = true;
  c.verdict = "dth3-positive: F is an invertible polynomial map";
  return c;
}

}  // namespace pmaps
