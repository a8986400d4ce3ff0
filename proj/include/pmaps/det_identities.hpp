#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmaps/errors.hpp"
#include "pmaps/matrix.hpp"
#include "pmaps/multi_poly.hpp"
#include "pmaps/poly_map.hpp"
#include "pmaps/symbolic.hpp"

namespace pmaps {

// Calls visit(a) for every a in N^n with sum(a) <= bound (or == bound).
inline void for_each_lattice_point(std::size_t n, unsigned bound, bool exact_sum,
                                   const std::function<bool(const std::vector<unsigned>&)>& visit) {
  std::vector<unsigned> a(n, 0);
  std::function<bool(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned remaining) -> bool {
    if (i + 1 == n) {
      for (unsigned v = exact_sum ? remaining : 0; v <= remaining; ++v) {
        a[i] = v;
        if (!visit(a)) return false;
      }
      return true;
    }
    for (unsigned v = 0; v <= remaining; ++v) {
      a[i] = v;
      if (!rec(i + 1, remaining - v)) return false;
    }
    return true;
  };
  if (n == 0) {
    visit(a);
    return;
  }
  rec(0, bound);
}

inline Vector to_scalars(const std::vector<unsigned>& a) {
  Vector v;
  for (unsigned x : a) v.emplace_back(static_cast<long>(x));
  return v;
}

inline void require_degree_at_most(const MultiPoly& f, unsigned d) {
  if (f.degree().value_or(0) > d) throw PreconditionError("polynomial degree exceeds the bound");
}

// Whether f vanishes on {a in N^n : sum(a) <= d}; for deg f <= d that happens
// only for f = 0.
inline bool simplex_zero_test(const MultiPoly& f, unsigned d) {
  require_degree_at_most(f, d);
  bool all_vanish = true;
  for_each_lattice_point(f.nvars(), d, false, [&](const std::vector<unsigned>& a) {
    all_vanish = f.evaluate(to_scalars(a)).is_zero();
    return all_vanish;
  });
  if (all_vanish != f.is_zero()) throw InternalError("nonzero polynomial vanishes on the whole simplex");
  return all_vanish;
}

struct HyperplaneDivision {
  bool divides = false;
  std::optional<MultiPoly> quotient;  // f = (X1 + ... + Xn - d) * quotient
  std::vector<unsigned> witness;      // lattice point on the slice with f != 0
  Scalar witness_value;
};

// If f vanishes on {a in N^n : sum(a) = d}, divides f by X1 + ... + Xn - d via
// the substitution Xn -> Y - X1 - ... - X_{n-1} + d and back.
inline HyperplaneDivision hyperplane_divisibility(const MultiPoly& f, unsigned d) {
  require_degree_at_most(f, d);
  const std::size_t n = f.nvars();
  if (n == 0) throw PreconditionError("hyperplane divisibility needs at least one variable");
  HyperplaneDivision out;
  bool vanishes = true;
  for_each_lattice_point(n, d, true, [&](const std::vector<unsigned>& a) {
    const Scalar v = f.evaluate(to_scalars(a));
    if (v.is_zero()) return true;
    vanishes = false;
    out.witness = a;
    out.witness_value = v;
    return false;
  });
  if (!vanishes) return out;

  const ContextPtr& ctx = f.context();
  const std::vector<MultiPoly> vars = variables_of(ctx);
  MultiPoly others(ctx);  // X1 + ... + X_{n-1}
  for (std::size_t i = 0; i + 1 < n; ++i) others += vars[i];
  const MultiPoly shift_d(ctx, Scalar(static_cast<long>(d)));

  std::vector<MultiPoly> forward = vars;
  forward[n - 1] = vars[n - 1] - others + shift_d;
  const MultiPoly shifted = f.substitute(forward);

  MultiPoly quotient_in_y(ctx);
  for (const auto& [m, c] : shifted.terms()) {
    if (m.exps[n - 1] == 0) throw InternalError("nonzero remainder after the hyperplane substitution");
    Monomial lowered = m;
    lowered.exps[n - 1] -= 1;
    lowered.degree -= 1;
    quotient_in_y.add_term(lowered, c);
  }
  const MultiPoly hyperplane = others + vars[n - 1] - shift_d;
  std::vector<MultiPoly> back = vars;
  back[n - 1] = hyperplane;
  MultiPoly q = quotient_in_y.substitute(back);
  if (hyperplane * q != f) throw InternalError("hyperplane quotient does not recompose");
  if (f.is_homogeneous() && !f.is_zero()) throw InternalError("nonzero homogeneous polynomial vanishes on the slice");
  out.divides = true;
  out.quotient = std::move(q);
  return out;
}

struct MatrixInvariant {
  enum class Kind { determinant, principal_minor_sum, trace_power };
  Kind kind = Kind::determinant;
  unsigned k = 0;

  static MatrixInvariant determinant_kind() { return {Kind::determinant, 0}; }
  static MatrixInvariant minors(unsigned size) { return {Kind::principal_minor_sum, size}; }
  static MatrixInvariant trace_power(unsigned power) { return {Kind::trace_power, power}; }

  // "det", "minors:k", "trace:k"
  static MatrixInvariant parse(std::string_view text) {
    if (text == "det") return determinant_kind();
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw PreconditionError("unknown invariant '" + std::string(text) + "'");
    const std::string head(text.substr(0, colon));
    const std::string tail(text.substr(colon + 1));
    unsigned value = 0;
    try {
      std::size_t used = 0;
      value = static_cast<unsigned>(std::stoul(tail, &used));
      if (used != tail.size()) throw std::invalid_argument(tail);
    } catch (const std::exception&) {
      throw PreconditionError("invariant size must be a positive integer: '" + std::string(text) + "'");
    }
    if (value == 0) throw PreconditionError("invariant size must be positive");
    if (head == "minors") return minors(value);
    if (head == "trace") return trace_power(value);
    throw PreconditionError("unknown invariant '" + std::string(text) + "'");
  }

  std::string name() const {
    switch (kind) {
      case Kind::determinant:
        return "det";
      case Kind::principal_minor_sum:
        return "minors:" + std::to_string(k);
      case Kind::trace_power:
        return "trace:" + std::to_string(k);
    }
    return "det";
  }

  // Homogeneity degree on n x n matrices.
  unsigned degree(std::size_t n) const { return kind == Kind::determinant ? static_cast<unsigned>(n) : k; }

  MultiPoly evaluate(const PolyMatrix& m) const {
    switch (kind) {
      case Kind::determinant:
        return determinant(m);
      case Kind::principal_minor_sum:
        return principal_minor_sum(m, k);
      case Kind::trace_power:
        return trace(matrix_power(m, k));
    }
    return determinant(m);
  }
};

struct InvariantIdentityReport {
  MatrixInvariant invariant;
  std::size_t blocks = 0;
  unsigned invariant_degree = 0;
  MultiPoly hypothesis_value;  // P(sum_{i=1..blocks} JF|_{Ai})
  bool hypothesis_holds = false;
  std::optional<Scalar> mu;
  bool propagation_guaranteed = false;  // deg P <= blocks
  std::vector<bool> conclusion;         // entry s-1: P(sum b_i JF|_{Ai}) = ((sum b)/blocks)^deg P * mu
  bool conclusion_holds = false;
};

inline InvariantIdentityReport invariant_identity_check(const PolyMap& f, const MatrixInvariant& invariant,
                                                        std::size_t blocks, std::size_t s_max) {
  require_square(f);
  if (blocks == 0) throw PreconditionError("block count must be positive");
  if (invariant.kind == MatrixInvariant::Kind::principal_minor_sum && invariant.k > f.n()) {
    throw PreconditionError("principal minor size exceeds the dimension");
  }
  const PolyMatrix j = jacobian(f);
  require_desk_scale(j);
  InvariantIdentityReport r;
  r.invariant = invariant;
  r.blocks = blocks;
  r.invariant_degree = invariant.degree(f.n());
  r.propagation_guaranteed = r.invariant_degree <= blocks;

  const SymbolicPointSet hyp_pts(f.n(), blocks);
  r.hypothesis_value = invariant.evaluate(symbolic_sum(j, hyp_pts));
  r.hypothesis_holds = r.hypothesis_value.is_constant();
  if (!r.hypothesis_holds) return r;
  r.mu = r.hypothesis_value.constant_term();

  r.conclusion_holds = true;
  const Scalar scale = Scalar(1) / Scalar(static_cast<long>(blocks)).pow(r.invariant_degree);
  for (std::size_t s = 1; s <= s_max; ++s) {
    const SymbolicPointSet pts(f.n(), s, s);
    const MultiPoly lhs = invariant.evaluate(symbolic_sum(j, pts, true));
    const MultiPoly rhs = pts.weight_sum().pow(r.invariant_degree) * (*r.mu * scale);
    r.conclusion.push_back(lhs == rhs);
    r.conclusion_holds = r.conclusion_holds && r.conclusion.back();
  }
  return r;
}

struct QuadraticIdentityReport {
  Scalar jacobian_determinant;
  std::vector<bool> per_s;  // entry s-1: det(sum b_i JF|_{Ai}) = (sum b)^n det JF
  bool holds = false;
};

inline QuadraticIdentityReport quadratic_identity_check(const PolyMap& f, std::size_t s_max) {
  require_square(f);
  if (f.degree() > 2) throw PreconditionError("quadratic identity needs degree <= 2");
  const KellerVerdict keller = keller_check(f);
  if (!keller.holds) throw PreconditionError("Keller condition fails: det JF is not a nonzero constant");
  const PolyMatrix j = jacobian(f);
  QuadraticIdentityReport r;
  r.jacobian_determinant = *keller.constant;
  r.holds = true;
  for (std::size_t s = 1; s <= s_max; ++s) {
    const SymbolicPointSet pts(f.n(), s, s);
    const MultiPoly lhs = determinant(symbolic_sum(j, pts, true));
    const MultiPoly rhs = pts.weight_sum().pow(static_cast<unsigned>(f.n())) * r.jacobian_determinant;
    r.per_s.push_back(lhs == rhs);
    r.holds = r.holds && r.per_s.back();
  }
  return r;
}

}  // namespace pmaps
