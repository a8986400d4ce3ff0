#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmaps/decomposition.hpp"
#include "pmaps/errors.hpp"
#include "pmaps/matrix.hpp"
#include "pmaps/multi_poly.hpp"
#include "pmaps/poly_map.hpp"

// The standard example maps, built programmatically. The fixtures/ directory
// holds the same maps in .pmap form.
namespace pmaps::fixtures {

inline ContextPtr xs(std::size_t n) { return numbered_context("X", n); }

// F = (X2, X1 + X2^2); its textbook nilpotent form is H = (X2^2, 0) after the
// swap L, while the naive F - X has a non-nilpotent Jacobian.
inline PolyMap remark_2d() {
  const auto ctx = xs(2);
  const auto x = variables_of(ctx);
  return PolyMap(ctx, {x[1], x[0] + x[1] * x[1]});
}

inline PolyMap remark_2d_naive_h() {
  const auto ctx = xs(2);
  const auto x = variables_of(ctx);
  return PolyMap(ctx, {-x[0] + x[1], x[0] - x[1] + x[1] * x[1]});
}

// (X1 + (X2 + X1^2)^2, X2 + X1^2): lines parallel to the X2 axis rectify, others do not.
inline PolyMap quartic() {
  const auto ctx = xs(2);
  const auto x = variables_of(ctx);
  const MultiPoly u = x[1] + x[0] * x[0];
  return PolyMap(ctx, {x[0] + u * u, u});
}

inline PolyMap cubic_3d() {
  const auto ctx = xs(3);
  const auto x = variables_of(ctx);
  const MultiPoly sq = x[0] * x[0];
  const MultiPoly u = x[1] + sq;
  const MultiPoly w = x[2] + sq;
  return PolyMap(ctx, {x[0] + u * u - w * w, u, w});
}

inline PolyMap conjugated_family_member(const PolyMap& h0, const std::optional<ScalarMatrix>& l) {
  const ContextPtr& ctx = h0.context();
  if (!l) return PolyMap::identity(ctx) + h0;
  const ScalarMatrix linv = invert_linear_part(*l);
  // H = L^-1 o H0 o L
  const PolyMap h = apply_matrix(linv, h0.compose(PolyMap::linear(ctx, *l)));
  return PolyMap::identity(ctx) + h;
}

inline void require_in_x1_x2(const MultiPoly& p, const ContextPtr& ctx, const char* name) {
  if (!same_context(p.context(), ctx)) throw ContextMismatch(std::string(name) + " must live over X1..X5");
  for (const auto& [m, c] : p.terms()) {
    for (std::size_t i = 2; i < m.exps.size(); ++i) {
      if (m.exps[i] != 0) throw PreconditionError(std::string(name) + " may only involve X1 and X2");
    }
  }
}

// X + L^-1 o ((0, lambda X1^2, X2 X4 + p, X1 X3 - X2 X5 + q, X1 X4 + r)) o L,
// with p, q, r in X1, X2 over the five-variable context xs(5).
inline PolyMap dim5_first_family(const Scalar& lambda, std::optional<MultiPoly> p = std::nullopt,
                                 std::optional<MultiPoly> q = std::nullopt, std::optional<MultiPoly> r = std::nullopt,
                                 const std::optional<ScalarMatrix>& l = std::nullopt) {
  ContextPtr ctx = p ? p->context() : (q ? q->context() : (r ? r->context() : xs(5)));
  if (ctx->size() != 5) throw PreconditionError("the dimension-5 families need five variables");
  const auto x = variables_of(ctx);
  const MultiPoly zero(ctx);
  const MultiPoly pp = p.value_or(zero);
  const MultiPoly qq = q.value_or(zero);
  const MultiPoly rr = r.value_or(zero);
  require_in_x1_x2(pp, ctx, "p");
  require_in_x1_x2(qq, ctx, "q");
  require_in_x1_x2(rr, ctx, "r");
  const PolyMap h0(ctx, {zero, x[0] * x[0] * lambda, x[1] * x[3] + pp, x[0] * x[2] - x[1] * x[4] + qq, x[0] * x[3] + rr});
  return conjugated_family_member(h0, l);
}

// X + L^-1 o ((0, X1 X3, X2^2 - X1 X4, 2 X2 X3 - X1 X5, X3^2) + X1^2 (0, l2, l3, l4, l5)) o L.
inline PolyMap dim5_second_family(const std::vector<Scalar>& lambdas = {Scalar(0), Scalar(0), Scalar(0), Scalar(0)},
                                  const std::optional<ScalarMatrix>& l = std::nullopt) {
  if (lambdas.size() != 4) throw PreconditionError("second family takes four parameters lambda2..lambda5");
  const auto ctx = xs(5);
  const auto x = variables_of(ctx);
  const MultiPoly sq = x[0] * x[0];
  const PolyMap h0(ctx, {MultiPoly(ctx), x[0] * x[2] + sq * lambdas[0], x[1] * x[1] - x[0] * x[3] + sq * lambdas[1],
                         x[1] * x[2] * Scalar(2) - x[0] * x[4] + sq * lambdas[2], x[2] * x[2] + sq * lambdas[3]});
  return conjugated_family_member(h0, l);
}

struct NamedFixture {
  std::string name;
  PolyMap map;
};

inline std::vector<NamedFixture> corpus() {
  return {
      {"remark_2d", remark_2d()},
      {"quartic", quartic()},
      {"cubic_3d", cubic_3d()},
      {"dim5_first", dim5_first_family(Scalar(1))},
      {"dim5_second", dim5_second_family({Scalar(1), Scalar(0), Scalar(-1), Scalar(0)})},
  };
}

}  // namespace pmaps::fixtures
