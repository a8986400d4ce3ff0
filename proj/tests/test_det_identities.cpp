#include <gtest/gtest.h>

#include "support.hpp"

using namespace pmaps;
using namespace testing_support;

namespace {

ContextPtr x2() { return numbered_context("X", 2); }

MultiPoly random_homogeneous(Rng& rng, const ContextPtr& ctx, unsigned degree) {
  MultiPoly p(ctx);
  while (p.is_zero()) {
    for (int t = 0; t < 4; ++t) {
      Monomial m(ctx->size());
      for (unsigned k = 0; k < degree; ++k) {
        m.exps[static_cast<std::size_t>(rng.integer(0, static_cast<long>(ctx->size()) - 1))] += 1;
        m.degree += 1;
      }
      p.add_term(m, rng.rational());
    }
  }
  return p;
}

}  // namespace

TEST(SimplexZeroTest, Examples) {
  const auto c1 = make_context({"X1"});
  EXPECT_TRUE(simplex_zero_test(MultiPoly(c1), 3));
  const MultiPoly f = parse("X1^2 - X1", c1);
  EXPECT_EQ(f.evaluate(Vector{Scalar(2)}), Scalar(2));
  EXPECT_FALSE(simplex_zero_test(f, 2));
  EXPECT_THROW(simplex_zero_test(f, 1), PreconditionError);
}

TEST(SimplexZeroTest, OnlyZeroVanishes) {
  Rng rng(71);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 3));
    const auto ctx = numbered_context("X", n);
    const unsigned d = static_cast<unsigned>(rng.integer(0, 4));
    const MultiPoly f = rng.poly(ctx, d, 5, true);
    EXPECT_EQ(simplex_zero_test(f, d), f.is_zero());
  }
  // Polynomials vanishing on S but of degree d+1 exist, e.g. X(X-1)(X-2) on {0,1,2}.
  const auto c1 = make_context({"X1"});
  const MultiPoly g = parse("X1*(X1 - 1)*(X1 - 2)", c1);
  for (long a = 0; a <= 2; ++a) EXPECT_TRUE(g.evaluate(Vector{Scalar(a)}).is_zero());
  EXPECT_THROW(simplex_zero_test(g, 2), PreconditionError);
}

TEST(HyperplaneDivisibility, Examples) {
  const auto ctx = x2();
  const HyperplaneDivision a = hyperplane_divisibility(parse("X1 + X2 - 3", ctx), 3);
  ASSERT_TRUE(a.divides);
  EXPECT_EQ(*a.quotient, MultiPoly(ctx, Scalar(1)));
  const MultiPoly f = parse("(X1 + X2 - 2)*X1", ctx);
  const HyperplaneDivision b = hyperplane_divisibility(f, 2);
  ASSERT_TRUE(b.divides);
  EXPECT_EQ(*b.quotient, parse("X1", ctx));
  EXPECT_EQ(parse("X1 + X2 - 2", ctx) * *b.quotient, f);
  const HyperplaneDivision c = hyperplane_divisibility(parse("X1^2 + X2^2", ctx), 2);
  EXPECT_FALSE(c.divides);
  EXPECT_FALSE(c.witness_value.is_zero());
  EXPECT_EQ(c.witness[0] + c.witness[1], 2U);
}

TEST(HyperplaneDivisibility, QuotientsRecomposeAndHomogeneousCaseIsZero) {
  Rng rng(72);
  for (int t = 0; t < 200; ++t) {
    const auto n = static_cast<std::size_t>(rng.integer(1, 3));
    const auto ctx = numbered_context("X", n);
    const unsigned d = static_cast<unsigned>(rng.integer(1, 4));
    MultiPoly hyper(ctx, Scalar(-static_cast<long>(d)));
    for (const auto& v : variables_of(ctx)) hyper += v;
    const MultiPoly qq = rng.poly(ctx, d - 1, 4, true);
    const MultiPoly f = hyper * qq;
    const HyperplaneDivision r = hyperplane_divisibility(f, d);
    ASSERT_TRUE(r.divides);
    EXPECT_EQ(*r.quotient, qq);
    EXPECT_EQ(hyper * *r.quotient, f);

    // Nonzero homogeneous polynomials of degree d never vanish on the slice.
    const MultiPoly h = random_homogeneous(rng, ctx, d);
    const HyperplaneDivision hr = hyperplane_divisibility(h, d);
    EXPECT_FALSE(hr.divides);
    EXPECT_EQ(h.evaluate(to_scalars(hr.witness)), hr.witness_value);
  }
}

TEST(MatrixInvariant, Parse) {
  EXPECT_EQ(MatrixInvariant::parse("det").kind, MatrixInvariant::Kind::determinant);
  EXPECT_EQ(MatrixInvariant::parse("minors:2").k, 2U);
  EXPECT_EQ(MatrixInvariant::parse("trace:3").kind, MatrixInvariant::Kind::trace_power);
  EXPECT_THROW(MatrixInvariant::parse("minors:0"), PreconditionError);
  EXPECT_THROW(MatrixInvariant::parse("perm"), PreconditionError);
  EXPECT_THROW(MatrixInvariant::parse("trace:x"), PreconditionError);
  EXPECT_EQ(MatrixInvariant::minors(3).name(), "minors:3");
}

TEST(MatrixInvariant, PrincipalMinorsMatchCharacteristicPolynomial) {
  // det(T I - M) = sum_k (-1)^k E_k(M) T^(n-k), checked numerically at several T.
  Rng rng(73);
  const auto c0 = make_context({"T"});
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 3;
    ScalarMatrix a(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t c = 0; c < n; ++c) a(r, c) = rng.rational();
    }
    const PolyMatrix p = lift(a, c0);
    for (long tv = -2; tv <= 2; ++tv) {
      ScalarMatrix shifted = identity_matrix(n);
      shifted.scale(Scalar(tv));
      const Scalar lhs = det_oracle(shifted - a);
      Scalar rhs = Scalar(tv).pow(3);
      for (unsigned k = 1; k <= n; ++k) {
        const Scalar ek = principal_minor_sum(p, k).constant_term();
        const Scalar term = ek * Scalar(tv).pow(static_cast<unsigned>(n - k));
        rhs = (k % 2 == 1) ? rhs - term : rhs + term;
      }
      EXPECT_EQ(lhs, rhs);
    }
  }
}

TEST(InvariantIdentity, DeterminantOnRemarkMap) {
  const InvariantIdentityReport r =
      invariant_identity_check(fixtures::remark_2d(), MatrixInvariant::determinant_kind(), 2, 3);
  ASSERT_TRUE(r.hypothesis_holds);
  EXPECT_EQ(*r.mu, Scalar(-4));
  EXPECT_TRUE(r.conclusion_holds);
  ASSERT_EQ(r.conclusion.size(), 3U);
  // Oracle for s = 2: det(b1 JF|_A + b2 JF|_B) = -(b1 + b2)^2 by Leibniz on the symbolic sum.
  const SymbolicPointSet pts(2, 2, 2);
  const PolyMatrix m = symbolic_sum(jacobian(fixtures::remark_2d()), pts, true);
  const MultiPoly b = pts.weight_sum();
  EXPECT_EQ(det_oracle(m, pts.context()), -(b * b));
}

TEST(InvariantIdentity, LinearMapsAndTraceHypothesisFailure) {
  Rng rng(74);
  const ScalarMatrix l = rng.invertible_matrix(3);
  const PolyMap lin = PolyMap::linear(numbered_context("X", 3), l);
  for (std::size_t d = 1; d <= 3; ++d) {
    const auto r = invariant_identity_check(lin, MatrixInvariant::determinant_kind(), d, 2);
    ASSERT_TRUE(r.hypothesis_holds);
    EXPECT_EQ(*r.mu, Scalar(static_cast<long>(d)).pow(3) * det_oracle(l));
    EXPECT_TRUE(r.conclusion_holds);
  }
  const auto t = invariant_identity_check(fixtures::remark_2d(), MatrixInvariant::trace_power(1), 1, 2);
  EXPECT_FALSE(t.hypothesis_holds);
  EXPECT_EQ(t.hypothesis_value.to_string(), "2*A1_2");
}

TEST(InvariantIdentity, NilpotentPropagationForMinorsAndTraces) {
  // J H of a strictly triangular H: every minor sum and trace power of the unit sum is 0.
  const auto ctx = numbered_context("X", 3);
  const PolyMap h = map_of(ctx, {"X2^2 + X3", "X3^2", "0"});
  for (unsigned k = 1; k <= 3; ++k) {
    for (const auto& inv : {MatrixInvariant::minors(k), MatrixInvariant::trace_power(k)}) {
      const auto r = invariant_identity_check(h, inv, 3, 2);
      ASSERT_TRUE(r.hypothesis_holds);
      EXPECT_TRUE(r.mu->is_zero());
      EXPECT_TRUE(r.propagation_guaranteed);
      EXPECT_TRUE(r.conclusion_holds) << inv.name();
    }
  }
}

TEST(InvariantIdentity, UnitWeightsReproduceMu) {
  for (const auto& fx : fixtures::corpus()) {
    if (fx.map.n() > 3) continue;
    const std::size_t d = fx.map.n();
    const auto r = invariant_identity_check(fx.map, MatrixInvariant::determinant_kind(), d, d);
    if (!r.hypothesis_holds) continue;
    // P(sum of the d unit-weight blocks) = ((d/d)^deg P) mu = mu.
    const SymbolicPointSet pts(fx.map.n(), d);
    EXPECT_EQ(determinant(symbolic_sum(jacobian(fx.map), pts)), MultiPoly(pts.context(), *r.mu)) << fx.name;
    EXPECT_TRUE(r.conclusion.back());
  }
}

TEST(QuadraticIdentity, Examples) {
  const auto q2 = quadratic_identity_check(fixtures::remark_2d(), 2);
  EXPECT_TRUE(q2.holds);
  EXPECT_EQ(q2.jacobian_determinant, Scalar(-1));
  const auto ctx = x2();
  EXPECT_THROW(quadratic_identity_check(map_of(ctx, {"X1^2", "X2"}), 2), PreconditionError);
  EXPECT_THROW(quadratic_identity_check(fixtures::quartic(), 1), PreconditionError);
}

TEST(QuadraticIdentity, DimensionFiveFirstFamilySmallS) {
  const auto r = quadratic_identity_check(fixtures::dim5_first_family(Scalar(1)), 2);
  EXPECT_TRUE(r.holds);
  // Consistency with the determinant propagation at d = n.
  const auto inv = invariant_identity_check(fixtures::dim5_first_family(Scalar(1)), MatrixInvariant::determinant_kind(),
                                            5, 2);
  ASSERT_TRUE(inv.hypothesis_holds);
  EXPECT_EQ(*inv.mu, Scalar(3125) * r.jacobian_determinant);
  EXPECT_EQ(inv.conclusion, r.per_s);
}
