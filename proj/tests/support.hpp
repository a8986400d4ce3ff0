#pragma once

// Seeded generators and small independent oracles shared by the test suites.
// The oracles deliberately avoid the library's own algorithms: determinants by
// permutation expansion, derivatives by forward differences, Jacobian sums by
// numeric evaluation at random points.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "pmaps/pmaps.hpp"

namespace testing_support {

using pmaps::ContextPtr;
using pmaps::MultiPoly;
using pmaps::PolyMap;
using pmaps::Scalar;
using pmaps::Vector;

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen_); }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }

  Scalar rational(long bound = 5, long max_den = 4) {
    return Scalar::fraction(integer(-bound, bound), integer(1, max_den));
  }

  Scalar gaussian(long bound = 3, long max_den = 3) {
    return Scalar(rational(bound, max_den).re(), coin(0.3) ? rational(bound, max_den).re() : mpq_class(0));
  }

  Scalar nonzero_rational(long bound = 5, long max_den = 4) {
    Scalar s;
    do s = rational(bound, max_den); while (s.is_zero());
    return s;
  }

  Vector vector(std::size_t n, long bound = 3, long max_den = 3) {
    Vector v;
    for (std::size_t i = 0; i < n; ++i) v.push_back(rational(bound, max_den));
    return v;
  }

  Vector nonzero_vector(std::size_t n, long bound = 3, long max_den = 3) {
    Vector v;
    do v = vector(n, bound, max_den); while (pmaps::is_zero_vector(v));
    return v;
  }

  pmaps::Monomial monomial(std::size_t nvars, unsigned max_degree) {
    pmaps::Monomial m(nvars);
    const unsigned target = static_cast<unsigned>(integer(0, max_degree));
    for (unsigned k = 0; k < target && nvars > 0; ++k) {
      const auto i = static_cast<std::size_t>(integer(0, static_cast<long>(nvars) - 1));
      m.exps[i] += 1;
      m.degree += 1;
    }
    return m;
  }

  MultiPoly poly(const ContextPtr& ctx, unsigned max_degree, std::size_t max_terms = 5, bool gaussian_coeffs = false) {
    MultiPoly p(ctx);
    const auto terms = static_cast<std::size_t>(integer(0, static_cast<long>(max_terms)));
    for (std::size_t t = 0; t < terms; ++t) {
      p.add_term(monomial(ctx->size(), max_degree), gaussian_coeffs ? gaussian() : rational());
    }
    return p;
  }

  // A polynomial whose degree is exactly max_degree (unless max_degree == 0 and it is 0).
  MultiPoly poly_of_degree(const ContextPtr& ctx, unsigned degree, std::size_t extra_terms = 4) {
    MultiPoly p = poly(ctx, degree, extra_terms);
    pmaps::Monomial top(ctx->size());
    for (unsigned k = 0; k < degree; ++k) {
      const auto i = static_cast<std::size_t>(integer(0, static_cast<long>(ctx->size()) - 1));
      top.exps[i] += 1;
      top.degree += 1;
    }
    p.add_term(top, nonzero_rational());
    return p;
  }

  PolyMap map(const ContextPtr& ctx, std::size_t m, unsigned max_degree, std::size_t max_terms = 4) {
    std::vector<MultiPoly> comps;
    for (std::size_t j = 0; j < m; ++j) comps.push_back(poly(ctx, max_degree, max_terms));
    return PolyMap(ctx, std::move(comps));
  }

  pmaps::ScalarMatrix invertible_matrix(std::size_t n, long bound = 2) {
    while (true) {
      pmaps::ScalarMatrix a(n, n);
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) a(r, c) = Scalar(integer(-bound, bound));
      }
      if (!permutation_determinant(a).is_zero()) return a;
    }
  }

  static Scalar permutation_determinant(const pmaps::ScalarMatrix& a);

  std::mt19937_64& engine() { return gen_; }

 private:
  std::mt19937_64 gen_;
};

inline int permutation_sign(const std::vector<std::size_t>& perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] > perm[j]) sign = -sign;
    }
  }
  return sign;
}

// Leibniz formula; exponential but trustworthy for n <= 6.
template <typename T>
T leibniz_determinant(const pmaps::Matrix<T>& a, const T& zero, const T& one) {
  const std::size_t n = a.rows();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  T total = zero;
  do {
    T prod = one;
    for (std::size_t i = 0; i < n; ++i) prod = prod * a(i, perm[i]);
    if (permutation_sign(perm) > 0) {
      total = total + prod;
    } else {
      total = total - prod;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline Scalar Rng::permutation_determinant(const pmaps::ScalarMatrix& a) {
  return leibniz_determinant(a, Scalar(0), Scalar(1));
}

inline Scalar det_oracle(const pmaps::ScalarMatrix& a) { return Rng::permutation_determinant(a); }

inline MultiPoly det_oracle(const pmaps::PolyMatrix& a, const ContextPtr& ctx) {
  return leibniz_determinant(a, MultiPoly(ctx), MultiPoly(ctx, Scalar(1)));
}

// Exact derivative through forward differences: for q of degree <= D,
// q'(0) = sum_{k=1..D} (-1)^(k+1) Delta^k q(0) / k.
inline Scalar derivative_oracle(const MultiPoly& f, const Vector& point, const Vector& direction) {
  const unsigned deg = f.degree().value_or(0);
  std::vector<Scalar> values;
  for (unsigned h = 0; h <= deg; ++h) {
    Vector x = point;
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += direction[i] * Scalar(static_cast<long>(h));
    values.push_back(f.evaluate(x));
  }
  Scalar result(0);
  std::vector<Scalar> diffs = values;
  for (unsigned k = 1; k <= deg; ++k) {
    for (std::size_t i = 0; i + k <= deg; ++i) diffs[i] = diffs[i + 1] - diffs[i];
    const Scalar term = diffs[0] / Scalar(static_cast<long>(k));
    result = (k % 2 == 1) ? result + term : result - term;
  }
  return result;
}

inline Vector unit(std::size_t n, std::size_t i) {
  Vector v(n);
  v[i] = Scalar(1);
  return v;
}

// Numeric Jacobian at a point from forward-difference derivatives.
inline pmaps::ScalarMatrix jacobian_oracle(const PolyMap& f, const Vector& point) {
  pmaps::ScalarMatrix j(f.m(), f.n());
  for (std::size_t r = 0; r < f.m(); ++r) {
    for (std::size_t c = 0; c < f.n(); ++c) j(r, c) = derivative_oracle(f[r], point, unit(f.n(), c));
  }
  return j;
}

inline pmaps::ScalarMatrix jacobian_sum_oracle(const PolyMap& f, const std::vector<Vector>& points,
                                               const Vector& weights = {}) {
  pmaps::ScalarMatrix total(f.m(), f.n());
  for (std::size_t i = 0; i < points.size(); ++i) {
    pmaps::ScalarMatrix j = jacobian_oracle(f, points[i]);
    if (!weights.empty()) j.scale(weights[i]);
    total = total + j;
  }
  return total;
}

inline MultiPoly parse(const std::string& text, const ContextPtr& ctx) { return pmaps::parse_polynomial(text, ctx); }

inline PolyMap map_of(const ContextPtr& ctx, const std::vector<std::string>& comps) {
  std::vector<MultiPoly> ps;
  for (const auto& c : comps) ps.push_back(parse(c, ctx));
  return PolyMap(ctx, std::move(ps));
}

inline Scalar q(long num, long den = 1) { return Scalar::fraction(num, den); }

}  // namespace testing_support
