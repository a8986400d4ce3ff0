#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmaps/errors.hpp"
#include "pmaps/matrix.hpp"
#include "pmaps/poly_map.hpp"
#include "pmaps/symbolic.hpp"
#include "pmaps/uni_poly.hpp"

namespace pmaps {

// Number of collinear evaluation points is d - 1 with d = max(2, deg F).
inline unsigned line_degree_bound(const PolyMap& f) { return std::max(2U, f.degree()); }

struct DerivativeBasis {
  std::vector<UniPoly> basis;  // monic, strictly increasing degrees, reduced
  bool contains_one = false;
};

// Reduced echelon basis of span{u_1..u_m} for univariate polynomials.
inline DerivativeBasis echelon_basis(const std::vector<UniPoly>& generators) {
  std::vector<UniPoly> basis;
  for (UniPoly v : generators) {
    bool changed = true;
    while (!v.is_zero() && changed) {
      changed = false;
      for (const auto& b : basis) {
        if (*b.degree() == *v.degree()) {
          v -= b * v.leading();
          changed = true;
          break;
        }
      }
    }
    if (!v.is_zero()) basis.push_back(v.monic());
  }
  std::sort(basis.begin(), basis.end(), [](const UniPoly& a, const UniPoly& b) { return *a.degree() < *b.degree(); });
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Scalar c = basis[i].coefficient(*basis[j].degree());
      if (!c.is_zero()) basis[i] -= basis[j] * c;
    }
  }
  DerivativeBasis out;
  out.contains_one = !basis.empty() && *basis.front().degree() == 0;
  out.basis = std::move(basis);
  return out;
}

inline DerivativeBasis derivative_basis(const LineRestriction& line) { return echelon_basis(line.derivatives()); }

struct RectifiabilityWitness {
  Vector v;  // sum_j v_j d/dT F_j(beta + T gamma) = 1
};

// Exact solve of sum_j v_j g'_j(T) = 1 by matching coefficients.
inline std::optional<RectifiabilityWitness> rectifiability_witness(const PolyMap& f, const Vector& beta,
                                                                   const Vector& gamma) {
  const LineRestriction line = restrict_to_line(f, beta, gamma);
  const auto deriv = line.derivatives();
  std::size_t rows = 1;
  for (const auto& d : deriv) rows = std::max(rows, d.coefficients().size());
  ScalarMatrix a(rows, f.m());
  for (std::size_t j = 0; j < f.m(); ++j) {
    for (std::size_t k = 0; k < deriv[j].coefficients().size(); ++k) a(k, j) = deriv[j].coefficients()[k];
  }
  Vector rhs(rows);
  rhs[0] = Scalar(1);
  auto sol = solve_linear(a, rhs);
  if (!sol) return std::nullopt;
  UniPoly check;
  for (std::size_t j = 0; j < f.m(); ++j) check += deriv[j] * (*sol)[j];
  if (check != UniPoly::constant(Scalar(1))) throw InternalError("rectifiability witness fails its identity");
  return RectifiabilityWitness{*std::move(sol)};
}

// Nodes r_1..r_{d-1} (roots of node_poly) with unit weights such that
// sum_i JF|_{beta + r_i gamma} * gamma = 0, proved through power sums only.
struct CollapseCertificate {
  Vector lambda;
  unsigned d = 0;
  Vector p;  // p_0..p_{d-1}
  UniPoly node_poly;
  std::vector<UniPoly> basis;
  Vector residuals;            // symmetric_eval(node_poly, u_j) per basis element
  Vector component_residuals;  // symmetric_eval(node_poly, (JF|_{beta+T gamma} gamma)_j)
  bool degenerate = false;     // F constant on the line: single node 0
};

inline CollapseCertificate collapse_certificate(const PolyMap& f, const Vector& beta, const Vector& gamma) {
  require_line(f, beta, gamma);
  if (rectifiability_witness(f, beta, gamma)) throw PreconditionError("line restriction is linearly rectifiable");
  const LineRestriction line = restrict_to_line(f, beta, gamma);
  const DerivativeBasis db = derivative_basis(line);

  CollapseCertificate cert;
  cert.basis = db.basis;
  if (db.basis.empty()) {
    cert.degenerate = true;
    cert.d = 2;
    cert.lambda = {Scalar(1)};
    cert.p = {Scalar(1), Scalar(0)};
    cert.node_poly = UniPoly::identity();
  } else {
    cert.d = line_degree_bound(f);
    const unsigned d = cert.d;
    const Scalar weight_sum(static_cast<long>(d - 1));
    cert.lambda.assign(d - 1, Scalar(1));
    cert.p.assign(d, Scalar(0));
    for (unsigned i = 0; i < d; ++i) {
      const auto it = std::find_if(db.basis.begin(), db.basis.end(), [i](const UniPoly& u) { return *u.degree() == i; });
      if (it == db.basis.end()) {
        cert.p[i] = weight_sum;
        continue;
      }
      Scalar acc(0);
      for (unsigned k = 0; k < i; ++k) acc += cert.p[k] * it->coefficient(k);
      cert.p[i] = -acc;
    }
    cert.node_poly = power_sums_to_monic(std::span<const Scalar>(cert.p).subspan(1));
  }
  for (const auto& u : cert.basis) cert.residuals.push_back(symmetric_eval(cert.node_poly, u));
  for (const auto& dj : jacobian_direction_on_line(f, beta, gamma)) {
    cert.component_residuals.push_back(symmetric_eval(cert.node_poly, dj));
  }
  const auto nonzero = [](const Scalar& x) { return !x.is_zero(); };
  if (std::any_of(cert.residuals.begin(), cert.residuals.end(), nonzero) ||
      std::any_of(cert.component_residuals.begin(), cert.component_residuals.end(), nonzero)) {
    throw InternalError("collapse certificate has a nonzero residual");
  }
  return cert;
}

// (d-1)(F(beta+gamma) - F(beta)) = sum over the d-1 nodes of JF * gamma, with
// node power sums p_j = (d-1)/(j+1).
struct MeanValueCertificate {
  unsigned d = 0;
  Vector p;  // p_0..p_{d-1}
  UniPoly node_poly;
  Vector lhs;
  Vector rhs;
  Vector residuals;
  bool holds = false;
};

inline MeanValueCertificate mean_value_certificate(const PolyMap& f, const Vector& beta, const Vector& gamma) {
  require_line_dimensions(f, beta, gamma);
  MeanValueCertificate cert;
  cert.d = line_degree_bound(f);
  const long e = static_cast<long>(cert.d) - 1;
  cert.p.push_back(Scalar(e));
  for (long j = 1; j <= e; ++j) cert.p.push_back(Scalar::fraction(e, j + 1));
  cert.node_poly = power_sums_to_monic(std::span<const Scalar>(cert.p).subspan(1));
  const auto directions = jacobian_direction_on_line(f, beta, gamma);
  cert.holds = true;
  for (std::size_t j = 0; j < f.m(); ++j) {
    const UniPoly g = restrict_poly(f[j], beta, gamma);
    Scalar lhs = (g.evaluate(Scalar(1)) - g.evaluate(Scalar(0))) * Scalar(e);
    Scalar rhs = symmetric_eval(cert.node_poly, directions[j]);
    cert.residuals.push_back(lhs - rhs);
    cert.holds = cert.holds && cert.residuals.back().is_zero();
    cert.lhs.push_back(std::move(lhs));
    cert.rhs.push_back(std::move(rhs));
  }
  return cert;
}

// sum_i lambda_i JF|_{beta + r_i gamma} * gamma at explicit nodes.
inline Vector weighted_direction_sum(const PolyMap& f, const Vector& beta, const Vector& gamma, const Vector& nodes,
                                     const Vector& weights) {
  require_line_dimensions(f, beta, gamma);
  if (nodes.size() != weights.size()) throw PreconditionError("nodes and weights differ in length");
  const PolyMatrix j = jacobian(f);
  Vector total(f.m());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const Vector dir = jacobian_direction_at(j, point_on_line(beta, gamma, nodes[i]), gamma);
    for (std::size_t r = 0; r < f.m(); ++r) total[r] += weights[i] * dir[r];
  }
  return total;
}

struct CubicProbe {
  enum class Kind { collision, degenerate };
  Kind kind = Kind::degenerate;
  Vector shifted_beta;  // beta - u10 * gamma
  UniPoly u1;           // after the shift: T
  UniPoly u2;           // after the shift: T^2 + u20
  Scalar u20;
  Scalar t_squared;       // collision at beta' +- t gamma with t^2 = -3 u20
  UniPoly ideal;          // T^2 + 3 u20
  std::vector<UniPoly> odd_parts;  // g_j(T) - g_j(-T) on the shifted line
};

// For deg F <= 3 and a non-rectifiable line: either a collision
// F(beta' - t gamma) = F(beta' + t gamma) or a point where JF * gamma = 0.
inline CubicProbe cubic_probe(const PolyMap& f, const Vector& beta, const Vector& gamma) {
  require_line(f, beta, gamma);
  if (f.degree() > 3) throw PreconditionError("cubic probe needs degree <= 3");
  if (rectifiability_witness(f, beta, gamma)) throw PreconditionError("line restriction is linearly rectifiable");
  const DerivativeBasis db = derivative_basis(restrict_to_line(f, beta, gamma));
  const UniPoly* b1 = nullptr;
  const UniPoly* b2 = nullptr;
  for (const auto& u : db.basis) {
    if (*u.degree() == 1) b1 = &u;
    if (*u.degree() == 2) b2 = &u;
  }
  Scalar u10(0);
  if (b1 != nullptr) {
    u10 = b1->coefficient(0);
  } else if (b2 != nullptr) {
    u10 = b2->coefficient(1) / Scalar(2);
  }

  CubicProbe probe;
  probe.shifted_beta = point_on_line(beta, gamma, -u10);
  const UniPoly shift{-u10, Scalar(1)};  // T -> T - u10
  probe.u1 = UniPoly::identity();
  if (b2 != nullptr) {
    UniPoly u2 = b2->compose(shift);
    u2 -= UniPoly::identity() * u2.coefficient(1);
    probe.u2 = u2;
  } else {
    probe.u2 = UniPoly::monomial(2);
  }
  probe.u20 = probe.u2.coefficient(0);

  const LineRestriction shifted = restrict_to_line(f, probe.shifted_beta, gamma);
  for (const auto& g : shifted.g) probe.odd_parts.push_back(g - g.reflected());

  if (!probe.u20.is_zero()) {
    probe.kind = CubicProbe::Kind::collision;
    probe.t_squared = -probe.u20 * Scalar(3);
    probe.ideal = UniPoly{probe.u20 * Scalar(3), Scalar(0), Scalar(1)};
    for (const auto& odd : probe.odd_parts) {
      if (!odd.divmod(probe.ideal).second.is_zero()) throw InternalError("cubic probe collision is not in the ideal");
    }
  } else {
    probe.kind = CubicProbe::Kind::degenerate;
    if (!is_zero_vector(jacobian_direction_at(jacobian(f), probe.shifted_beta, gamma))) {
      throw InternalError("cubic probe degeneracy without a vanishing directional derivative");
    }
  }
  return probe;
}

struct InjectivityVerdict {
  bool injective = false;
  bool invertible = false;
  std::size_t blocks = 0;
  std::optional<Scalar> constant;  // the constant determinant / minor found
  std::string reason;
};

// Rank n of the unit-weight sum of d-1 evaluated Jacobians at all points
// implies injectivity; for square maps also invertibility (Cynk-Rusek).
inline InjectivityVerdict injectivity_verdict(const PolyMap& f) {
  InjectivityVerdict v;
  v.blocks = line_degree_bound(f) - 1;
  if (f.m() < f.n()) {
    v.reason = "inconclusive: m < n, the Jacobian sum cannot have rank n";
    return v;
  }
  const PolyMatrix j = jacobian(f);
  require_desk_scale(j);
  const SymbolicPointSet pts(f.n(), v.blocks);
  const PolyMatrix sum = symbolic_sum(j, pts);
  const std::size_t n = f.n();
  const std::size_t m = f.m();
  // Any n x n minor that is a nonzero constant certifies full rank everywhere.
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != n) continue;
    PolyMatrix sub(n, n, MultiPoly(pts.context()));
    std::size_t r = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!(mask & (std::size_t{1} << i))) continue;
      for (std::size_t c = 0; c < n; ++c) sub(r, c) = sum(i, c);
      ++r;
    }
    const MultiPoly det = determinant(sub);
    if (det.is_constant() && !det.is_zero()) {
      v.injective = true;
      v.invertible = f.is_square();
      v.constant = det.constant_term();
      v.reason = f.is_square() ? "injective; invertible since square (Cynk-Rusek)" : "injective";
      return v;
    }
  }
  v.reason = "inconclusive: no constant nonzero maximal minor of the Jacobian sum";
  return v;
}

}  // namespace pmaps
