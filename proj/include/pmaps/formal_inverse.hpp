#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmaps/decomposition.hpp"
#include "pmaps/errors.hpp"
#include "pmaps/poly_map.hpp"

namespace pmaps {

// F o G = X and G o F = X exactly.
inline bool verify_inverse(const PolyMap& f, const PolyMap& g) {
  if (!f.is_square() || !g.is_square() || f.n() != g.n()) throw PreconditionError("inverse check needs square maps of equal size");
  const PolyMap id = PolyMap::identity(f.context());
  const PolyMap id_g = PolyMap::identity(g.context());
  return f.compose(g) == id_g && g.compose(f) == id;
}

// Classical bound deg F^-1 <= (deg F)^(n-1) for polynomial automorphisms.
inline unsigned default_inverse_degree_bound(const PolyMap& f) {
  unsigned bound = 1;
  const unsigned d = std::max(1U, f.degree());
  for (std::size_t i = 1; i < f.n(); ++i) {
    bound *= d;
    if (bound > 4096) return 4096;
  }
  return bound;
}

struct InverseResult {
  bool polynomial = false;
  std::optional<PolyMap> inverse;
  unsigned max_degree = 0;
  unsigned reached_degree = 0;  // truncation degree at which the iteration stopped
  std::string reason;
};

// Writes F = c + L o (X + G0) with G0 free of terms of degree <= 1 and solves
// W = X - G0 o W degree by degree up to max_degree; W is accepted once its
// exact compositions with X + G0 are the identity.
inline InverseResult truncated_inverse(const PolyMap& f, std::optional<unsigned> max_degree = std::nullopt) {
  const Decomposition dec = decompose(f, false);
  const ContextPtr& ctx = f.context();
  const PolyMap id = PolyMap::identity(ctx);
  const PolyMap normalized = id + dec.H;

  InverseResult result;
  result.max_degree = max_degree.value_or(default_inverse_degree_bound(f));
  if (result.max_degree == 0) throw PreconditionError("inverse degree bound must be positive");

  PolyMap w = id;
  const auto accepts = [&](const PolyMap& cand) {
    return normalized.compose(cand) == id && cand.compose(normalized) == id;
  };
  bool found = accepts(w);
  unsigned k = 1;
  while (!found && k < result.max_degree) {
    ++k;
    std::vector<MultiPoly> next;
    for (std::size_t j = 0; j < f.n(); ++j) {
      next.push_back(id[j] - dec.H[j].substitute(w.components(), k));
    }
    PolyMap candidate(ctx, std::move(next));
    const bool stable = candidate == w;
    w = std::move(candidate);
    // A degree that adds nothing new is where a polynomial inverse may have ended.
    if (stable || k == result.max_degree || !w.has_terms_of_degree(k)) found = accepts(w);
  }
  result.reached_degree = k;
  if (!found) {
    result.reason = "formal inverse is not a polynomial of degree <= " + std::to_string(result.max_degree);
    return result;
  }
  // F^-1 = W o L^-1 o (X - c)
  Vector neg_c = dec.c;
  for (auto& x : neg_c) x = -x;
  const PolyMap outer_linear = PolyMap::affine(ctx, dec.L_inverse, mat_vec(dec.L_inverse, neg_c));
  PolyMap inv = w.compose(outer_linear);
  if (!verify_inverse(f, inv)) throw InternalError("formal inverse fails the composition check");
  result.polynomial = true;
  result.inverse = std::move(inv);
  result.reason = "polynomial inverse verified by exact composition";
  return result;
}

}  // namespace pmaps
