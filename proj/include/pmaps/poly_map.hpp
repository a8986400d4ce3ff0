#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmaps/errors.hpp"
#include "pmaps/matrix.hpp"
#include "pmaps/multi_poly.hpp"
#include "pmaps/uni_poly.hpp"

namespace pmaps {

using Vector = std::vector<Scalar>;

// A polynomial map C^n -> C^m given by m components over X1..Xn.
class PolyMap {
 public:
  PolyMap(ContextPtr ctx, std::vector<MultiPoly> components) : ctx_(std::move(ctx)), comps_(std::move(components)) {
    if (!ctx_ || ctx_->size() == 0) throw PreconditionError("a polynomial map needs at least one variable");
    if (comps_.empty()) throw PreconditionError("a polynomial map needs at least one component");
    for (auto& c : comps_) {
      if (!c.context()) c = MultiPoly(ctx_);
      if (!same_context(c.context(), ctx_)) throw ContextMismatch("map components use different contexts");
    }
  }

  static PolyMap identity(const ContextPtr& ctx) { return PolyMap(ctx, variables_of(ctx)); }

  // x -> a*x + c
  static PolyMap affine(const ContextPtr& ctx, const ScalarMatrix& a, const Vector& c) {
    if (a.cols() != ctx->size() || c.size() != a.rows()) throw PreconditionError("affine map dimension mismatch");
    std::vector<MultiPoly> comps;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      MultiPoly p(ctx, c[i]);
      for (std::size_t j = 0; j < a.cols(); ++j) {
        if (!a(i, j).is_zero()) p += MultiPoly::variable(ctx, j) * a(i, j);
      }
      comps.push_back(std::move(p));
    }
    return PolyMap(ctx, std::move(comps));
  }
  static PolyMap linear(const ContextPtr& ctx, const ScalarMatrix& a) { return affine(ctx, a, Vector(a.rows())); }

  const ContextPtr& context() const noexcept { return ctx_; }
  std::size_t n() const noexcept { return ctx_->size(); }
  std::size_t m() const noexcept { return comps_.size(); }
  bool is_square() const noexcept { return n() == m(); }
  const std::vector<MultiPoly>& components() const noexcept { return comps_; }
  const MultiPoly& operator[](std::size_t j) const { return comps_.at(j); }

  // Maximum total degree over the components; 0 for the zero map.
  unsigned degree() const {
    unsigned d = 0;
    for (const auto& c : comps_) d = std::max(d, c.degree().value_or(0));
    return d;
  }

  // this o inner
  PolyMap compose(const PolyMap& inner) const {
    if (inner.m() != n()) throw PreconditionError("composition dimension mismatch");
    std::vector<MultiPoly> comps;
    comps.reserve(m());
    for (const auto& c : comps_) comps.push_back(c.substitute(inner.components()));
    return PolyMap(inner.context(), std::move(comps));
  }

  PolyMap truncated(unsigned max_degree) const {
    std::vector<MultiPoly> comps;
    for (const auto& c : comps_) comps.push_back(c.truncated(max_degree));
    return PolyMap(ctx_, std::move(comps));
  }

  PolyMap& operator+=(const PolyMap& o) {
    require_same_shape(o);
    for (std::size_t j = 0; j < m(); ++j) comps_[j] += o.comps_[j];
    return *this;
  }
  PolyMap& operator-=(const PolyMap& o) {
    require_same_shape(o);
    for (std::size_t j = 0; j < m(); ++j) comps_[j] -= o.comps_[j];
    return *this;
  }
  friend PolyMap operator+(PolyMap a, const PolyMap& b) { return a += b; }
  friend PolyMap operator-(PolyMap a, const PolyMap& b) { return a -= b; }

  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return same_context(a.ctx_, b.ctx_) && a.comps_ == b.comps_;
  }

  bool is_zero() const {
    return std::all_of(comps_.begin(), comps_.end(), [](const MultiPoly& c) { return c.is_zero(); });
  }

  bool has_terms_of_degree(unsigned k) const {
    return std::any_of(comps_.begin(), comps_.end(), [k](const MultiPoly& c) { return !c.homogeneous_part(k).is_zero(); });
  }

  Vector evaluate(std::span<const Scalar> point) const {
    Vector r;
    r.reserve(m());
    for (const auto& c : comps_) r.push_back(c.evaluate(point));
    return r;
  }

  std::vector<std::string> rendered() const {
    std::vector<std::string> out;
    for (const auto& c : comps_) out.push_back(c.to_string());
    return out;
  }

 private:
  void require_same_shape(const PolyMap& o) const {
    if (!same_context(ctx_, o.ctx_) || m() != o.m()) throw ContextMismatch("maps have different shapes");
  }

  ContextPtr ctx_;
  std::vector<MultiPoly> comps_;
};

// Matrix applied as a linear map to the components: (a o F)_i = sum_j a_ij F_j.
inline PolyMap apply_matrix(const ScalarMatrix& a, const PolyMap& f) {
  if (a.cols() != f.m()) throw PreconditionError("matrix and map dimension mismatch");
  std::vector<MultiPoly> comps;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    MultiPoly p(f.context());
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a(i, j).is_zero()) p += f[j] * a(i, j);
    }
    comps.push_back(std::move(p));
  }
  return PolyMap(f.context(), std::move(comps));
}

inline PolyMap add_constant(const PolyMap& f, const Vector& c) {
  if (c.size() != f.m()) throw PreconditionError("constant vector has wrong length");
  std::vector<MultiPoly> comps = f.components();
  for (std::size_t j = 0; j < c.size(); ++j) comps[j] += MultiPoly(f.context(), c[j]);
  return PolyMap(f.context(), std::move(comps));
}

inline PolyMatrix jacobian(const PolyMap& f) {
  PolyMatrix j(f.m(), f.n(), MultiPoly(f.context()));
  for (std::size_t r = 0; r < f.m(); ++r) {
    for (std::size_t c = 0; c < f.n(); ++c) j(r, c) = f[r].partial_derivative(c);
  }
  return j;
}

struct LinearPart {
  ScalarMatrix matrix;  // degree-one coefficients
  Vector constant;      // degree-zero part
};

inline LinearPart linear_part(const PolyMap& f) {
  if (!f.is_square()) throw PreconditionError("linear part needs a square map");
  LinearPart lp{ScalarMatrix(f.m(), f.n()), Vector(f.m())};
  for (std::size_t r = 0; r < f.m(); ++r) {
    lp.constant[r] = f[r].constant_term();
    for (std::size_t c = 0; c < f.n(); ++c) lp.matrix(r, c) = f[r].coefficient(Monomial::variable(f.n(), c));
  }
  return lp;
}

inline ScalarMatrix evaluate_matrix(const PolyMatrix& a, std::span<const Scalar> point) {
  ScalarMatrix r(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).evaluate(point);
  }
  return r;
}

inline PolyMatrix substitute_matrix(const PolyMatrix& a, std::span<const MultiPoly> images) {
  if (images.empty()) throw PreconditionError("substitution needs images");
  PolyMatrix r(a.rows(), a.cols(), MultiPoly(images.front().context()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j).substitute(images);
  }
  return r;
}

// D = sum_i gamma_i d/dX_i
class Derivation {
 public:
  explicit Derivation(Vector gamma) : gamma_(std::move(gamma)) {}

  const Vector& gamma() const noexcept { return gamma_; }

  MultiPoly operator()(const MultiPoly& f) const {
    if (f.nvars() != gamma_.size()) throw ContextMismatch("derivation direction has wrong length");
    MultiPoly r(f.context());
    for (std::size_t i = 0; i < gamma_.size(); ++i) {
      if (!gamma_[i].is_zero()) r += f.partial_derivative(i) * gamma_[i];
    }
    return r;
  }

  MultiPoly apply(const MultiPoly& f, unsigned times) const {
    MultiPoly r = f;
    for (unsigned k = 0; k < times && !r.is_zero(); ++k) r = (*this)(r);
    return r;
  }

 private:
  Vector gamma_;
};

inline MultiPoly apply_derivation(const Derivation& d, const MultiPoly& f, unsigned times) { return d.apply(f, times); }

inline Vector point_on_line(const Vector& beta, const Vector& gamma, const Scalar& t) {
  if (beta.size() != gamma.size()) throw PreconditionError("beta and gamma differ in length");
  Vector p(beta.size());
  for (std::size_t i = 0; i < beta.size(); ++i) p[i] = beta[i] + t * gamma[i];
  return p;
}

// sum_i c^i/i! (D^i f)(beta); checked against f(beta + c*gamma).
inline Scalar taylor_shift(const MultiPoly& f, const Vector& beta, const Vector& gamma, const Scalar& c) {
  const Derivation d(gamma);
  Scalar series(0);
  MultiPoly di = f;
  Scalar cpow(1);
  const unsigned top = f.degree().value_or(0);
  for (unsigned i = 0; i <= top && !di.is_zero(); ++i) {
    series += cpow / factorial(i) * di.evaluate(beta);
    di = d(di);
    cpow *= c;
  }
  if (series != f.evaluate(point_on_line(beta, gamma, c))) {
    throw InternalError("Taylor series along a line disagrees with direct evaluation");
  }
  return series;
}

inline bool is_zero_vector(const Vector& v) {
  return std::all_of(v.begin(), v.end(), [](const Scalar& x) { return x.is_zero(); });
}

// f(beta + T*gamma) as a univariate polynomial in T.
inline UniPoly restrict_poly(const MultiPoly& f, const Vector& beta, const Vector& gamma) {
  if (f.nvars() != beta.size() || beta.size() != gamma.size()) throw ContextMismatch("line has wrong dimension");
  std::vector<UniPoly> linear;
  for (std::size_t i = 0; i < beta.size(); ++i) linear.push_back(UniPoly{beta[i], gamma[i]});
  std::vector<std::vector<UniPoly>> powers(beta.size());
  UniPoly total;
  for (const auto& [m, c] : f.terms()) {
    UniPoly t = UniPoly::constant(c);
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      const auto e = m.exps[i];
      if (e == 0) continue;
      auto& cache = powers[i];
      if (cache.empty()) cache.push_back(linear[i]);
      while (cache.size() < e) cache.push_back(cache.back() * linear[i]);
      t *= cache[e - 1];
    }
    total += t;
  }
  return total;
}

struct LineRestriction {
  Vector beta;
  Vector gamma;
  std::vector<UniPoly> g;  // g_j(T) = F_j(beta + T gamma)

  std::vector<UniPoly> derivatives() const {
    std::vector<UniPoly> d;
    for (const auto& gj : g) d.push_back(gj.derivative());
    return d;
  }
};

inline void require_line_dimensions(const PolyMap& f, const Vector& beta, const Vector& gamma) {
  if (beta.size() != f.n() || gamma.size() != f.n()) throw PreconditionError("line vectors must have length n");
}

inline void require_line(const PolyMap& f, const Vector& beta, const Vector& gamma) {
  require_line_dimensions(f, beta, gamma);
  if (is_zero_vector(gamma)) throw PreconditionError("zero direction vector");
}

inline LineRestriction restrict_to_line(const PolyMap& f, const Vector& beta, const Vector& gamma) {
  require_line(f, beta, gamma);
  LineRestriction lr{beta, gamma, {}};
  for (const auto& c : f.components()) lr.g.push_back(restrict_poly(c, beta, gamma));
  return lr;
}

// (JF)|_{beta + T gamma} * gamma componentwise, built from the Jacobian rather
// than by differentiating the restriction.
inline std::vector<UniPoly> jacobian_direction_on_line(const PolyMap& f, const Vector& beta, const Vector& gamma) {
  require_line_dimensions(f, beta, gamma);
  const PolyMatrix j = jacobian(f);
  std::vector<UniPoly> out;
  for (std::size_t r = 0; r < f.m(); ++r) {
    UniPoly acc;
    for (std::size_t c = 0; c < f.n(); ++c) {
      if (!gamma[c].is_zero()) acc += restrict_poly(j(r, c), beta, gamma) * gamma[c];
    }
    out.push_back(std::move(acc));
  }
  return out;
}

// (JF)|_{point} * gamma
inline Vector jacobian_direction_at(const PolyMatrix& jac, const Vector& point, const Vector& gamma) {
  return mat_vec(evaluate_matrix(jac, point), gamma);
}

}  // namespace pmaps
