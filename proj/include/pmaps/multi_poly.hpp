#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmaps/errors.hpp"
#include "pmaps/gaussian_rational.hpp"

namespace pmaps {

// Ordered list of variable names shared by the polynomials built over it.
class Context {
 public:
  explicit Context(std::vector<std::string> names) : names_(std::move(names)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (names_[i] == names_[j]) throw PreconditionError("duplicate variable name '" + names_[i] + "'");
      }
    }
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i] == name) return i;
    }
    return std::nullopt;
  }

 private:
  std::vector<std::string> names_;
};

using ContextPtr = std::shared_ptr<const Context>;

inline ContextPtr make_context(std::vector<std::string> names) {
  return std::make_shared<const Context>(std::move(names));
}

// X1..Xn style context.
inline ContextPtr numbered_context(std::string_view prefix, std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) names.push_back(std::string(prefix) + std::to_string(i));
  return make_context(std::move(names));
}

inline bool same_context(const ContextPtr& a, const ContextPtr& b) {
  return a == b || (a && b && a->names() == b->names());
}

// Exponent vector with its cached total degree.
struct Monomial {
  std::vector<std::uint16_t> exps;
  unsigned degree = 0;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
  explicit Monomial(std::vector<std::uint16_t> e) : exps(std::move(e)) {
    for (auto x : exps) degree += x;
  }

  static Monomial variable(std::size_t nvars, std::size_t index, unsigned power = 1) {
    Monomial m(nvars);
    m.exps[index] = static_cast<std::uint16_t>(power);
    m.degree = power;
    return m;
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.exps.resize(a.exps.size());
  for (std::size_t i = 0; i < a.exps.size(); ++i) {
    const unsigned e = unsigned{a.exps[i]} + b.exps[i];
    if (e > std::numeric_limits<std::uint16_t>::max()) throw ResourceError("exponent overflow");
    r.exps[i] = static_cast<std::uint16_t>(e);
  }
  r.degree = a.degree + b.degree;
  return r;
}

// Graded-lexicographic order with X1 > X2 > ...; ascending in the container,
// so the leading term is the last element.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    if (a.degree != b.degree) return a.degree < b.degree;
    return a.exps < b.exps;
  }
};

class MultiPoly {
 public:
  using TermMap = std::map<Monomial, Scalar, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(ContextPtr ctx) : ctx_(std::move(ctx)) {}
  MultiPoly(ContextPtr ctx, const Scalar& c) : ctx_(std::move(ctx)) {
    if (!c.is_zero()) terms_.emplace(Monomial(ctx_ ? ctx_->size() : 0), c);
  }

  static MultiPoly constant(ContextPtr ctx, const Scalar& c) { return MultiPoly(std::move(ctx), c); }
  static MultiPoly variable(ContextPtr ctx, std::size_t index) {
    if (index >= ctx->size()) throw PreconditionError("variable index out of range");
    MultiPoly p(ctx);
    p.terms_.emplace(Monomial::variable(ctx->size(), index), Scalar(1));
    return p;
  }
  static MultiPoly monomial(ContextPtr ctx, Monomial m, const Scalar& c) {
    if (m.exps.size() != ctx->size()) throw ContextMismatch("monomial length differs from context size");
    MultiPoly p(std::move(ctx));
    if (!c.is_zero()) p.terms_.emplace(std::move(m), c);
    return p;
  }

  const ContextPtr& context() const noexcept { return ctx_; }
  std::size_t nvars() const noexcept { return ctx_ ? ctx_->size() : 0; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  bool is_zero() const noexcept { return terms_.empty(); }

  // Total degree; nullopt stands for the degree of the zero polynomial.
  std::optional<unsigned> degree() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.rbegin()->first.degree;
  }

  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree == 0); }

  Scalar constant_term() const {
    if (terms_.empty() || terms_.begin()->first.degree != 0) return Scalar(0);
    return terms_.begin()->second;
  }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    return terms_.begin()->first.degree == terms_.rbegin()->first.degree;
  }

  // Adds c*m in place.
  void add_term(const Monomial& m, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  MultiPoly homogeneous_part(unsigned k) const {
    MultiPoly r(ctx_);
    for (const auto& [m, c] : terms_) {
      if (m.degree == k) r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
  }

  MultiPoly truncated(unsigned max_degree) const {
    MultiPoly r(ctx_);
    for (const auto& [m, c] : terms_) {
      if (m.degree > max_degree) break;
      r.terms_.emplace_hint(r.terms_.end(), m, c);
    }
    return r;
  }

  MultiPoly operator-() const {
    MultiPoly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }

  MultiPoly& operator+=(const MultiPoly& o) {
    adopt_context(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  MultiPoly& operator-=(const MultiPoly& o) {
    adopt_context(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  MultiPoly& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(MultiPoly a, const Scalar& s) { return a *= s; }
  friend MultiPoly operator*(const Scalar& s, MultiPoly a) { return a *= s; }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    return multiply(a, b, std::numeric_limits<unsigned>::max());
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  // Product with all terms of total degree > max_degree dropped.
  static MultiPoly multiply(const MultiPoly& a, const MultiPoly& b, unsigned max_degree) {
    check_same(a, b);
    MultiPoly r(a.ctx_ ? a.ctx_ : b.ctx_);
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ma, ca] : a.terms_) {
      if (ma.degree > max_degree) break;
      for (const auto& [mb, cb] : b.terms_) {
        if (ma.degree + mb.degree > max_degree) break;
        r.add_term(ma * mb, ca * cb);
      }
    }
    return r;
  }

  MultiPoly pow(unsigned k) const {
    MultiPoly result(ctx_, Scalar(1));
    MultiPoly base = *this;
    while (k != 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k != 0) base *= base;
    }
    return result;
  }

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (!a.is_zero() || !b.is_zero()) check_same(a, b);
    return a.terms_ == b.terms_;
  }

  Scalar evaluate(std::span<const Scalar> point) const {
    if (point.size() != nvars()) throw ContextMismatch("evaluation point has wrong length");
    std::vector<std::vector<Scalar>> powers(point.size());
    Scalar total(0);
    for (const auto& [m, c] : terms_) {
      Scalar t = c;
      for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] != 0) t *= cached_power(powers[i], point[i], m.exps[i]);
      }
      total += t;
    }
    return total;
  }

  // Simultaneous substitution X_k -> images[k]; the result lives over the
  // images' context. Terms above max_degree are dropped after every product.
  MultiPoly substitute(std::span<const MultiPoly> images,
                       unsigned max_degree = std::numeric_limits<unsigned>::max()) const {
    if (images.size() != nvars()) throw ContextMismatch("substitution needs one image per variable");
    ContextPtr target = images.empty() ? ctx_ : images.front().context();
    for (const auto& img : images) {
      if (!same_context(img.context(), target)) throw ContextMismatch("substitution images use different contexts");
    }
    std::vector<std::vector<MultiPoly>> powers(images.size());
    MultiPoly total(target);
    for (const auto& [m, c] : terms_) {
      MultiPoly t(target, c);
      for (std::size_t i = 0; i < m.exps.size() && !t.is_zero(); ++i) {
        if (m.exps[i] != 0) t = multiply(t, cached_power(powers[i], images[i], m.exps[i]), max_degree);
      }
      total += t;
    }
    return total;
  }

  // Moves the polynomial into `target`, sending variable k to index_map[k].
  MultiPoly relabel(ContextPtr target, std::span<const std::size_t> index_map) const {
    if (index_map.size() != nvars()) throw ContextMismatch("relabel map has wrong length");
    MultiPoly r(target);
    for (const auto& [m, c] : terms_) {
      Monomial nm(target->size());
      for (std::size_t i = 0; i < m.exps.size(); ++i) {
        if (m.exps[i] == 0) continue;
        if (index_map[i] >= target->size()) throw ContextMismatch("relabel index out of range");
        nm.exps[index_map[i]] = m.exps[i];
      }
      nm.degree = m.degree;
      r.add_term(nm, c);
    }
    return r;
  }

  MultiPoly partial_derivative(std::size_t var_index) const {
    if (var_index >= nvars()) throw PreconditionError("partial derivative index out of range");
    MultiPoly r(ctx_);
    for (const auto& [m, c] : terms_) {
      const auto e = m.exps[var_index];
      if (e == 0) continue;
      Monomial nm = m;
      nm.exps[var_index] = static_cast<std::uint16_t>(e - 1);
      nm.degree -= 1;
      r.add_term(nm, c * Scalar(static_cast<long>(e)));
    }
    return r;
  }

  // Canonical rendering, terms in decreasing graded-lex order.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      const bool negative = is_negative_display(c);
      const Scalar mag = negative ? -c : c;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      const std::string mono = monomial_text(m);
      if (mono.empty()) {
        out += mag.to_string();
      } else if (mag.is_one()) {
        out += mono;
      } else {
        out += mag.to_string() + "*" + mono;
      }
    }
    return out;
  }

 private:
  static bool is_negative_display(const Scalar& c) {
    if (c.is_real()) return sgn(c.re()) < 0;
    return sgn(c.re()) == 0 && sgn(c.im()) < 0;
  }

  std::string monomial_text(const Monomial& m) const {
    std::string s;
    for (std::size_t i = 0; i < m.exps.size(); ++i) {
      if (m.exps[i] == 0) continue;
      if (!s.empty()) s += "*";
      s += ctx_->name(i);
      if (m.exps[i] > 1) s += "^" + std::to_string(m.exps[i]);
    }
    return s;
  }

  template <typename T>
  static const T& cached_power(std::vector<T>& cache, const T& base, std::size_t e) {
    if (cache.empty()) cache.push_back(base);
    while (cache.size() < e) cache.push_back(cache.back() * base);
    return cache[e - 1];
  }

  static void check_same(const MultiPoly& a, const MultiPoly& b) {
    if (!a.ctx_ || !b.ctx_) return;
    if (!same_context(a.ctx_, b.ctx_)) throw ContextMismatch("polynomials use different contexts");
  }

  void adopt_context(const MultiPoly& o) {
    if (!ctx_) {
      ctx_ = o.ctx_;
      return;
    }
    check_same(*this, o);
  }

  ContextPtr ctx_;
  TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiPoly& p) { return os << p.to_string(); }

// Images X_k -> X_k over `ctx`: the identity substitution.
inline std::vector<MultiPoly> variables_of(const ContextPtr& ctx) {
  std::vector<MultiPoly> vars;
  vars.reserve(ctx->size());
  for (std::size_t i = 0; i < ctx->size(); ++i) vars.push_back(MultiPoly::variable(ctx, i));
  return vars;
}

}  // namespace pmaps
