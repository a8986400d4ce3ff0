#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pmaps/errors.hpp"
#include "pmaps/gaussian_rational.hpp"

namespace pmaps {

// Dense univariate polynomial, lowest degree first, trailing zeros trimmed.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<Scalar> coeffs) : c_(coeffs) { trim(); }

  static UniPoly constant(const Scalar& c) { return UniPoly(std::vector<Scalar>{c}); }
  static UniPoly monomial(std::size_t k, const Scalar& c = Scalar(1)) {
    std::vector<Scalar> v(k + 1);
    v[k] = c;
    return UniPoly(std::move(v));
  }
  static UniPoly identity() { return monomial(1); }

  const std::vector<Scalar>& coefficients() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  std::optional<std::size_t> degree() const {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  Scalar coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : Scalar(0); }
  const Scalar& leading() const {
    if (c_.empty()) throw PreconditionError("zero polynomial has no leading coefficient");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }

  UniPoly monic() const {
    if (c_.empty()) throw PreconditionError("cannot normalize the zero polynomial");
    UniPoly r(*this);
    const Scalar inv = Scalar(1) / c_.back();
    for (auto& x : r.c_) x *= inv;
    return r;
  }

  UniPoly operator-() const {
    UniPoly r(*this);
    for (auto& x : r.c_) x = -x;
    return r;
  }
  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  UniPoly& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      c_.clear();
      return *this;
    }
    for (auto& x : c_) x *= s;
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(UniPoly a, const Scalar& s) { return a *= s; }
  friend UniPoly operator*(const Scalar& s, UniPoly a) { return a *= s; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Scalar> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UniPoly(std::move(r));
  }
  UniPoly& operator*=(const UniPoly& o) { return *this = *this * o; }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  UniPoly pow(unsigned k) const {
    UniPoly result = constant(Scalar(1));
    UniPoly base = *this;
    while (k != 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k != 0) base *= base;
    }
    return result;
  }

  Scalar evaluate(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= x;
      acc += *it;
    }
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Scalar> r(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) r[k - 1] = c_[k] * Scalar(static_cast<long>(k));
    return UniPoly(std::move(r));
  }

  // this(inner(T)) by Horner's scheme.
  UniPoly compose(const UniPoly& inner) const {
    UniPoly acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= inner;
      acc += constant(*it);
    }
    return acc;
  }

  // T -> -T.
  UniPoly reflected() const {
    UniPoly r(*this);
    for (std::size_t k = 1; k < r.c_.size(); k += 2) r.c_[k] = -r.c_[k];
    return r;
  }

  // Euclidean division; divisor must be nonzero.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const {
    if (divisor.is_zero()) throw PreconditionError("division by the zero polynomial");
    std::vector<Scalar> rem = c_;
    const std::size_t dd = divisor.c_.size() - 1;
    if (rem.size() <= dd) return {UniPoly{}, *this};
    std::vector<Scalar> quot(rem.size() - dd);
    const Scalar inv = Scalar(1) / divisor.c_.back();
    for (std::size_t k = rem.size(); k-- > dd;) {
      const Scalar q = rem[k] * inv;
      quot[k - dd] = q;
      if (q.is_zero()) continue;
      for (std::size_t j = 0; j <= dd; ++j) rem[k - dd + j] -= q * divisor.c_[j];
    }
    rem.resize(dd);
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
  }

  std::string to_string(const std::string& var = "T") const {
    if (c_.empty()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t k = c_.size(); k-- > 0;) {
      const Scalar& c = c_[k];
      if (c.is_zero()) continue;
      const bool negative = c.is_real() ? sgn(c.re()) < 0 : (sgn(c.re()) == 0 && sgn(c.im()) < 0);
      const Scalar mag = negative ? -c : c;
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      std::string mono;
      if (k == 1) mono = var;
      if (k > 1) mono = var + "^" + std::to_string(k);
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
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

inline std::ostream& operator<<(std::ostream& os, const UniPoly& p) { return os << p.to_string(); }

// Monic polynomial of degree e = p.size() whose root multiset has power sums
// p[0] = p_1, ..., p[e-1] = p_e. Coefficients come from the recurrence
// e_k = (1/k) sum_{j=1..k} (-1)^{j-1} e_{k-j} p_j.
inline UniPoly power_sums_to_monic(std::span<const Scalar> p) {
  const std::size_t e = p.size();
  if (e == 0) throw PreconditionError("need at least one power sum");
  std::vector<Scalar> elem(e + 1);
  elem[0] = Scalar(1);
  for (std::size_t k = 1; k <= e; ++k) {
    Scalar acc(0);
    for (std::size_t j = 1; j <= k; ++j) {
      const Scalar t = elem[k - j] * p[j - 1];
      if (j % 2 == 1) {
        acc += t;
      } else {
        acc -= t;
      }
    }
    elem[k] = acc / Scalar(static_cast<long>(k));
  }
  // g = sum_k (-1)^k e_k T^{e-k}
  std::vector<Scalar> coeffs(e + 1);
  for (std::size_t k = 0; k <= e; ++k) coeffs[e - k] = (k % 2 == 0) ? elem[k] : -elem[k];
  return UniPoly(std::move(coeffs));
}

// Power sums p_0..p_upto of the root multiset of the monic polynomial g,
// with p_0 = deg g.
inline std::vector<Scalar> root_power_sums(const UniPoly& g, std::size_t upto) {
  if (!g.is_monic() || *g.degree() == 0) throw PreconditionError("power sums need a monic polynomial of positive degree");
  const std::size_t e = *g.degree();
  std::vector<Scalar> elem(e + 1);
  for (std::size_t k = 0; k <= e; ++k) {
    const Scalar& c = g.coefficient(e - k);
    elem[k] = (k % 2 == 0) ? c : -c;
  }
  std::vector<Scalar> p(upto + 1);
  p[0] = Scalar(static_cast<long>(e));
  for (std::size_t k = 1; k <= upto; ++k) {
    Scalar acc(0);
    for (std::size_t j = 1; j <= std::min(k - 1, e); ++j) {
      const Scalar t = elem[j] * p[k - j];
      if (j % 2 == 1) {
        acc += t;
      } else {
        acc -= t;
      }
    }
    if (k <= e) {
      const Scalar t = elem[k] * Scalar(static_cast<long>(k));
      if (k % 2 == 1) {
        acc += t;
      } else {
        acc -= t;
      }
    }
    p[k] = std::move(acc);
  }
  return p;
}

// Sum of h(r) over the roots r of g (with multiplicity), without computing roots.
inline Scalar symmetric_eval(const UniPoly& g, const UniPoly& h) {
  if (h.is_zero()) return Scalar(0);
  const auto p = root_power_sums(g, *h.degree());
  Scalar total(0);
  for (std::size_t k = 0; k < h.coefficients().size(); ++k) total += h.coefficients()[k] * p[k];
  return total;
}

}  // namespace pmaps
