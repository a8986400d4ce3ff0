#pragma once

#include <gmpxx.h>

#include <compare>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "pmaps/errors.hpp"

namespace pmaps {

// Exact element of Q(i): re + im*i with canonical GMP rationals.
class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(mpq_class re) : re_(std::move(re)) {}  // NOLINT
  GaussianRational(mpq_class re, mpq_class im) : re_(std::move(re)), im_(std::move(im)) {}

  static GaussianRational imaginary_unit() { return {mpq_class(0), mpq_class(1)}; }

  // Parses "a" or "a/b" with optional leading sign; throws Error on malformed input.
  static GaussianRational parse_rational(std::string_view text) {
    mpq_class q;
    if (text.empty() || q.set_str(std::string(text), 10) != 0) {
      throw Error("malformed rational '" + std::string(text) + "'");
    }
    if (q.get_den() == 0) throw Error("zero denominator in '" + std::string(text) + "'");
    q.canonicalize();
    return GaussianRational(std::move(q));
  }

  static GaussianRational fraction(long num, long den) {
    if (den == 0) throw PreconditionError("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return GaussianRational(std::move(q));
  }

  const mpq_class& re() const noexcept { return re_; }
  const mpq_class& im() const noexcept { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }
  bool is_one() const { return sgn(im_) == 0 && re_ == 1; }

  GaussianRational conj() const { return {re_, -im_}; }
  mpq_class norm() const { return re_ * re_ + im_ * im_; }

  GaussianRational operator-() const { return {-re_, -im_}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re_ += o.re_;
    if (sgn(o.im_) != 0) im_ += o.im_;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re_ -= o.re_;
    if (sgn(o.im_) != 0) im_ -= o.im_;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    if (is_real() && o.is_real()) {
      re_ *= o.re_;
      return *this;
    }
    mpq_class r = re_ * o.re_ - im_ * o.im_;
    mpq_class i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    if (o.is_zero()) throw PreconditionError("division by zero");
    if (o.is_real()) {
      re_ /= o.re_;
      if (sgn(im_) != 0) im_ /= o.re_;
      return *this;
    }
    const mpq_class n = o.norm();
    *this *= o.conj();
    re_ /= n;
    im_ /= n;
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // Total order (real part first) used only for canonical containers.
  friend bool canonical_less(const GaussianRational& a, const GaussianRational& b) {
    const int c = cmp(a.re_, b.re_);
    if (c != 0) return c < 0;
    return cmp(a.im_, b.im_) < 0;
  }

  GaussianRational pow(unsigned k) const {
    GaussianRational result(1);
    GaussianRational base = *this;
    while (k != 0) {
      if (k & 1U) result *= base;
      k >>= 1U;
      if (k != 0) base *= base;
    }
    return result;
  }

  // Canonical text: "3/2", "-i", "1/2*i", "(1 + 2*i)", "(1/3 - i)".
  std::string to_string() const {
    if (is_real()) return re_.get_str();
    if (sgn(re_) == 0) return imaginary_text(im_);
    std::string out = "(" + re_.get_str();
    if (sgn(im_) < 0) {
      out += " - " + imaginary_text(-im_);
    } else {
      out += " + " + imaginary_text(im_);
    }
    return out + ")";
  }

  friend std::ostream& operator<<(std::ostream& os, const GaussianRational& c) {
    return os << c.to_string();
  }

 private:
  static std::string imaginary_text(const mpq_class& v) {
    if (v == 1) return "i";
    if (v == -1) return "-i";
    return v.get_str() + "*i";
  }

  mpq_class re_{0};
  mpq_class im_{0};
};

using Scalar = GaussianRational;

inline GaussianRational factorial(unsigned k) {
  mpz_class f = 1;
  for (unsigned j = 2; j <= k; ++j) f *= j;
  return GaussianRational(mpq_class(f));
}

}  // namespace pmaps
