#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmaps/errors.hpp"
#include "pmaps/gaussian_rational.hpp"
#include "pmaps/multi_poly.hpp"

namespace pmaps {

// Dense row-major matrix over a commutative ring. Elements of rings that need
// a context (MultiPoly) are seeded from the `zero` value passed at construction.
template <typename T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& zero = T{})
      : rows_(rows), cols_(cols), data_(rows * cols, zero) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<T>& data() const noexcept { return data_; }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  Matrix& operator+=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    require_same_shape(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  template <typename S>
  Matrix& scale(const S& s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw PreconditionError("matrix product dimension mismatch");
    const T zero = a.data_.empty() ? T{} : a.data_.front() - a.data_.front();
    Matrix r(a.rows_, b.cols_, zero);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (is_zero_element(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          if (is_zero_element(b(k, j))) continue;
          r(i, j) += aik * b(k, j);
        }
      }
    }
    return r;
  }

  Matrix transposed() const {
    Matrix r(cols_, rows_, data_.empty() ? T{} : data_.front());
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    }
    return r;
  }

  bool is_zero() const {
    for (const auto& x : data_) {
      if (!is_zero_element(x)) return false;
    }
    return true;
  }

  static bool is_zero_element(const T& x) { return x.is_zero(); }

 private:
  void require_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw PreconditionError("matrix shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using ScalarMatrix = Matrix<Scalar>;
using PolyMatrix = Matrix<MultiPoly>;

inline ScalarMatrix identity_matrix(std::size_t n) {
  ScalarMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
  return m;
}

template <typename T>
T ring_one_like(const T& sample);

template <>
inline Scalar ring_one_like(const Scalar&) {
  return Scalar(1);
}

template <>
inline MultiPoly ring_one_like(const MultiPoly& sample) {
  return MultiPoly(sample.context(), Scalar(1));
}

template <typename T>
T ring_zero_like(const T& sample) {
  return sample - sample;
}

// Determinant by Laplace expansion with memoized column-subset minors: division
// free, deterministic, and cheap on the sparse matrices met here (n <= 6).
// Row r of the expansion combines the r x r minors on the first r rows.
template <typename T>
T minor_expansion_determinant(const Matrix<T>& a, const T& one) {
  if (!a.is_square()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return one;
  if (n > 20) throw ResourceError("matrix too large for minor expansion");
  const T zero = ring_zero_like(one);
  const std::size_t full = std::size_t{1} << n;
  std::vector<std::optional<T>> current(full);
  current[0] = one;
  for (std::size_t row = 0; row < n; ++row) {
    std::vector<std::optional<T>> next(full);
    for (std::size_t mask = 0; mask < full; ++mask) {
      if (static_cast<std::size_t>(__builtin_popcountll(mask)) != row + 1) continue;
      T acc = zero;
      std::size_t position = 0;
      for (std::size_t col = 0; col < n; ++col) {
        if (!(mask & (std::size_t{1} << col))) continue;
        const T& entry = a(row, col);
        const auto& sub = current[mask & ~(std::size_t{1} << col)];
        if (!Matrix<T>::is_zero_element(entry) && sub && !Matrix<T>::is_zero_element(*sub)) {
          // Sign of the (row, position) cofactor within the selected columns.
          if ((row + position) % 2 == 0) {
            acc += entry * *sub;
          } else {
            acc -= entry * *sub;
          }
        }
        ++position;
      }
      next[mask] = std::move(acc);
    }
    current = std::move(next);
  }
  return *current[full - 1];
}

inline MultiPoly determinant(const PolyMatrix& a) {
  if (a.rows() == 0) throw PreconditionError("determinant of an empty matrix");
  return minor_expansion_determinant(a, ring_one_like(a(0, 0)));
}

// Fraction-free Bareiss elimination over Q(i).
inline Scalar determinant(const ScalarMatrix& a) {
  if (!a.is_square()) throw PreconditionError("determinant of a non-square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return Scalar(1);
  ScalarMatrix m = a;
  Scalar prev(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      std::size_t swap = k + 1;
      while (swap < n && m(swap, k).is_zero()) ++swap;
      if (swap == n) return Scalar(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(swap, j));
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      }
      m(i, k) = Scalar(0);
    }
    prev = m(k, k);
  }
  return negate ? -m(n - 1, n - 1) : m(n - 1, n - 1);
}

// Inverse over Q(i); nullopt when singular.
inline std::optional<ScalarMatrix> inverse(const ScalarMatrix& a) {
  if (!a.is_square()) throw PreconditionError("inverse of a non-square matrix");
  const std::size_t n = a.rows();
  ScalarMatrix m = a;
  ScalarMatrix inv = identity_matrix(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col).is_zero()) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(col, j), m(pivot, j));
        std::swap(inv(col, j), inv(pivot, j));
      }
    }
    const Scalar scale = Scalar(1) / m(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      m(col, j) *= scale;
      inv(col, j) *= scale;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m(i, col).is_zero()) continue;
      const Scalar f = m(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(col, j);
        inv(i, j) -= f * inv(col, j);
      }
    }
  }
  return inv;
}

// One solution x of a*x = b (free variables set to zero), or nullopt when the
// system is inconsistent.
inline std::optional<std::vector<Scalar>> solve_linear(const ScalarMatrix& a, const std::vector<Scalar>& b) {
  if (b.size() != a.rows()) throw PreconditionError("right-hand side has wrong length");
  const std::size_t rows = a.rows();
  const std::size_t cols = a.cols();
  ScalarMatrix m(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = a(i, j);
    m(i, cols) = b[i];
  }
  std::vector<std::size_t> pivot_cols;
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t p = r;
    while (p < rows && m(p, col).is_zero()) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j <= cols; ++j) std::swap(m(r, j), m(p, j));
    }
    const Scalar scale = Scalar(1) / m(r, col);
    for (std::size_t j = col; j <= cols; ++j) m(r, j) *= scale;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m(i, col).is_zero()) continue;
      const Scalar f = m(i, col);
      for (std::size_t j = col; j <= cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivot_cols.push_back(col);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i) {
    if (!m(i, cols).is_zero()) return std::nullopt;
  }
  std::vector<Scalar> x(cols);
  for (std::size_t i = 0; i < pivot_cols.size(); ++i) x[pivot_cols[i]] = m(i, cols);
  return x;
}

template <typename T>
T trace(const Matrix<T>& a) {
  if (!a.is_square() || a.rows() == 0) throw PreconditionError("trace of a non-square matrix");
  T t = a(0, 0);
  for (std::size_t i = 1; i < a.rows(); ++i) t += a(i, i);
  return t;
}

template <typename T>
Matrix<T> matrix_power(const Matrix<T>& a, unsigned k) {
  if (!a.is_square()) throw PreconditionError("power of a non-square matrix");
  if (k == 0) throw PreconditionError("zeroth matrix power is not supported");
  Matrix<T> r = a;
  for (unsigned j = 1; j < k; ++j) r = r * a;
  return r;
}

// Sum of the principal minors of size k, by enumerating index subsets.
inline MultiPoly principal_minor_sum(const PolyMatrix& a, std::size_t k) {
  if (!a.is_square() || a.rows() == 0) throw PreconditionError("principal minors of a non-square matrix");
  const std::size_t n = a.rows();
  if (k == 0 || k > n) throw PreconditionError("principal minor size out of range");
  MultiPoly total(a(0, 0).context());
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) idx.push_back(i);
    }
    PolyMatrix sub(k, k, MultiPoly(a(0, 0).context()));
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) sub(i, j) = a(idx[i], idx[j]);
    }
    total += determinant(sub);
  }
  return total;
}

// Scalar matrix lifted to constant polynomials over ctx.
inline PolyMatrix lift(const ScalarMatrix& a, const ContextPtr& ctx) {
  PolyMatrix r(a.rows(), a.cols(), MultiPoly(ctx));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = MultiPoly(ctx, a(i, j));
  }
  return r;
}

inline std::vector<Scalar> mat_vec(const ScalarMatrix& a, const std::vector<Scalar>& v) {
  if (a.cols() != v.size()) throw PreconditionError("matrix-vector dimension mismatch");
  std::vector<Scalar> r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!a(i, j).is_zero() && !v[j].is_zero()) r[i] += a(i, j) * v[j];
    }
  }
  return r;
}

}  // namespace pmaps
