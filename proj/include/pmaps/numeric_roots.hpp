#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pmaps/uni_poly.hpp"

// Floating-point roots for display only; every certificate stays exact.
namespace pmaps {

inline std::complex<double> to_complex(const Scalar& c) { return {c.re().get_d(), c.im().get_d()}; }

// Eigenvalues of the companion matrix, sorted by (real, imaginary) part.
inline std::vector<std::complex<double>> approximate_roots(const UniPoly& g) {
  const auto deg = g.degree();
  if (!deg || *deg == 0) return {};
  const UniPoly monic = g.monic();
  const auto n = static_cast<Eigen::Index>(*deg);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) companion(i, n - 1) = -to_complex(monic.coefficient(static_cast<std::size_t>(i)));
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<std::complex<double>> roots;
  for (Eigen::Index i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()(i));
  std::sort(roots.begin(), roots.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return roots;
}

inline std::string format_complex(std::complex<double> z, int digits) {
  const double tiny = 0.5 * std::pow(10.0, -digits);
  double re = std::abs(z.real()) < tiny ? 0.0 : z.real();
  double im = std::abs(z.imag()) < tiny ? 0.0 : z.imag();
  char buf[96];
  if (im == 0.0) {
    std::snprintf(buf, sizeof buf, "%.*g", digits, re);
  } else {
    std::snprintf(buf, sizeof buf, "%.*g%+.*gi", digits, re, digits, im);
  }
  return buf;
}

}  // namespace pmaps
