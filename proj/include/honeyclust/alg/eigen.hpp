// SPDX-License-Identifier: Apache-2.0

#ifndef HONEYCLUST_ALG_EIGEN_HPP
#define HONEYCLUST_ALG_EIGEN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "honeyclust/core/errors.hpp"

namespace honeyclust::alg {

/// Dense symmetric matrix stored row-major.
class SymMatrix {
public:
  explicit SymMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}
  std::size_t size() const { return n_; }
  double& at(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

private:
  std::size_t n_;
  std::vector<double> a_;
};

struct EigenDecomposition {
  std::vector<double> values;              // ascending
  std::vector<std::vector<double>> vectors;  // vectors[k] is the k-th eigenvector
};

/// Cyclic Jacobi eigensolver for dense symmetric matrices. Plenty for the
/// graph sizes seen here (a few thousand nodes at the very most); converges to
/// machine precision, which the eigengap logic depends on.
inline EigenDecomposition jacobi_eigen_sym(SymMatrix a, int max_sweeps = 128) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;  // v[i] is row i of V; columns are eigenvectors

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a.at(i, j) * a.at(i, j);
    return std::sqrt(2.0 * s);
  };

  const double tol = 1e-14 * std::max(1.0, off_norm());
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (off_norm() <= tol) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a.at(p, q);
        if (std::abs(apq) < 1e-300) continue;
        const double app = a.at(p, p), aqq = a.at(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a.at(k, p), akq = a.at(k, q);
          a.at(k, p) = c * akp - s * akq;
          a.at(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a.at(p, k), aqk = a.at(q, k);
          a.at(p, k) = c * apk - s * aqk;
          a.at(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
    if (a.at(x, x) != a.at(y, y)) return a.at(x, x) < a.at(y, y);
    return x < y;
  });

  EigenDecomposition out;
  out.values.resize(n);
  out.vectors.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a.at(idx[k], idx[k]);
    for (std::size_t i = 0; i < n; ++i) out.vectors[k][i] = v[i][idx[k]];
    // Deterministic sign: first significant component positive.
    for (std::size_t i = 0; i < n; ++i) {
      if (std::abs(out.vectors[k][i]) > 1e-12) {
        if (out.vectors[k][i] < 0)
          for (auto& x : out.vectors[k]) x = -x;
        break;
      }
    }
  }
  return out;
}

}  // namespace honeyclust::alg

#endif  // HONEYCLUST_ALG_EIGEN_HPP
