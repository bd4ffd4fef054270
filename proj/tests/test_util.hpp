#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "pqoselm/pqoselm.hpp"

namespace pqtest {

inline double rel_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const double scale = std::max(b.norm(), 1e-300);
  return (a - b).norm() / scale;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Least-squares oracle via SVD, independent of the normal equations.
inline Eigen::MatrixXd lstsq(const Eigen::MatrixXd& H, const Eigen::MatrixXd& T) {
  return H.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(T);
}

inline Eigen::MatrixXd random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  pqoselm::Rng rng(seed);
  Eigen::MatrixXd M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = rng.closed(-1.0, 1.0);
  return M;
}

inline std::vector<int> random_labels(std::size_t n, int m, std::uint64_t seed) {
  pqoselm::Rng rng(seed);
  std::vector<int> y(n);
  for (auto& v : y) v = static_cast<int>(rng.integer(0, m - 1));
  return y;
}

inline std::vector<double> sine(double freq_hz, double phase = 0.0, std::size_t n = 2560, double fs = 12800.0) {
  std::vector<double> y(n);
  for (std::size_t k = 0; k < n; ++k)
    y[k] = std::sin(2.0 * std::numbers::pi * freq_hz * static_cast<double>(k) / fs + phase);
  return y;
}

inline double energy(const std::vector<double>& v) {
  double e = 0.0;
  for (double x : v) e += x * x;
  return e;
}

}  // namespace pqtest
