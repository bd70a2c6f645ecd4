// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace kgh {

/// Real symmetric band matrix with kd super-diagonals, stored by diagonals:
/// band(d, i) = A(i, i + d).
class SymmetricBand {
 public:
  SymmetricBand(std::size_t n, std::size_t kd);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] std::size_t bandwidth() const noexcept { return kd_; }

  double& band(std::size_t d, std::size_t i) { return diag_[d][i]; }
  [[nodiscard]] double band(std::size_t d, std::size_t i) const { return diag_[d][i]; }

  /// A(i, j) with symmetry; zero outside the band.
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const;

  /// Number of eigenvalues below sigma, from the signs of the pivots of an
  /// unpivoted band LDL^T of A - sigma I (Sylvester inertia).
  [[nodiscard]] std::size_t count_below(double sigma) const;
  /// The k-th lowest eigenvalue (k = 0 is the smallest), by bisection on
  /// count_below. O(n kd^2) per step.
  [[nodiscard]] double eigenvalue(std::size_t k) const;
  /// The lowest `count` eigenvalues, ascending (LAPACK dsbevx).
  [[nodiscard]] std::vector<double> lowest_eigenvalues(std::size_t count) const;
  /// Unit eigenvector of the k-th lowest eigenvalue by shifted inverse
  /// iteration. Sign fixed so that the largest component is positive.
  [[nodiscard]] std::vector<double> eigenvector(std::size_t k) const;

  [[nodiscard]] std::vector<double> multiply(std::span<const double> x) const;

 private:
  std::vector<double> upper_storage() const;
  [[nodiscard]] std::pair<double, double> gershgorin() const;

  std::size_t n_;
  std::size_t kd_;
  std::vector<std::vector<double>> diag_;
};

}  // namespace kgh
