// Copyright 2026 The kg-hierarchy Authors
// SPDX-License-Identifier: Apache-2.0

#include "kgh/banded.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kgh/errors.hpp"

namespace kgh {

namespace {

void check_info(lapack_int info, const char* routine) {
  if (info == 0) return;
  std::ostringstream os;
  os << routine << " failed with info = " << info;
  throw Error(ErrorCode::NonConvergence, os.str());
}

}  // namespace

SymmetricBand::SymmetricBand(std::size_t n, std::size_t kd) : n_(n), kd_(kd) {
  if (n == 0 || kd >= n) throw Error(ErrorCode::InvalidParams, "band matrix needs kd < n");
  diag_.reserve(kd + 1);
  for (std::size_t d = 0; d <= kd; ++d) diag_.emplace_back(n - d, 0.0);
}

double SymmetricBand::operator()(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  const std::size_t d = j - i;
  return d > kd_ ? 0.0 : diag_[d][i];
}

std::vector<double> SymmetricBand::upper_storage() const {
  const std::size_t ld = kd_ + 1;
  std::vector<double> ab(ld * n_, 0.0);
  for (std::size_t d = 0; d <= kd_; ++d)
    for (std::size_t i = 0; i + d < n_; ++i) ab[(kd_ - d) + (i + d) * ld] = diag_[d][i];
  return ab;
}

std::vector<double> SymmetricBand::lowest_eigenvalues(std::size_t count) const {
  if (count == 0) return {};
  count = std::min(count, n_);
  auto ab = upper_storage();
  const auto n = static_cast<lapack_int>(n_);
  const auto kd = static_cast<lapack_int>(kd_);
  double qdummy = 0.0;
  double zdummy = 0.0;
  lapack_int found = 0;
  std::vector<double> w(n_);
  std::vector<lapack_int> ifail(n_);
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_dsbevx(LAPACK_COL_MAJOR, 'N', 'I', 'U', n, kd, ab.data(), kd + 1,
                                         &qdummy, 1, 0.0, 0.0, 1, static_cast<lapack_int>(count),
                                         abstol, &found, w.data(), &zdummy, 1, ifail.data());
  check_info(info, "dsbevx");
  w.resize(static_cast<std::size_t>(found));
  return w;
}

std::pair<double, double> SymmetricBand::gershgorin() const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n_; ++i) {
    double r = 0.0;
    for (std::size_t d = 1; d <= kd_; ++d) {
      if (i + d < n_) r += std::abs(diag_[d][i]);
      if (i >= d) r += std::abs(diag_[d][i - d]);
    }
    lo = std::min(lo, diag_[0][i] - r);
    hi = std::max(hi, diag_[0][i] + r);
  }
  return {lo, hi};
}

std::size_t SymmetricBand::count_below(double sigma) const {
  // L is unit lower triangular with bandwidth kd; l[d][j] = L(j + d, j).
  // Row i of L only couples to the kd previous columns, so a rolling window
  // of kd rows suffices, but full storage keeps the indexing plain.
  std::vector<std::vector<double>> l(kd_ + 1);
  for (std::size_t d = 1; d <= kd_; ++d) l[d].assign(n_ - d, 0.0);
  std::vector<double> D(n_);
  const double tiny = std::numeric_limits<double>::epsilon() *
                      std::max(1.0, std::abs(sigma) + std::abs(diag_[0][0]));
  std::size_t negative = 0;
  for (std::size_t j = 0; j < n_; ++j) {
    double dj = diag_[0][j] - sigma;
    for (std::size_t m = j >= kd_ ? j - kd_ : 0; m < j; ++m) {
      const double ljm = l[j - m][m];
      dj -= ljm * ljm * D[m];
    }
    if (dj == 0.0) dj = -tiny;
    D[j] = dj;
    if (dj < 0.0) ++negative;
    for (std::size_t i = j + 1; i <= std::min(n_ - 1, j + kd_); ++i) {
      double a = diag_[i - j][j];
      for (std::size_t m = i >= kd_ ? i - kd_ : 0; m < j; ++m) a -= l[i - m][m] * l[j - m][m] * D[m];
      l[i - j][j] = a / dj;
    }
  }
  return negative;
}

double SymmetricBand::eigenvalue(std::size_t k) const {
  if (k >= n_) throw Error(ErrorCode::InvalidParams, "eigenvalue index out of range");
  auto [lo, hi] = gershgorin();
  const double span = std::max(std::abs(lo), std::abs(hi));
  lo -= 1e-12 * span;
  hi += 1e-12 * span;
  // Invariant: count_below(lo) <= k < count_below(hi).
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi)))
      break;
    if (count_below(mid) > k) hi = mid;
    else lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> SymmetricBand::eigenvector(std::size_t k) const {
  const double lam = eigenvalue(k);
  const double shift = lam - 1e-10 * std::max(1.0, std::abs(lam));

  // General band storage of A - shift I for dgbtrf: kl = ku = kd, with kl
  // extra rows for fill-in.
  const std::size_t kl = kd_, ku = kd_;
  const std::size_t ld = 2 * kl + ku + 1;
  std::vector<double> ab(ld * n_, 0.0);
  for (std::size_t j = 0; j < n_; ++j) {
    const std::size_t lo = j >= ku ? j - ku : 0;
    const std::size_t hi = std::min(n_ - 1, j + kl);
    for (std::size_t i = lo; i <= hi; ++i) {
      double a = (*this)(i, j);
      if (i == j) a -= shift;
      ab[(kl + ku + i - j) + j * ld] = a;
    }
  }
  std::vector<lapack_int> ipiv(n_);
  const auto n = static_cast<lapack_int>(n_);
  check_info(LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, static_cast<lapack_int>(kl),
                            static_cast<lapack_int>(ku), ab.data(), static_cast<lapack_int>(ld),
                            ipiv.data()),
             "dgbtrf");

  std::vector<double> x(n_);
  for (std::size_t i = 0; i < n_; ++i) x[i] = 1.0 + 1e-3 * std::sin(0.37 * static_cast<double>(i));
  for (int it = 0; it < 4; ++it) {
    check_info(LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, static_cast<lapack_int>(kl),
                              static_cast<lapack_int>(ku), 1, ab.data(),
                              static_cast<lapack_int>(ld), ipiv.data(), x.data(), n),
               "dgbtrs");
    double norm = 0.0;
    for (double v : x) norm += v * v;
    norm = std::sqrt(norm);
    for (double& v : x) v /= norm;
  }
  const auto peak = std::max_element(x.begin(), x.end(),
                                     [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*peak < 0.0)
    for (double& v : x) v = -v;
  return x;
}

std::vector<double> SymmetricBand::multiply(std::span<const double> x) const {
  if (x.size() != n_) throw Error(ErrorCode::InvalidParams, "dimension mismatch");
  std::vector<double> y(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i) {
    y[i] += diag_[0][i] * x[i];
    for (std::size_t d = 1; d <= kd_ && i + d < n_; ++d) {
      y[i] += diag_[d][i] * x[i + d];
      y[i + d] += diag_[d][i] * x[i];
    }
  }
  return y;
}

}  // namespace kgh
