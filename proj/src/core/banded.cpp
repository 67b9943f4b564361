#include "banded.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace heatshape {

BandedSpd::BandedSpd(int n, int bandwidth)
    : n_(n), bw_(bandwidth), band_(static_cast<size_t>(n) * (bandwidth + 1), 0.0) {}

void BandedSpd::add(int i, int j, double v) {
  if (i < j) std::swap(i, j);
  band_[static_cast<size_t>(j) * (bw_ + 1) + (i - j)] += v;
}

double BandedSpd::get(int i, int j) const {
  if (i < j) std::swap(i, j);
  if (i - j > bw_) return 0.0;
  return band_[static_cast<size_t>(j) * (bw_ + 1) + (i - j)];
}

void BandedSpd::set_identity_row(int i) {
  for (int d = 1; d <= bw_; ++d) {
    if (i + d < n_) band_[static_cast<size_t>(i) * (bw_ + 1) + d] = 0.0;
    if (i - d >= 0) band_[static_cast<size_t>(i - d) * (bw_ + 1) + d] = 0.0;
  }
  band_[static_cast<size_t>(i) * (bw_ + 1)] = 1.0;
}

void BandedSpd::factorize() {
  for (int j = 0; j < n_; ++j) {
    double* colj = &band_[static_cast<size_t>(j) * (bw_ + 1)];
    for (int k = std::max(0, j - bw_); k < j; ++k) {
      const double ljk = band_[static_cast<size_t>(k) * (bw_ + 1) + (j - k)];
      const int dmax = std::min(bw_ - (j - k), n_ - 1 - j);
      const double* colk = &band_[static_cast<size_t>(k) * (bw_ + 1) + (j - k)];
      for (int d = 0; d <= dmax; ++d) colj[d] -= ljk * colk[d];
    }
    if (!(colj[0] > 0.0)) {
      std::ostringstream msg;
      msg << "banded Cholesky: nonpositive pivot " << colj[0] << " at column "
          << j << " of " << n_;
      throw NumericError(msg.str());
    }
    const double inv = 1.0 / std::sqrt(colj[0]);
    const int dmax = std::min(bw_, n_ - 1 - j);
    for (int d = 0; d <= dmax; ++d) colj[d] *= inv;
  }
  factored_ = true;
}

void BandedSpd::solve(std::vector<double>& rhs) const {
  // Forward: L y = rhs.
  for (int j = 0; j < n_; ++j) {
    const double* colj = &band_[static_cast<size_t>(j) * (bw_ + 1)];
    rhs[j] /= colj[0];
    const int dmax = std::min(bw_, n_ - 1 - j);
    for (int d = 1; d <= dmax; ++d) rhs[j + d] -= colj[d] * rhs[j];
  }
  // Backward: L^T x = y.
  for (int j = n_ - 1; j >= 0; --j) {
    const double* colj = &band_[static_cast<size_t>(j) * (bw_ + 1)];
    const int dmax = std::min(bw_, n_ - 1 - j);
    double acc = rhs[j];
    for (int d = 1; d <= dmax; ++d) acc -= colj[d] * rhs[j + d];
    rhs[j] = acc / colj[0];
  }
}

std::vector<double> BandedSpd::multiply(const std::vector<double>& x) const {
  std::vector<double> y(n_, 0.0);
  for (int j = 0; j < n_; ++j) {
    const double* colj = &band_[static_cast<size_t>(j) * (bw_ + 1)];
    y[j] += colj[0] * x[j];
    const int dmax = std::min(bw_, n_ - 1 - j);
    for (int d = 1; d <= dmax; ++d) {
      y[j + d] += colj[d] * x[j];
      y[j] += colj[d] * x[j + d];
    }
  }
  return y;
}

}  // namespace heatshape
