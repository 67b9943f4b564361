#include "star_domain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "errors.hpp"
#include "quadrature.hpp"

namespace heatshape {

namespace {
constexpr double kPi = std::numbers::pi;

double coeff_norm_sq(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (double v : a) s += v * v;
  for (double v : b) s += v * v;
  return s;
}
}  // namespace

StarDomain StarDomain::disk(double R) {
  if (!(R > 0.0)) throw InvalidArgument("star domain: R must be > 0");
  StarDomain d;
  d.R_ = R;
  return d;
}

StarDomain StarDomain::fourier(double R, std::vector<double> a,
                               std::vector<double> b, bool preserve_area) {
  if (!(R > 0.0)) throw InvalidArgument("star domain: R must be > 0");
  StarDomain d;
  d.R_ = R;
  d.a_ = std::move(a);
  d.b_ = std::move(b);
  d.b_.resize(std::max(d.a_.size(), d.b_.size()), 0.0);
  d.a_.resize(d.b_.size(), 0.0);
  if (preserve_area) {
    d.s_ = 1.0 / std::sqrt(1.0 + 0.5 * coeff_norm_sq(d.a_, d.b_));
    d.volume_preserving_ = true;
  }
  d.validate();
  return d;
}

StarDomain StarDomain::fourier_mode(double R, int k, double amplitude,
                                    bool preserve_area) {
  if (k < 1) throw InvalidArgument("star domain: mode index must be >= 1");
  std::vector<double> a(k, 0.0);
  a[k - 1] = amplitude;
  return fourier(R, std::move(a), {}, preserve_area);
}

StarDomain StarDomain::ellipse(double ax, double ay) {
  if (!(ax > 0.0) || !(ay > 0.0))
    throw InvalidArgument("ellipse: semi-axes must be > 0");
  const double R = std::sqrt(ax * ay);
  // Fourier series of rho(theta) = ax*ay / sqrt(ay^2 cos^2 + ax^2 sin^2);
  // even cosine harmonics only, spectrally convergent.
  const int N = 4096;
  const int kmax = 64;
  std::vector<double> samples(N);
  for (int m = 0; m < N; ++m) {
    const double t = 2.0 * kPi * m / N;
    const double c = std::cos(t), s = std::sin(t);
    samples[m] = ax * ay / std::sqrt(ay * ay * c * c + ax * ax * s * s);
  }
  double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / N;
  std::vector<double> a(kmax, 0.0);
  for (int k = 1; k <= kmax; ++k) {
    double acc = 0.0;
    for (int m = 0; m < N; ++m)
      acc += samples[m] * std::cos(2.0 * kPi * k * m / N);
    a[k - 1] = 2.0 * acc / N / mean;
  }
  while (!a.empty() && std::abs(a.back()) < 1e-16) a.pop_back();

  StarDomain d;
  d.R_ = R;
  d.a_ = std::move(a);
  d.b_.assign(d.a_.size(), 0.0);
  // Scale for the exact target area pi ax ay = pi R^2; this reproduces the
  // sampled mean up to the (machine-level) series truncation.
  d.s_ = 1.0 / std::sqrt(1.0 + 0.5 * coeff_norm_sq(d.a_, d.b_));
  d.volume_preserving_ = true;
  d.validate();
  return d;
}

void StarDomain::validate() const {
  const int samples = 1024;
  for (int i = 0; i < samples; ++i) {
    const double t = 2.0 * kPi * i / samples;
    if (!(radius(t) > 0.0)) {
      std::ostringstream msg;
      msg << "star domain: rho(" << t << ") = " << radius(t)
          << " is not positive (boundary not star-shaped)";
      throw GeometryError(msg.str());
    }
  }
}

double StarDomain::radius(double theta) const {
  double f = 1.0;
  for (size_t k = 0; k < a_.size(); ++k)
    f += a_[k] * std::cos((k + 1) * theta) + b_[k] * std::sin((k + 1) * theta);
  return s_ * R_ * f;
}

double StarDomain::radius_prime(double theta) const {
  double f = 0.0;
  for (size_t k = 0; k < a_.size(); ++k) {
    const double kk = static_cast<double>(k + 1);
    f += kk * (-a_[k] * std::sin(kk * theta) + b_[k] * std::cos(kk * theta));
  }
  return s_ * R_ * f;
}

double StarDomain::radius_second(double theta) const {
  double f = 0.0;
  for (size_t k = 0; k < a_.size(); ++k) {
    const double kk = static_cast<double>(k + 1);
    f -= kk * kk *
         (a_[k] * std::cos(kk * theta) + b_[k] * std::sin(kk * theta));
  }
  return s_ * R_ * f;
}

double StarDomain::curvature(double theta) const {
  const double r = radius(theta);
  const double rp = radius_prime(theta);
  const double rpp = radius_second(theta);
  return (r * r + 2.0 * rp * rp - r * rpp) /
         std::pow(r * r + rp * rp, 1.5);
}

double StarDomain::area() const {
  return kPi * (s_ * R_) * (s_ * R_) * (1.0 + 0.5 * coeff_norm_sq(a_, b_));
}

double StarDomain::area_quadrature() const {
  return integrate(
      [this](double t) {
        const double r = radius(t);
        return 0.5 * r * r;
      },
      0.0, 2.0 * kPi, 1e-12 * std::max(1.0, R_ * R_));
}

bool StarDomain::contains(double x, double y) const {
  const double r = std::hypot(x, y);
  if (r == 0.0) return true;
  return r <= radius(std::atan2(y, x));
}

double StarDomain::max_radius() const {
  double m = 0.0;
  for (int i = 0; i < 1024; ++i)
    m = std::max(m, radius(2.0 * kPi * i / 1024));
  return m;
}

double StarDomain::min_radius() const {
  double m = radius(0.0);
  for (int i = 0; i < 1024; ++i)
    m = std::min(m, radius(2.0 * kPi * i / 1024));
  return m;
}

int StarDomain::mesh_ring_factor() const {
  int L = 6;
  for (size_t k = 0; k < a_.size(); ++k) {
    if (a_[k] == 0.0 && b_[k] == 0.0) continue;
    const int need = 2 * static_cast<int>(k + 1);
    if (L % need != 0) L = need * ((L + need - 1) / need);
    if (L > 24) {  // quality floor: circumferential/radial ratio >= 2*pi/24
      L = 24;
      break;
    }
  }
  return L;
}

}  // namespace heatshape
