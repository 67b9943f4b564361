#ifndef HEATSHAPE_TEST_UTIL_HPP
#define HEATSHAPE_TEST_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>

#include "core/radial_source.hpp"

namespace testutil {

inline constexpr double kPi = std::numbers::pi;

// Deterministic test RNG (splitmix64), independent of <random>.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next_u64() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int pick(int n) { return static_cast<int>(next_u64() % n); }
};

// Composite Simpson rule; the independent quadrature oracle for the tests
// (the library itself uses adaptive Gauss-Kronrod).
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels = 4096) {
  const double h = (b - a) / (2 * panels);
  double acc = f(a) + f(b);
  for (int i = 1; i < 2 * panels; ++i)
    acc += f(a + i * h) * ((i % 2) ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// fbar oracle: (n / R^n) * int_0^R f s^(n-1) ds by Simpson.
inline double fbar_oracle(const heatshape::RadialSource& src, double R) {
  const int n = src.dim();
  const double integral = simpson(
      [&](double s) { return src.value(s) * std::pow(s, n - 1); }, 0.0, R);
  return n / std::pow(R, n) * integral;
}

// Closed form for the 2-d gaussian mean over B_R.
inline double gaussian_fbar_2d(double delta, double R) {
  return (1.0 - std::exp(-kPi * R * R / (delta * delta))) / (kPi * R * R);
}

// Random radially decreasing source with matching dimension.
inline heatshape::RadialSource random_decreasing_source(Rng& rng, int n,
                                                        double rmax) {
  switch (rng.pick(3)) {
    case 0: {
      // delta small enough to vary but large enough to avoid flushing
      const double delta = rng.uniform(0.2, 1.5);
      return heatshape::RadialSource::gaussian(delta, n);
    }
    case 1: {
      const double c0 = rng.uniform(0.5, 2.0);
      const double c1 = -rng.uniform(0.0, 0.9) * c0 / (rmax * rmax);
      return heatshape::RadialSource::polynomial({c0, c1}, rmax, n);
    }
    default:
      return heatshape::RadialSource::constant(rng.uniform(0.5, 2.0), n);
  }
}

}  // namespace testutil

#endif
