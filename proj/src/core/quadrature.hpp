#ifndef HEATSHAPE_QUADRATURE_HPP
#define HEATSHAPE_QUADRATURE_HPP

#include <functional>

namespace heatshape {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;  // leaf intervals used
};

// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b] with an
// absolute error target. Intervals are bisected until the local Kronrod
// error estimate fits the local share of abs_tol; throws NumericError with
// diagnostics when max_depth levels of bisection do not suffice.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    double abs_tol = 1e-12,
                                    int max_depth = 48);

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double abs_tol = 1e-12) {
  return integrate_adaptive(f, a, b, abs_tol).value;
}

}  // namespace heatshape

#endif
