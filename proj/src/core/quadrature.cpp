#include "quadrature.hpp"

#include <cmath>
#include <sstream>

#include "errors.hpp"

namespace heatshape {

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
  double gauss = 0.0;
  double kronrod = 0.0;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  Panel p;
  p.gauss = fc * kWg[3];
  p.kronrod = fc * kWgk[7];
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double fsum = f(c - dx) + f(c + dx);
    p.kronrod += kWgk[i] * fsum;
    if (i % 2 == 1) p.gauss += kWg[i / 2] * fsum;
  }
  p.gauss *= h;
  p.kronrod *= h;
  return p;
}

void refine(const std::function<double(double)>& f, double a, double b,
            double tol, int depth, QuadratureResult& acc, double& worst) {
  const Panel p = gk15(f, a, b);
  const double err = std::abs(p.kronrod - p.gauss);
  if (err <= tol || depth <= 0) {
    acc.value += p.kronrod;
    acc.error_estimate += err;
    acc.intervals += 1;
    if (depth <= 0 && err > tol && err > worst) worst = err;
    return;
  }
  const double c = 0.5 * (a + b);
  refine(f, a, c, 0.5 * tol, depth - 1, acc, worst);
  refine(f, c, b, 0.5 * tol, depth - 1, acc, worst);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double abs_tol,
                                    int max_depth) {
  if (a == b) return {};
  double sign = 1.0;
  if (a > b) {
    std::swap(a, b);
    sign = -1.0;
  }
  QuadratureResult acc;
  double worst = 0.0;
  refine(f, a, b, abs_tol, max_depth, acc, worst);
  if (acc.error_estimate > 10.0 * abs_tol + 1e-300 && worst > 0.0) {
    std::ostringstream msg;
    msg << "adaptive quadrature did not converge on [" << a << ", " << b
        << "]: estimated error " << acc.error_estimate << " > target "
        << abs_tol << " after " << acc.intervals
        << " panels (worst panel error " << worst << ")";
    throw NumericError(msg.str());
  }
  acc.value *= sign;
  return acc;
}

}  // namespace heatshape
