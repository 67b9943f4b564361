#include "radial_source.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "errors.hpp"
#include "quadrature.hpp"

namespace heatshape {

namespace {

constexpr double kPi = std::numbers::pi;
const double kLogMinNormal = std::log(DBL_MIN);

double poly_eval(const std::vector<double>& c, double s) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double poly_eval_deriv(const std::vector<double>& c, double s) {
  double acc = 0.0;
  for (size_t j = c.size(); j-- > 1;)
    acc = acc * s + static_cast<double>(j) * c[j];
  return acc;
}

// Fritsch-Carlson monotone cubic slopes.
std::vector<double> pchip_slopes(const std::vector<double>& x,
                                 const std::vector<double>& y) {
  const size_t n = x.size();
  std::vector<double> h(n - 1), d(n - 1), m(n, 0.0);
  for (size_t i = 0; i + 1 < n; ++i) {
    h[i] = x[i + 1] - x[i];
    d[i] = (y[i + 1] - y[i]) / h[i];
  }
  if (n == 2) {
    m[0] = m[1] = d[0];
    return m;
  }
  for (size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] * d[i] <= 0.0) {
      m[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      m[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
    }
  }
  // One-sided endpoint formulas with monotonicity clamps.
  auto endpoint = [](double h0, double h1, double d0, double d1) {
    double m0 = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if (m0 * d0 <= 0.0)
      m0 = 0.0;
    else if (d0 * d1 <= 0.0 && std::abs(m0) > 3.0 * std::abs(d0))
      m0 = 3.0 * d0;
    return m0;
  };
  m[0] = endpoint(h[0], h[1], d[0], d[1]);
  m[n - 1] = endpoint(h[n - 2], h[n - 3], d[n - 2], d[n - 3]);
  return m;
}

}  // namespace

RadialSource RadialSource::constant(double value, int dim, double floor) {
  RadialSource s;
  s.kind_ = SourceKind::Constant;
  s.dim_ = dim;
  s.floor_ = floor;
  s.impl_ = Constant{value};
  s.validate();
  return s;
}

RadialSource RadialSource::gaussian(double delta, int dim, double floor) {
  if (!(delta > 0.0)) throw InvalidArgument("gaussian source: delta must be > 0");
  RadialSource s;
  s.kind_ = SourceKind::Gaussian;
  s.dim_ = dim;
  s.floor_ = floor;
  s.impl_ = Gaussian{delta};
  s.validate();
  return s;
}

RadialSource RadialSource::polynomial(std::vector<double> coeffs, double rmax,
                                      int dim, double floor) {
  if (coeffs.empty()) throw InvalidArgument("polynomial source: empty coefficients");
  if (!(rmax > 0.0)) throw InvalidArgument("polynomial source: rmax must be > 0");
  RadialSource s;
  s.kind_ = SourceKind::Polynomial;
  s.dim_ = dim;
  s.floor_ = floor;
  s.impl_ = Polynomial{std::move(coeffs), rmax};
  s.validate();
  return s;
}

RadialSource RadialSource::tabulated(std::vector<double> radii,
                                     std::vector<double> values, int dim,
                                     double floor) {
  if (radii.size() != values.size() || radii.size() < 2)
    throw InvalidArgument("tabulated source: need >= 2 matching samples");
  for (size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] < radii[i + 1]))
      throw InvalidArgument("tabulated source: radii must be strictly increasing");
  if (radii.front() != 0.0)
    throw InvalidArgument("tabulated source: table must start at r = 0");
  RadialSource s;
  s.kind_ = SourceKind::Tabulated;
  s.dim_ = dim;
  s.floor_ = floor;
  Tabulated t;
  t.slope = pchip_slopes(radii, values);
  t.r = std::move(radii);
  t.v = std::move(values);
  s.impl_ = std::move(t);
  s.validate();
  return s;
}

void RadialSource::validate() {
  if (dim_ < 2) throw InvalidArgument("source dimension must be >= 2");
  if (floor_ < 0.0) throw InvalidArgument("positivity floor must be >= 0");
  const double w = std::isfinite(max_radius())
                       ? max_radius()
                       : (kind_ == SourceKind::Gaussian
                              ? 10.0 * std::get<Gaussian>(impl_).delta
                              : 1.0);
  const int samples = 257;
  bool decreasing = true;
  double scale = 0.0;
  for (int i = 0; i < samples; ++i) scale = std::max(scale, std::abs(value(w * i / (samples - 1))));
  for (int i = 0; i < samples; ++i) {
    const double r = w * i / (samples - 1);
    const double f = value(r);
    if (!(f > floor_) && !flushes_at(r)) {
      std::ostringstream msg;
      msg << describe() << ": f(" << r << ") = " << f
          << " is not above the positivity floor " << floor_;
      throw InvalidArgument(msg.str());
    }
    if (radial_derivative(r) > 1e-12 * std::max(1.0, scale)) decreasing = false;
  }
  decreasing_ = decreasing;
  if (kind_ == SourceKind::Gaussian) {
    // Unit total mass over R^n, checked by quadrature against 1 to 1e-8.
    const double delta = std::get<Gaussian>(impl_).delta;
    const double n = dim_;
    const double sphere_area = 2.0 * std::pow(kPi, n / 2.0) / std::tgamma(n / 2.0);
    const double cut = delta * std::sqrt(745.0 / kPi);  // exp underflows beyond
    const double mass =
        sphere_area *
        integrate([&](double s) { return value(s) * std::pow(s, dim_ - 1); }, 0.0,
                  cut, 1e-14);
    if (std::abs(mass - 1.0) > 1e-8) {
      std::ostringstream msg;
      msg << "gaussian source mass " << mass << " differs from 1 by more than 1e-8";
      throw NumericError(msg.str());
    }
  }
}

double RadialSource::value(double r) const {
  if (r < 0.0) throw RangeError("source value: radius must be >= 0");
  switch (kind_) {
    case SourceKind::Constant:
      return std::get<Constant>(impl_).c;
    case SourceKind::Gaussian: {
      const auto& g = std::get<Gaussian>(impl_);
      const double lf = -dim_ * std::log(g.delta) - kPi * r * r / (g.delta * g.delta);
      if (lf < kLogMinNormal) return 0.0;  // flush-to-zero policy
      return std::exp(lf);
    }
    case SourceKind::Polynomial:
      return poly_eval(std::get<Polynomial>(impl_).coeffs, r * r);
    case SourceKind::Tabulated: {
      const auto& t = std::get<Tabulated>(impl_);
      if (r > t.r.back() * (1.0 + 1e-14)) {
        std::ostringstream msg;
        msg << "tabulated source: r = " << r << " outside table range [0, "
            << t.r.back() << "]";
        throw RangeError(msg.str());
      }
      const double rc = std::min(r, t.r.back());
      const auto it = std::upper_bound(t.r.begin(), t.r.end(), rc);
      const size_t i = std::min(t.r.size() - 2,
                                static_cast<size_t>(std::max<std::ptrdiff_t>(
                                    0, it - t.r.begin() - 1)));
      const double h = t.r[i + 1] - t.r[i];
      const double u = (rc - t.r[i]) / h;
      const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
      const double h10 = u * (1 - u) * (1 - u);
      const double h01 = u * u * (3 - 2 * u);
      const double h11 = u * u * (u - 1);
      return h00 * t.v[i] + h10 * h * t.slope[i] + h01 * t.v[i + 1] +
             h11 * h * t.slope[i + 1];
    }
  }
  return 0.0;
}

double RadialSource::radial_derivative(double r) const {
  if (r < 0.0) throw RangeError("source derivative: radius must be >= 0");
  switch (kind_) {
    case SourceKind::Constant:
      return 0.0;
    case SourceKind::Gaussian: {
      const auto& g = std::get<Gaussian>(impl_);
      const double f = value(r);
      return -2.0 * kPi * r / (g.delta * g.delta) * f;
    }
    case SourceKind::Polynomial:
      return 2.0 * r * poly_eval_deriv(std::get<Polynomial>(impl_).coeffs, r * r);
    case SourceKind::Tabulated: {
      const auto& t = std::get<Tabulated>(impl_);
      if (r > t.r.back() * (1.0 + 1e-14)) {
        std::ostringstream msg;
        msg << "tabulated source: r = " << r << " outside table range [0, "
            << t.r.back() << "]";
        throw RangeError(msg.str());
      }
      const double rc = std::min(r, t.r.back());
      const auto it = std::upper_bound(t.r.begin(), t.r.end(), rc);
      const size_t i = std::min(t.r.size() - 2,
                                static_cast<size_t>(std::max<std::ptrdiff_t>(
                                    0, it - t.r.begin() - 1)));
      const double h = t.r[i + 1] - t.r[i];
      const double u = (rc - t.r[i]) / h;
      const double g00 = 6 * u * (u - 1) / h;
      const double g10 = (1 - u) * (1 - 3 * u);
      const double g01 = -6 * u * (u - 1) / h;
      const double g11 = u * (3 * u - 2);
      return g00 * t.v[i] + g10 * t.slope[i] + g01 * t.v[i + 1] +
             g11 * t.slope[i + 1];
    }
  }
  return 0.0;
}

double RadialSource::value_at(double x, double y, double shift_x,
                              double shift_y) const {
  if (dim_ != 2)
    throw InvalidArgument("off-center evaluation requires a 2-d source");
  return value(std::hypot(x + shift_x, y + shift_y));
}

bool RadialSource::flushes_at(double r) const {
  if (kind_ != SourceKind::Gaussian) return false;
  const auto& g = std::get<Gaussian>(impl_);
  const double lf = -dim_ * std::log(g.delta) - kPi * r * r / (g.delta * g.delta);
  return lf < kLogMinNormal;
}

double RadialSource::max_radius() const {
  switch (kind_) {
    case SourceKind::Polynomial:
      return std::get<Polynomial>(impl_).rmax;
    case SourceKind::Tabulated:
      return std::get<Tabulated>(impl_).r.back();
    default:
      return std::numeric_limits<double>::infinity();
  }
}

std::string RadialSource::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case SourceKind::Constant:
      out << "constant(" << std::get<Constant>(impl_).c << ")";
      break;
    case SourceKind::Gaussian:
      out << "gaussian(delta=" << std::get<Gaussian>(impl_).delta << ")";
      break;
    case SourceKind::Polynomial: {
      out << "polynomial(";
      const auto& c = std::get<Polynomial>(impl_).coeffs;
      for (size_t i = 0; i < c.size(); ++i) out << (i ? "," : "") << c[i];
      out << "; rmax=" << std::get<Polynomial>(impl_).rmax << ")";
      break;
    }
    case SourceKind::Tabulated:
      out << "tabulated(" << std::get<Tabulated>(impl_).r.size() << " samples)";
      break;
  }
  out << " in dim " << dim_;
  return out.str();
}

BallAverage ball_mean(const RadialSource& src, double R) {
  if (!(R > 0.0)) throw InvalidArgument("ball_mean: R must be > 0");
  if (R > src.max_radius() * (1.0 + 1e-14)) {
    std::ostringstream msg;
    msg << "ball_mean: R = " << R << " exceeds the source working range "
        << src.max_radius();
    throw RangeError(msg.str());
  }
  const int n = src.dim();
  double scale = 0.0;
  for (int i = 0; i <= 32; ++i)
    scale = std::max(scale, std::abs(src.value(R * i / 32.0)) *
                                std::pow(R * i / 32.0, n - 1));
  const double tol = 1e-12 * std::max(scale * R, 1e-30);
  const double integral = integrate(
      [&](double s) { return src.value(s) * std::pow(s, n - 1); }, 0.0, R, tol);
  BallAverage avg;
  avg.R = R;
  avg.fbar = n / std::pow(R, n) * integral;
  // Sample-grid sanity: min f <= fbar <= max f up to quadrature slack.
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int i = 0; i <= 64; ++i) {
    const double f = src.value(R * i / 64.0);
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  const double slack = 1e-9 * std::max(1.0, hi);
  if (avg.fbar < lo - slack || avg.fbar > hi + slack) {
    std::ostringstream msg;
    msg << "ball_mean: fbar = " << avg.fbar << " outside sampled range ["
        << lo << ", " << hi << "] for " << src.describe();
    throw NumericError(msg.str());
  }
  return avg;
}

}  // namespace heatshape
