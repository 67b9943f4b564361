#ifndef HEATSHAPE_RADIAL_SOURCE_HPP
#define HEATSHAPE_RADIAL_SOURCE_HPP

#include <string>
#include <variant>
#include <vector>

namespace heatshape {

enum class SourceKind { Constant, Gaussian, Polynomial, Tabulated };

// Radially symmetric heat source f(|x|) in R^n.
//
// Kinds:
//   constant    f(r) = c
//   gaussian    f(r) = delta^(-n) * exp(-pi r^2 / delta^2), unit total mass
//   polynomial  f(r) = p(r^2) with given coefficients, valid on [0, rmax]
//   tabulated   monotone cubic (Fritsch-Carlson) interpolation of samples;
//               only C^1, which is weaker than the smoothness the theory
//               assumes -- callers on tabulated sources get interpolant
//               derivatives.
//
// Positivity (above the optional floor) and the radially-decreasing flag are
// validated on a sample grid of the working range at construction.
class RadialSource {
 public:
  static RadialSource constant(double value, int dim, double floor = 0.0);
  static RadialSource gaussian(double delta, int dim, double floor = 0.0);
  static RadialSource polynomial(std::vector<double> coeffs_of_r2, double rmax,
                                 int dim, double floor = 0.0);
  static RadialSource tabulated(std::vector<double> radii,
                                std::vector<double> values, int dim,
                                double floor = 0.0);

  SourceKind kind() const { return kind_; }
  int dim() const { return dim_; }
  double positivity_floor() const { return floor_; }

  // f(r). Values whose closed form lies below the smallest positive normal
  // double are flushed to exactly 0 (see flushes_at).
  double value(double r) const;

  // f_r(r): closed form for smooth kinds, interpolant derivative otherwise.
  double radial_derivative(double r) const;

  // f(|x + shift|) for n = 2.
  double value_at(double x, double y, double shift_x, double shift_y) const;

  // True when f(r) is mathematically positive but evaluates below the
  // smallest positive normal double (flushed to 0).
  bool flushes_at(double r) const;

  bool radially_decreasing() const { return decreasing_; }

  // Upper end of the working range (table end, rmax, or +inf).
  double max_radius() const;

  std::string describe() const;

 private:
  struct Constant {
    double c;
  };
  struct Gaussian {
    double delta;
  };
  struct Polynomial {
    std::vector<double> coeffs;  // p(s) = sum coeffs[j] s^j with s = r^2
    double rmax;
  };
  struct Tabulated {
    std::vector<double> r;
    std::vector<double> v;
    std::vector<double> slope;  // PCHIP derivatives at the nodes
  };

  RadialSource() = default;
  void validate();

  SourceKind kind_ = SourceKind::Constant;
  int dim_ = 2;
  double floor_ = 0.0;
  bool decreasing_ = false;
  std::variant<Constant, Gaussian, Polynomial, Tabulated> impl_;
};

// Mean of f over the ball B_R: fbar = (n / R^n) * int_0^R f(s) s^(n-1) ds,
// by adaptive quadrature with absolute target 1e-12 relative to the
// integrand scale.
struct BallAverage {
  double R = 0.0;
  double fbar = 0.0;
};

BallAverage ball_mean(const RadialSource& src, double R);

}  // namespace heatshape

#endif
