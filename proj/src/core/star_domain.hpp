#ifndef HEATSHAPE_STAR_DOMAIN_HPP
#define HEATSHAPE_STAR_DOMAIN_HPP

#include <vector>

namespace heatshape {

// Star-shaped 2-d domain with boundary
//   rho(theta) = s * R * (1 + sum_k (a_k cos k theta + b_k sin k theta)),
// analytic curvature, and closed-form area
//   pi (s R)^2 (1 + sum_k (a_k^2 + b_k^2)/2).
// With the volume-preserving flag the scale s is chosen so the area equals
// pi R^2 exactly.
class StarDomain {
 public:
  StarDomain() = default;  // unit disk

  static StarDomain disk(double R);
  // a[k-1], b[k-1] multiply cos(k theta), sin(k theta).
  static StarDomain fourier(double R, std::vector<double> a,
                            std::vector<double> b, bool preserve_area);
  static StarDomain fourier_mode(double R, int k, double amplitude,
                                 bool preserve_area);
  // Axis-aligned ellipse with semi-axes (ax, ay); exact area pi ax ay,
  // base radius sqrt(ax ay).
  static StarDomain ellipse(double ax, double ay);

  double base_radius() const { return R_; }
  double scale() const { return s_; }
  bool volume_preserving() const { return volume_preserving_; }

  double radius(double theta) const;
  double radius_prime(double theta) const;
  double radius_second(double theta) const;

  // Curvature H = (rho^2 + 2 rho'^2 - rho rho'') / (rho^2 + rho'^2)^(3/2);
  // equals 1/R on the circle of radius R.
  double curvature(double theta) const;

  double area() const;          // closed form
  double area_quadrature() const;  // 1/2 int rho^2 dtheta, cross-check

  bool contains(double x, double y) const;

  double max_radius() const;
  double min_radius() const;

  // Smallest L >= 6 that is a multiple of 2k for every active mode k
  // (mesh ring counts L*i are then equivariant under the rotations that
  // relate +/-t star perturbations).
  int mesh_ring_factor() const;

  const std::vector<double>& cos_coeffs() const { return a_; }
  const std::vector<double>& sin_coeffs() const { return b_; }

 private:
  void validate() const;

  double R_ = 1.0;
  double s_ = 1.0;
  bool volume_preserving_ = false;
  std::vector<double> a_, b_;
};

// Star domain translated by (cx, cy); shifted disks and ellipses for the
// rearrangement experiments.
struct Domain2D {
  StarDomain star;
  double cx = 0.0;
  double cy = 0.0;

  bool contains(double x, double y) const {
    return star.contains(x - cx, y - cy);
  }
  double area() const { return star.area(); }
};

}  // namespace heatshape

#endif
