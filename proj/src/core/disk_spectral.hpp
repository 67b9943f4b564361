#ifndef HEATSHAPE_DISK_SPECTRAL_HPP
#define HEATSHAPE_DISK_SPECTRAL_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "radial_source.hpp"

namespace heatshape {

// Poisson solver on the disk of radius R: angular Fourier decomposition,
// each mode solved by a Galerkin radial discretization (degree-4 Lagrange
// elements on a grid clustered toward r = R). Being variational, the
// discrete energy identity J = -1/2 int f u holds to rounding.

struct SpectralConfig {
  int angular_modes = 64;   // K; modes k = 0..K
  int radial_points = 512;  // M; vertex nodes of the radial grid

  void validate() const;
};

struct DiskBc {
  bool dirichlet = false;
  double beta = 1.0;

  static DiskBc robin(double beta);
  static DiskBc make_dirichlet();
};

// Point-evaluable source on the plane; `radial` short-circuits the angular
// quadrature (only the k = 0 mode is assembled).
struct SourceField {
  std::function<double(double, double)> eval;
  bool radial = false;
};

SourceField make_source_field(const RadialSource& src, double shift_x = 0.0,
                              double shift_y = 0.0);
SourceField constant_source_field(double c);

class FourierRadialField {
 public:
  struct Workspace;  // radial grid, basis tables, assembly helpers

  double radius() const { return R_; }
  const DiskBc& bc() const { return bc_; }
  const SpectralConfig& config() const { return cfg_; }

  double value(double r, double theta) const;

  // cos/sin radial coefficients a_k(r), b_k(r); complex coefficient
  // c_k = (a_k - i b_k)/2 with c_{-k} = conj(c_k).
  double cos_coefficient(int k, double r) const;
  double sin_coefficient(int k, double r) const;
  std::pair<double, double> complex_coefficient(int k, double r) const;

  double mode_abs_max(int k) const;      // max over nodes of |a_k|, |b_k|
  double boundary_residual(int k) const; // |c'(R)+beta c(R)| or |c(R)|

  bool aliasing_warning() const { return aliasing_warning_; }

  // max |u| over the evaluation grid with local grid refinement at the max.
  double linf_norm() const;
  // integral of u over the disk (k = 0 mode only).
  double integral_u() const;
  double average() const;

  // CSV export: header "r,theta,u" then one row per structured grid point.
  void export_csv(const std::string& path, int n_r = 64, int n_theta = 128) const;

 private:
  friend FourierRadialField solve_disk(double, DiskBc, const SourceField&,
                                       const SpectralConfig&);
  friend double energy(const FourierRadialField&, const SourceField&);
  friend double total_heat(const FourierRadialField&, const SourceField&);

  std::shared_ptr<const Workspace> ws_;
  double R_ = 1.0;
  DiskBc bc_;
  SpectralConfig cfg_;
  bool aliasing_warning_ = false;
  // dof vectors per mode; sin_[0] unused.
  std::vector<std::vector<double>> cos_, sin_;
};

FourierRadialField solve_disk(double R, DiskBc bc, const SourceField& source,
                              const SpectralConfig& cfg = {});

// J = 1/2 int |grad u|^2 + (beta/2) oint u^2 - int f u (Robin) or the
// Dirichlet analogue, assembled with the solver's own quadrature.
double energy(const FourierRadialField& field, const SourceField& source);

// int f u with the same quadrature.
double total_heat(const FourierRadialField& field, const SourceField& source);

}  // namespace heatshape

#endif
