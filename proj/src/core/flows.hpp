#ifndef HEATSHAPE_FLOWS_HPP
#define HEATSHAPE_FLOWS_HPP

#include <optional>
#include <vector>

#include "ball_analysis.hpp"
#include "disk_spectral.hpp"
#include "radial_source.hpp"
#include "star_domain.hpp"

namespace heatshape {

// Volume-preserving perturbation of the centered ball: either a rigid
// translation (realized as a shifted source on the fixed disk) or a single
// star mode rho_t = s(t) R (1 + t a_k cos k theta) with the exact area
// rescale s(t) = (1 + t^2 a_k^2 / 2)^(-1/2). In both cases the normal
// velocity zeta at t = 0 has exact zero boundary mean.
struct PerturbationSpec {
  enum class Kind { Translation, StarMode };
  Kind kind = Kind::Translation;
  double dir_x = 1.0, dir_y = 0.0;  // unit direction (translation)
  int mode_k = 2;
  double amplitude = 1.0;  // a_k

  static PerturbationSpec translation(double dx, double dy);
  static PerturbationSpec star_mode(int k, double amplitude);

  double zeta(double theta, double R) const;
  double zeta_mean() const { return 0.0; }  // closed form, both kinds
  double zeta_square_integral(double R) const;  // oint zeta^2 dsigma
};

struct PerturbedDomain {
  StarDomain star;       // the domain itself (translations keep the disk)
  double shift_x = 0.0;  // source shift equivalent to moving the domain
  double shift_y = 0.0;
};

PerturbedDomain perturbed_domain(const PerturbationSpec& spec, double R,
                                 double t);

struct FlowOptions {
  double stencil = 0.0;      // 0 -> default 0.02 R
  double fem_h = 0.02;       // star-mode meshes
  SpectralConfig spectral;   // translation solves
  bool refine_mesh = false;  // extra solve set at fem_h / 2 + h-extrapolation
};

// J(t) samples on the symmetric stencil {-t0, -t0/2, 0, t0/2, t0} plus
// Richardson-extrapolated central differences.
struct FlowSample {
  std::vector<double> ts;
  std::vector<double> js;
  double first_derivative = 0.0;
  double second_derivative = 0.0;
  double first_error_estimate = 0.0;
  double second_error_estimate = 0.0;
  double stencil = 0.0;
  int extrapolation_order = 4;
};

FlowSample energy_along_flow(const BallProblem& p, const RadialSource& src,
                             const PerturbationSpec& spec,
                             const FlowOptions& opts = {});

// Central-difference J'(0); vanishes within truncation at a ball with a
// radial source.
double first_variation_check(const BallProblem& p, const RadialSource& src,
                             const PerturbationSpec& spec,
                             const FlowOptions& opts = {});

}  // namespace heatshape

#endif
