#ifndef HEATSHAPE_BALL_ANALYSIS_HPP
#define HEATSHAPE_BALL_ANALYSIS_HPP

#include <optional>
#include <string>
#include <vector>

#include "radial_source.hpp"

namespace heatshape {

// Ball B_R in R^n with a Robin (beta > 0) or Dirichlet boundary condition.
struct BallProblem {
  int n = 2;
  double R = 1.0;
  std::optional<double> beta = 1.0;  // nullopt = Dirichlet

  bool robin() const { return beta.has_value(); }
  static BallProblem robin_ball(int n, double R, double beta);
  static BallProblem dirichlet_ball(int n, double R);
};

// Boundary traces of the radial state u and of the source on r = R.
// Robin compatibility ur_R + beta*u_R = 0 holds exactly by construction; the
// ODE trace urr_R + ((n-1)/R) ur_R + f_R = 0 holds to rounding.
struct BoundaryData {
  double u_R = 0.0;
  double ur_R = 0.0;
  double urr_R = 0.0;
  double fbar = 0.0;
  double f_R = 0.0;
  double fr_R = 0.0;
};

BoundaryData boundary_data(const BallProblem& p, const RadialSource& src);

// u on a radial grid: u_r(r) = -r^(1-n) int_0^r f s^(n-1) ds and
// u(r) = u(R) + int_r^R (-u_r); u(R) from the Robin trace or 0 (Dirichlet).
std::vector<std::pair<double, double>> radial_profile(
    const BallProblem& p, const RadialSource& src,
    const std::vector<double>& grid);

// Left side of the stability criterion
//   (f(R) - ((n-1-R beta)/n) fbar)(f(R) - fbar) + ((1+beta R)/(n beta)) f_r(R) fbar;
// the centered ball is a stable shape iff this is <= 0.
double stability_lhs(const BallProblem& p, const RadialSource& src);

// Coefficients of the rearranged criterion A0 <= beta*A1 + A2/beta.
struct AbcDecomposition {
  double A0 = 0.0;
  double A1 = 0.0;
  double A2 = 0.0;
};

AbcDecomposition abc_decomposition(const RadialSource& src, int n, double R);

// Instability window (beta1, beta2) for a radially decreasing source:
// roots of A1 b^2 - A0 b + A2 = 0 when A0 > 2 sqrt(A1 A2); otherwise the
// ball is stable for every beta. When the lower root is indistinguishable
// from 0 at machine precision (A2 underflow) it is reported as exactly 0
// with the underflow flag set.
struct BetaThresholds {
  bool always_stable = true;
  double beta1 = 0.0;
  double beta2 = 0.0;
  bool underflow = false;
};

BetaThresholds beta_thresholds(const RadialSource& src, int n, double R);
// `scale` is the natural magnitude of the coefficients (fbar^2 max(1, R));
// coefficients below 1e-13 * scale are treated as zero.
BetaThresholds thresholds_from_abc(const AbcDecomposition& abc, double scale);

enum class Verdict { AlwaysStable, Stable, MarginallyStable, Unstable };

std::string verdict_name(Verdict v);

// Classification clauses:
//   1: f(R) >= ((n-1)/n) fbar  -> stable for all beta
//   2: window logic on A0 vs 2 sqrt(A1 A2)
//   3: beta R >= n-1 guarantee (also clause 4 read with R as the variable)
struct Classification {
  Verdict verdict = Verdict::Stable;
  int clause = 0;
  bool marginal = false;  // |lhs| below tolerance on the normalized scale
};

Classification classify(const RadialSource& src, int n, double R, double beta);

// Flat stability report (serialized by the CLI/C API).
struct StabilityReport {
  double lhs = 0.0;
  double A0 = 0.0, A1 = 0.0, A2 = 0.0;
  std::optional<double> beta1, beta2;
  Verdict verdict = Verdict::Stable;
  int clause = 0;
  bool underflow = false;
};

StabilityReport stability_report(const RadialSource& src, int n, double R,
                                 double beta);

// Second variation of the energy along the degree-l spherical-harmonic
// volume-preserving perturbation, per unit of the boundary integral of
// zeta^2. lambda_l = l(l+n-2)/R^2; D = u_rr(R) - beta^2 u(R);
// c_l = -D / (l R^(l-1) + beta R^l);
// Q_l = (beta/2) u(R)^2 (lambda_l - (n-1)/R^2) - f_r(R) u(R)
//       + u_r(R) D - (R/(l+beta R)) D^2.
struct ModeSecondVariation {
  int l = 1;
  double lambda_l = 0.0;
  double c_l = 0.0;
  double Q_l = 0.0;
};

ModeSecondVariation mode_second_variation(const BallProblem& p,
                                          const RadialSource& src, int l);

// Dirichlet-limit criterion: the centered ball is stable iff f(R) <= fbar(R).
Verdict dirichlet_stability(const RadialSource& src, double R);

// The constant -beta^2 u^2 + |grad u|^2 / 2 + (beta/2) u^2 H - f u on the
// boundary of the stationary ball (H = (n-1)/R).
double stationarity_constant(const BallProblem& p, const RadialSource& src);

}  // namespace heatshape

#endif
