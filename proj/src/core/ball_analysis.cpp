#include "ball_analysis.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>

#include "errors.hpp"
#include "quadrature.hpp"

namespace heatshape {

namespace {

constexpr double kMarginalTol = 1e-9;  // on lhs / fbar^2

void require_robin(const BallProblem& p, const char* what) {
  if (!p.robin()) {
    std::ostringstream msg;
    msg << what << " requires a Robin problem";
    throw InvalidArgument(msg.str());
  }
}

void check_dims(const BallProblem& p, const RadialSource& src) {
  if (src.dim() != p.n)
    throw InvalidArgument("source dimension does not match the ball problem");
}

}  // namespace

BallProblem BallProblem::robin_ball(int n, double R, double beta) {
  if (n < 2) throw InvalidArgument("ball problem: n must be >= 2");
  if (!(R > 0.0)) throw InvalidArgument("ball problem: R must be > 0");
  if (!(beta > 0.0)) throw InvalidArgument("ball problem: beta must be > 0");
  return BallProblem{n, R, beta};
}

BallProblem BallProblem::dirichlet_ball(int n, double R) {
  if (n < 2) throw InvalidArgument("ball problem: n must be >= 2");
  if (!(R > 0.0)) throw InvalidArgument("ball problem: R must be > 0");
  return BallProblem{n, R, std::nullopt};
}

BoundaryData boundary_data(const BallProblem& p, const RadialSource& src) {
  check_dims(p, src);
  BoundaryData bd;
  bd.fbar = ball_mean(src, p.R).fbar;
  bd.f_R = src.value(p.R);
  bd.fr_R = src.radial_derivative(p.R);
  const double n = p.n;
  if (p.robin()) {
    const double beta = *p.beta;
    bd.u_R = p.R * bd.fbar / (n * beta);
    bd.ur_R = -beta * bd.u_R;  // Robin compatibility, exact
  } else {
    bd.u_R = 0.0;
    bd.ur_R = -p.R * bd.fbar / n;  // divergence-theorem trace, bc-independent
  }
  bd.urr_R = -bd.f_R - (n - 1.0) / p.R * bd.ur_R;  // ODE trace
  return bd;
}

std::vector<std::pair<double, double>> radial_profile(
    const BallProblem& p, const RadialSource& src,
    const std::vector<double>& grid) {
  check_dims(p, src);
  const double n = p.n;
  const double R = p.R;
  const BoundaryData bd = boundary_data(p, src);

  // u(r) = u(R) + int_0^R f(tau) tau^(n-1) G(tau; r) dtau with
  // G = int_{max(tau, r)}^R s^(1-n) ds (order of integration swapped).
  auto shell = [&](double a, double b) {  // int_a^b s^(1-n) ds
    if (n == 2) return std::log(b / a);
    return (std::pow(a, 2.0 - n) - std::pow(b, 2.0 - n)) / (n - 2.0);
  };
  double scale = 0.0;
  for (int i = 0; i <= 32; ++i)
    scale = std::max(scale, std::abs(src.value(R * i / 32.0)));
  const double tol = 1e-12 * std::max(1.0, scale) * std::pow(R, n);

  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double r : grid) {
    if (r < -1e-15 || r > R * (1.0 + 1e-12))
      throw InvalidArgument("radial_profile: grid point outside [0, R]");
    const double rc = std::min(std::max(r, 0.0), R);
    double u = bd.u_R;
    if (rc < R) {
      // tau < rc: G = shell(rc, R); tau in (rc, R): G = shell(tau, R).
      if (rc > 0.0) {
        const double inner = integrate(
            [&](double tau) { return src.value(tau) * std::pow(tau, n - 1.0); },
            0.0, rc, tol);
        u += inner * shell(rc, R);
      }
      u += integrate(
          [&](double tau) {
            return src.value(tau) * std::pow(tau, n - 1.0) * shell(tau, R);
          },
          rc, R, tol);
    }
    out.emplace_back(r, u);
  }
  return out;
}

double stability_lhs(const BallProblem& p, const RadialSource& src) {
  require_robin(p, "stability_lhs");
  check_dims(p, src);
  const BoundaryData bd = boundary_data(p, src);
  const double n = p.n, R = p.R, beta = *p.beta;
  return (bd.f_R - (n - 1.0 - R * beta) / n * bd.fbar) * (bd.f_R - bd.fbar) +
         (1.0 + beta * R) / (n * beta) * bd.fr_R * bd.fbar;
}

AbcDecomposition abc_decomposition(const RadialSource& src, int n, double R) {
  if (n < 2 || !(R > 0.0))
    throw InvalidArgument("abc_decomposition: need n >= 2 and R > 0");
  if (src.dim() != n)
    throw InvalidArgument("abc_decomposition: source dimension mismatch");
  const double fbar = ball_mean(src, R).fbar;
  const double fR = src.value(R);
  const double frR = src.radial_derivative(R);
  AbcDecomposition abc;
  abc.A0 = (fR - fbar) * (fR - (n - 1.0) / n * fbar) + R / n * frR * fbar;
  abc.A1 = R / n * fbar * (fbar - fR);
  abc.A2 = -1.0 / n * frR * fbar;
  return abc;
}

BetaThresholds thresholds_from_abc(const AbcDecomposition& abc, double scale) {
  scale = std::max(scale, 1e-300);
  BetaThresholds th;
  if (abc.A1 <= 1e-13 * scale) {
    if (abc.A0 > 1e-12 * scale)
      throw NumericError(
          "beta_thresholds: A1 = 0 with A0 > 0 is infeasible for a radially "
          "decreasing source (inconsistent coefficients)");
    th.always_stable = true;  // A0 <= 0 <= beta A1 + A2/beta for all beta
    return th;
  }
  const double disc = abc.A0 * abc.A0 - 4.0 * abc.A1 * abc.A2;
  if (abc.A0 <= 0.0 || disc <= 0.0) {
    th.always_stable = true;  // A0 <= 2 sqrt(A1 A2)
    return th;
  }
  th.always_stable = false;
  th.beta2 = (abc.A0 + std::sqrt(disc)) / (2.0 * abc.A1);
  th.beta1 = abc.A2 / (abc.A1 * th.beta2);  // Vieta, stable for tiny A2
  if (th.beta1 <= DBL_EPSILON * th.beta2) {
    th.beta1 = 0.0;
    th.underflow = true;
  }
  return th;
}

double abc_scale(const RadialSource& src, double R) {
  const double fbar = ball_mean(src, R).fbar;
  return fbar * fbar * std::max(1.0, R);
}

BetaThresholds beta_thresholds(const RadialSource& src, int n, double R) {
  if (!src.radially_decreasing())
    throw InvalidArgument(
        "beta_thresholds applies to radially decreasing sources only");
  return thresholds_from_abc(abc_decomposition(src, n, R), abc_scale(src, R));
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::AlwaysStable:
      return "always-stable";
    case Verdict::Stable:
      return "stable";
    case Verdict::MarginallyStable:
      return "marginally-stable";
    case Verdict::Unstable:
      return "unstable";
  }
  return "unknown";
}

Classification classify(const RadialSource& src, int n, double R, double beta) {
  if (!(beta > 0.0)) throw InvalidArgument("classify: beta must be > 0");
  const BallProblem p = BallProblem::robin_ball(n, R, beta);
  const double lhs = stability_lhs(p, src);
  const double fbar = ball_mean(src, R).fbar;
  const double fR = src.value(R);
  const AbcDecomposition abc = abc_decomposition(src, n, R);
  const BetaThresholds th =
      thresholds_from_abc(abc, fbar * fbar * std::max(1.0, R));

  Classification c;
  c.marginal = std::abs(lhs) <= kMarginalTol * std::max(fbar * fbar, 1e-300);

  const bool clause1 = fR >= (n - 1.0) / n * fbar;
  if (clause1) {
    c.verdict = Verdict::AlwaysStable;
    c.clause = 1;
  } else if (th.always_stable) {
    c.verdict = Verdict::AlwaysStable;
    c.clause = 2;
  } else if (beta * R >= n - 1.0) {
    c.verdict = Verdict::Stable;  // clause (3)/(4) guarantee
    c.clause = 3;
  } else if (beta > th.beta1 && beta < th.beta2) {
    c.verdict = Verdict::Unstable;
    c.clause = 2;
  } else {
    c.verdict = Verdict::Stable;
    c.clause = 2;
  }
  if (c.marginal && c.verdict != Verdict::AlwaysStable)
    c.verdict = Verdict::MarginallyStable;
  return c;
}

StabilityReport stability_report(const RadialSource& src, int n, double R,
                                 double beta) {
  const BallProblem p = BallProblem::robin_ball(n, R, beta);
  StabilityReport rep;
  rep.lhs = stability_lhs(p, src);
  const AbcDecomposition abc = abc_decomposition(src, n, R);
  rep.A0 = abc.A0;
  rep.A1 = abc.A1;
  rep.A2 = abc.A2;
  const BetaThresholds th = thresholds_from_abc(abc, abc_scale(src, R));
  if (!th.always_stable) {
    rep.beta1 = th.beta1;
    rep.beta2 = th.beta2;
  }
  const Classification c = classify(src, n, R, beta);
  rep.verdict = c.verdict;
  rep.clause = c.clause;
  rep.underflow = th.underflow || src.flushes_at(R);
  return rep;
}

ModeSecondVariation mode_second_variation(const BallProblem& p,
                                          const RadialSource& src, int l) {
  require_robin(p, "mode_second_variation");
  if (l < 1)
    throw InvalidArgument(
        "mode_second_variation: l >= 1 (volume preservation excludes l = 0)");
  const BoundaryData bd = boundary_data(p, src);
  const double n = p.n, R = p.R, beta = *p.beta;
  ModeSecondVariation mv;
  mv.l = l;
  mv.lambda_l = l * (l + n - 2.0) / (R * R);
  const double D = bd.urr_R - beta * beta * bd.u_R;
  mv.c_l = -D / (l * std::pow(R, l - 1.0) + beta * std::pow(R, static_cast<double>(l)));
  mv.Q_l = 0.5 * beta * bd.u_R * bd.u_R * (mv.lambda_l - (n - 1.0) / (R * R)) -
           bd.fr_R * bd.u_R + bd.ur_R * D - R / (l + beta * R) * D * D;
  return mv;
}

Verdict dirichlet_stability(const RadialSource& src, double R) {
  const double fbar = ball_mean(src, R).fbar;
  const double fR = src.value(R);
  const double tol = kMarginalTol * std::max(fbar, 1e-300);
  if (std::abs(fR - fbar) <= tol) return Verdict::MarginallyStable;
  return fR < fbar ? Verdict::Stable : Verdict::Unstable;
}

double stationarity_constant(const BallProblem& p, const RadialSource& src) {
  require_robin(p, "stationarity_constant");
  const BoundaryData bd = boundary_data(p, src);
  const double beta = *p.beta;
  const double H = (p.n - 1.0) / p.R;
  return -beta * beta * bd.u_R * bd.u_R + 0.5 * bd.ur_R * bd.ur_R +
         0.5 * beta * bd.u_R * bd.u_R * H - bd.f_R * bd.u_R;
}

}  // namespace heatshape
