// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line each. Exit code = number of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "core/ball_analysis.hpp"
#include "core/disk_spectral.hpp"
#include "core/fem2d.hpp"
#include "core/flows.hpp"
#include "core/mesh2d.hpp"
#include "core/rearrange.hpp"
#include "test_util.hpp"

using namespace heatshape;
using testutil::kPi;

namespace {

int g_failures = 0;

struct Criterion {
  int id;
  std::string label;
  double runtime_limit_s;
  std::function<bool(std::string&)> body;
};

void run(const Criterion& c) {
  std::string detail;
  bool ok = false;
  const auto start = std::chrono::steady_clock::now();
  try {
    ok = c.body(detail);
  } catch (const std::exception& e) {
    ok = false;
    detail = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (secs > c.runtime_limit_s) {
    ok = false;
    detail += (detail.empty() ? "" : "; ") + std::string("runtime ") +
              std::to_string(secs) + "s exceeds " +
              std::to_string(c.runtime_limit_s) + "s";
  }
  std::printf("%s criterion %2d [%6.2fs]: %s%s%s\n", ok ? "PASS" : "FAIL",
              c.id, secs, c.label.c_str(), detail.empty() ? "" : " -- ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

bool criterion1(std::string& detail) {
  for (int n : {2, 3, 4})
    for (double R : {0.5, 1.0, 2.0})
      for (double beta : {0.1, 1.0, 10.0}) {
        const auto src = RadialSource::constant(1.0, n);
        const double lhs =
            stability_lhs(BallProblem::robin_ball(n, R, beta), src);
        if (!(std::abs(lhs) <= 1e-12)) {
          detail = "lhs = " + std::to_string(lhs) + " at n=" +
                   std::to_string(n) + " R=" + std::to_string(R) +
                   " beta=" + std::to_string(beta);
          return false;
        }
      }
  return true;
}

bool criterion2(std::string& detail) {
  const auto src = RadialSource::gaussian(0.1, 2);
  const auto abc = abc_decomposition(src, 2, 1.0);
  if (!(abc.A0 > 2.0 * std::sqrt(std::max(0.0, abc.A1 * abc.A2)))) {
    detail = "A0 <= 2 sqrt(A1 A2)";
    return false;
  }
  const auto th = beta_thresholds(src, 2, 1.0);
  if (th.always_stable || th.beta1 != 0.0 || !th.underflow) {
    detail = "beta1 not flagged 0 with underflow";
    return false;
  }
  if (!(std::abs(th.beta2 - 1.0) <= 0.05)) {
    detail = "beta2 = " + std::to_string(th.beta2);
    return false;
  }
  if (classify(src, 2, 1.0, 0.5).verdict != Verdict::Unstable) {
    detail = "beta=0.5 not unstable";
    return false;
  }
  const auto hi = classify(src, 2, 1.0, 2.0).verdict;
  if (hi != Verdict::Stable && hi != Verdict::AlwaysStable) {
    detail = "beta=2 not stable";
    return false;
  }
  return true;
}

bool criterion3(std::string& detail) {
  testutil::Rng rng(1003);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + rng.pick(3);
    const double R = rng.uniform(0.5, 2.0);
    const double beta = rng.uniform(0.05, 20.0);
    const auto src = testutil::random_decreasing_source(rng, n, 2.5);
    const auto p = BallProblem::robin_ball(n, R, beta);
    const double q1 = mode_second_variation(p, src, 1).Q_l;
    const double lhs = stability_lhs(p, src);
    const double resid = std::abs(q1 + R / (1.0 + beta * R) * lhs);
    const double scale = std::max({std::abs(q1), std::abs(lhs), 1.0});
    if (!(resid <= 1e-10 * scale)) {
      detail = "residual " + std::to_string(resid / scale) + " at trial " +
               std::to_string(trial);
      return false;
    }
  }
  return true;
}

bool criterion4(std::string& detail) {
  const auto src = RadialSource::gaussian(0.3, 2);
  const auto tr = PerturbationSpec::translation(1.0, 0.0);
  double d_lo = 0.0, d_hi = 0.0;
  for (double beta : {0.5, 2.0}) {
    const auto p = BallProblem::robin_ball(2, 1.0, beta);
    const auto fs = energy_along_flow(p, src, tr);
    const double predicted =
        mode_second_variation(p, src, 1).Q_l * tr.zeta_square_integral(1.0);
    const double rel = std::abs(fs.second_derivative - predicted) /
                       std::abs(predicted);
    if (!(rel <= 0.01)) {
      detail = "relative error " + std::to_string(rel) + " at beta=" +
               std::to_string(beta);
      return false;
    }
    (beta < 1.0 ? d_lo : d_hi) = fs.second_derivative;
  }
  if (!(d_lo < 0.0 && d_hi > 0.0)) {
    detail = "no sign flip across the window boundary";
    return false;
  }
  return true;
}

bool criterion5(std::string& detail) {
  const auto src = RadialSource::constant(1.0, 2);
  const auto p = BallProblem::robin_ball(2, 1.0, 1.0);
  const auto spec = PerturbationSpec::star_mode(2, 1.0);
  FlowOptions opts;
  opts.fem_h = 0.02;
  opts.refine_mesh = true;  // Richardson in t plus one mesh refinement
  const auto fs = energy_along_flow(p, src, spec, opts);
  const double predicted = 13.0 / 24.0 * spec.zeta_square_integral(1.0);
  const double rel =
      std::abs(fs.second_derivative - predicted) / predicted;
  detail = "J'' = " + std::to_string(fs.second_derivative) + " vs " +
           std::to_string(predicted) + " (rel " + std::to_string(rel) + ")";
  return rel <= 0.02;
}

bool criterion6(std::string& detail) {
  const SourceField f = constant_source_field(1.0);
  const auto mesh = std::make_shared<const Mesh>(
      build_star_mesh(StarDomain::disk(1.0), 0.02));
  const auto fem = assemble_solve(mesh, FemBc::robin(1.0), f);
  const auto spec = solve_disk(1.0, DiskBc::robin(1.0), f);
  const double j_fem = energy(fem, f);
  const double j_spec = energy(spec, f);
  const double rel = std::abs(j_fem - j_spec) / std::abs(j_spec);
  if (!(rel <= 1e-3)) {
    detail = "FEM/spectral relative gap " + std::to_string(rel);
    return false;
  }
  const double ident = std::abs(j_spec + 0.5 * total_heat(spec, f));
  if (!(ident <= 1e-9 * std::abs(j_spec))) {
    detail = "energy identity residual " + std::to_string(ident);
    return false;
  }
  // identity on a non-radial solve as well
  const auto g = make_source_field(RadialSource::gaussian(0.5, 2), 0.2, 0.0);
  const auto sg = solve_disk(1.0, DiskBc::robin(1.0), g);
  const double jg = energy(sg, g);
  if (!(std::abs(jg + 0.5 * total_heat(sg, g)) <= 1e-9 * std::abs(jg))) {
    detail = "energy identity fails on the shifted solve";
    return false;
  }
  return true;
}

bool criterion7(std::string& detail) {
  const auto lo = two_disk_counterexample(0.5, 0.5);
  if (!(std::abs(lo.beta0 - 0.946233) <= 1e-6)) {
    detail = "beta0 = " + std::to_string(lo.beta0);
    return false;
  }
  if (!(lo.comparison_fails && std::abs(lo.linf_ball - 1.200213) <= 1e-6 &&
        lo.linf_domain == 1.25)) {
    detail = "beta = 0.5 branch values off";
    return false;
  }
  const auto hi = two_disk_counterexample(0.5, 2.0);
  if (!(!hi.comparison_fails && std::abs(hi.linf_ball - 0.529393) <= 1e-6 &&
        hi.linf_domain == 0.5)) {
    detail = "beta = 2 branch values off";
    return false;
  }
  const auto at0 = two_disk_counterexample(0.5, lo.beta0);
  if (!(std::abs(at0.delta) <= 1e-12)) {
    detail = "delta(beta0) = " + std::to_string(at0.delta);
    return false;
  }
  return true;
}

bool criterion8(std::string& detail) {
  TalentiOptions opts;  // h = 0.02
  Domain2D ell{StarDomain::ellipse(1.2, 1.0 / 1.2), 0.0, 0.0};
  for (const bool constant : {true, false}) {
    const auto src = constant ? RadialSource::constant(1.0, 2)
                              : RadialSource::gaussian(0.5, 2);
    const auto rep = talenti_experiments(ell, src, std::nullopt, opts);
    if (!(rep.j_margin > 0.0)) {
      detail = std::string("Dirichlet margin not positive for ") +
               (constant ? "f=1" : "gaussian");
      return false;
    }
  }
  Domain2D shifted{StarDomain::disk(1.0), 0.3, 0.0};
  const auto rep =
      talenti_experiments(shifted, RadialSource::gaussian(0.5, 2), 1.0, opts);
  if (!(rep.a_margin > 0.0)) {
    detail = "A margin not positive for the shifted disk";
    return false;
  }
  return true;
}

bool criterion9(std::string& detail) {
  testutil::Rng rng(1009);
  for (int trial = 0; trial < 10; ++trial) {
    const double delta = rng.uniform(0.3, 1.0);
    const auto src = RadialSource::gaussian(delta, 2);
    Domain2D dom;
    if (trial % 2 == 0) {
      const double shift = rng.uniform(0.05, 0.35);
      const double angle = rng.uniform(0.0, 2.0 * kPi);
      dom = Domain2D{StarDomain::disk(1.0), shift * std::cos(angle),
                     shift * std::sin(angle)};
    } else {
      const double a = rng.uniform(1.05, 1.3);
      dom = Domain2D{StarDomain::ellipse(a, 1.0 / a), 0.0, 0.0};
    }
    const auto rep = lemma_domination_check(src, dom, 1.0, 256);
    if (!rep.ok) {
      detail = "violation " + std::to_string(rep.max_violation) +
               " at trial " + std::to_string(trial);
      return false;
    }
  }
  return true;
}

bool criterion10(std::string& detail) {
  const auto src = RadialSource::gaussian(0.5, 2);
  const SourceField f = make_source_field(src);
  const auto mesh = std::make_shared<const Mesh>(
      build_star_mesh(StarDomain::disk(1.0), 0.02));
  const double mass = 1.0;
  const double hbar = mass / (2.0 * kPi);
  const auto flat = solve_insulation(mesh, [&](double) { return hbar; }, f);
  const double a_flat = integral_u(flat);
  const double tol = 2e-3 * std::abs(a_flat);

  testutil::Rng rng(1010);
  double worst = 1e300;
  for (int k = 0; k < 20; ++k) {
    double ac[4], bs[4], norm = 0.0;
    for (int m = 0; m < 4; ++m) {
      ac[m] = rng.uniform(-1.0, 1.0);
      bs[m] = rng.uniform(-1.0, 1.0);
      norm += std::abs(ac[m]) + std::abs(bs[m]);
    }
    const double amp = rng.uniform(0.2, 0.8) / norm;
    const auto h_fn = [&, amp](double th) {
      double v = 1.0;
      for (int m = 0; m < 4; ++m)
        v += amp * (ac[m] * std::cos((m + 1) * th) +
                    bs[m] * std::sin((m + 1) * th));
      return hbar * v;
    };
    const auto field = solve_insulation(mesh, h_fn, f, 1e-9);
    worst = std::min(worst, a_flat - integral_u(field));
  }
  detail = "worst margin " + std::to_string(worst) + " (tolerance -" +
           std::to_string(tol) + ")";
  return worst >= -tol;
}

bool criterion11(std::string& detail) {
  testutil::Rng rng(1011);
  int tested = 0;
  for (int trial = 0; trial < 400 && tested < 50; ++trial) {
    const int n = 2 + rng.pick(3);
    const double R = rng.uniform(0.5, 2.0);
    const auto src = testutil::random_decreasing_source(rng, n, 2.5);
    const double fbar = ball_mean(src, R).fbar;
    const double fR = src.value(R);
    if (std::abs(fR - fbar) <= 1e-9 * std::max(1.0, fbar)) continue;
    ++tested;
    const double lhs =
        stability_lhs(BallProblem::robin_ball(n, R, 1000.0), src);
    if ((fR < fbar) != (lhs < 0.0)) {
      detail = "sign mismatch at trial " + std::to_string(trial);
      return false;
    }
  }
  if (tested < 50) {
    detail = "only " + std::to_string(tested) + " strict draws";
    return false;
  }
  return true;
}

bool criterion12(std::string& detail) {
  // velocities: exact zero boundary mean, symbolically for both kinds
  if (PerturbationSpec::translation(0.6, -0.8).zeta_mean() != 0.0 ||
      PerturbationSpec::star_mode(3, 0.5).zeta_mean() != 0.0) {
    detail = "zeta mean not identically zero";
    return false;
  }
  for (double R : {0.5, 1.0, 2.0})
    for (double t : {-0.1, -0.02, 0.0, 0.05, 0.12})
      for (int k : {1, 2, 3, 4}) {
        const auto d =
            perturbed_domain(PerturbationSpec::star_mode(k, 1.0), R, t);
        if (!(std::abs(d.star.area() - kPi * R * R) <= 1e-10)) {
          detail = "area drift " +
                   std::to_string(d.star.area() - kPi * R * R);
          return false;
        }
        const auto tr =
            perturbed_domain(PerturbationSpec::translation(1.0, 0.0), R, t);
        if (!(std::abs(tr.star.area() - kPi * R * R) <= 1e-10)) {
          detail = "translation area drift";
          return false;
        }
      }
  return true;
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "constant-source stability identity", 1.0, criterion1},
      {2, "gaussian delta=0.1 instability window", 1.0, criterion2},
      {3, "mode-1 identity over 200 random draws", 5.0, criterion3},
      {4, "translation cross-check (spectral vs Q1)", 60.0, criterion4},
      {5, "mode-2 cross-check (FEM vs Q2)", 300.0, criterion5},
      {6, "solver agreement and energy identity", 60.0, criterion6},
      {7, "two-disk counterexample closed forms", 1.0, criterion7},
      {8, "domain-vs-ball optimality instances", 300.0, criterion8},
      {9, "rearrangement domination on random domains", 120.0, criterion9},
      {10, "constant insulation beats random profiles", 600.0, criterion10},
      {11, "large-beta sign consistency", 5.0, criterion11},
      {12, "volume preservation and zero-mean velocities", 60.0, criterion12},
  };
  for (const auto& c : criteria) run(c);
  if (g_failures == 0)
    std::printf("acceptance: all %zu criteria passed\n", criteria.size());
  else
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
  return g_failures;
}
