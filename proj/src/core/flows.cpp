#include "flows.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "errors.hpp"
#include "fem2d.hpp"
#include "mesh2d.hpp"

namespace heatshape {

namespace {
constexpr double kPi = std::numbers::pi;
}

PerturbationSpec PerturbationSpec::translation(double dx, double dy) {
  const double norm = std::hypot(dx, dy);
  if (!(norm > 0.0))
    throw InvalidArgument("translation perturbation: zero direction");
  PerturbationSpec s;
  s.kind = Kind::Translation;
  s.dir_x = dx / norm;
  s.dir_y = dy / norm;
  return s;
}

PerturbationSpec PerturbationSpec::star_mode(int k, double amplitude) {
  if (k < 1) throw InvalidArgument("star mode: k must be >= 1");
  if (amplitude == 0.0) throw InvalidArgument("star mode: zero amplitude");
  PerturbationSpec s;
  s.kind = Kind::StarMode;
  s.mode_k = k;
  s.amplitude = amplitude;
  return s;
}

double PerturbationSpec::zeta(double theta, double R) const {
  if (kind == Kind::Translation)
    return dir_x * std::cos(theta) + dir_y * std::sin(theta);
  return R * amplitude * std::cos(mode_k * theta);
}

double PerturbationSpec::zeta_square_integral(double R) const {
  // oint zeta^2 dsigma = int_0^{2pi} zeta(theta)^2 R dtheta
  if (kind == Kind::Translation) return kPi * R;
  return kPi * R * R * R * amplitude * amplitude;
}

PerturbedDomain perturbed_domain(const PerturbationSpec& spec, double R,
                                 double t) {
  if (!(R > 0.0)) throw InvalidArgument("perturbed_domain: R must be > 0");
  PerturbedDomain out;
  if (spec.kind == PerturbationSpec::Kind::Translation) {
    out.star = StarDomain::disk(R);
    // J(B_R + t e; f) = J(B_R; f(. + t e)) by change of variables
    out.shift_x = t * spec.dir_x;
    out.shift_y = t * spec.dir_y;
    return out;
  }
  out.star = StarDomain::fourier_mode(R, spec.mode_k, t * spec.amplitude, true);
  return out;
}

namespace {

struct Derivatives {
  double first = 0.0, second = 0.0, first_err = 0.0, second_err = 0.0;
};

// Central differences on {-t, -t/2, 0, t/2, t} with one Richardson step.
Derivatives stencil_derivatives(const std::vector<double>& js, double t0) {
  const double jm2 = js[0], jm1 = js[1], j0 = js[2], jp1 = js[3], jp2 = js[4];
  const double d1_t = (jp2 - jm2) / (2.0 * t0);
  const double d1_h = (jp1 - jm1) / t0;  // step t0/2
  const double d2_t = (jp2 + jm2 - 2.0 * j0) / (t0 * t0);
  const double d2_h = (jp1 + jm1 - 2.0 * j0) / (0.25 * t0 * t0);
  Derivatives d;
  d.first = (4.0 * d1_h - d1_t) / 3.0;
  d.second = (4.0 * d2_h - d2_t) / 3.0;
  d.first_err = std::abs(d1_h - d1_t) / 3.0;
  d.second_err = std::abs(d2_h - d2_t) / 3.0;
  return d;
}

double flow_energy_at(const BallProblem& p, const RadialSource& src,
                      const PerturbationSpec& spec, double t,
                      const FlowOptions& opts, int rings, int ring_factor) {
  const PerturbedDomain dom = perturbed_domain(spec, p.R, t);
  const DiskBc bc =
      p.robin() ? DiskBc::robin(*p.beta) : DiskBc::make_dirichlet();
  if (spec.kind == PerturbationSpec::Kind::Translation) {
    const SourceField f = make_source_field(src, dom.shift_x, dom.shift_y);
    return energy(solve_disk(p.R, bc, f, opts.spectral), f);
  }
  auto mesh = std::make_shared<const Mesh>(
      build_star_mesh_structured(dom.star, rings, ring_factor));
  const SourceField f = make_source_field(src);
  const FemBc fem_bc =
      p.robin() ? FemBc::robin(*p.beta) : FemBc::dirichlet();
  const FemField field = assemble_solve(mesh, fem_bc, f);
  return energy(field, f);
}

}  // namespace

FlowSample energy_along_flow(const BallProblem& p, const RadialSource& src,
                             const PerturbationSpec& spec,
                             const FlowOptions& opts) {
  if (p.n != 2)
    throw InvalidArgument("energy_along_flow: solver-backed flows are 2-d");
  const double t0 = opts.stencil > 0.0 ? opts.stencil : 0.02 * p.R;

  FlowSample out;
  out.stencil = t0;
  out.ts = {-t0, -0.5 * t0, 0.0, 0.5 * t0, t0};

  const StarDomain base = StarDomain::disk(p.R);
  int ring_factor = base.mesh_ring_factor();
  if (spec.kind == PerturbationSpec::Kind::StarMode) {
    const StarDomain probe =
        StarDomain::fourier_mode(p.R, spec.mode_k, 1e-6, true);
    ring_factor = probe.mesh_ring_factor();
  }
  const int rings =
      std::max(4, static_cast<int>(std::lround(p.R / opts.fem_h)));

  out.js.reserve(out.ts.size());
  for (double t : out.ts)
    out.js.push_back(flow_energy_at(p, src, spec, t, opts, rings, ring_factor));
  Derivatives d = stencil_derivatives(out.js, t0);

  if (opts.refine_mesh && spec.kind == PerturbationSpec::Kind::StarMode) {
    std::vector<double> js_fine;
    js_fine.reserve(out.ts.size());
    for (double t : out.ts)
      js_fine.push_back(
          flow_energy_at(p, src, spec, t, opts, 2 * rings, ring_factor));
    const Derivatives df = stencil_derivatives(js_fine, t0);
    Derivatives ext;
    // P1 energies converge at O(h^2): one Richardson step in h
    ext.first = (4.0 * df.first - d.first) / 3.0;
    ext.second = (4.0 * df.second - d.second) / 3.0;
    ext.first_err = std::max(df.first_err, std::abs(df.first - d.first) / 3.0);
    ext.second_err =
        std::max(df.second_err, std::abs(df.second - d.second) / 3.0);
    out.js = js_fine;
    d = ext;
  }

  out.first_derivative = d.first;
  out.second_derivative = d.second;
  out.first_error_estimate = d.first_err;
  out.second_error_estimate = d.second_err;
  return out;
}

double first_variation_check(const BallProblem& p, const RadialSource& src,
                             const PerturbationSpec& spec,
                             const FlowOptions& opts) {
  return energy_along_flow(p, src, spec, opts).first_derivative;
}

}  // namespace heatshape
