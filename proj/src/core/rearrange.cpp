#include "rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>

#include "disk_spectral.hpp"
#include "errors.hpp"
#include "fem2d.hpp"
#include "mesh2d.hpp"

namespace heatshape {

namespace {
constexpr double kPi = std::numbers::pi;
}

double GridField::total_measure() const {
  double acc = 0.0;
  for (double f : fraction) acc += f;
  return acc * cell_area();
}

void GridField::export_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out.precision(17);
  out << "x,y,value,fraction\n";
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      out << cx(i) << "," << cy(j) << "," << at(i, j) << "," << frac(i, j)
          << "\n";
}

GridField rasterize(const Domain2D& domain,
                    const std::function<double(double, double)>& fn, int n) {
  if (n < 8) throw InvalidArgument("rasterize: grid too coarse");
  const double rmax = domain.star.max_radius();
  const double pad = 1.02 * rmax;
  GridField g;
  g.nx = g.ny = n;
  g.x0 = domain.cx - pad;
  g.y0 = domain.cy - pad;
  g.cell = 2.0 * pad / n;
  g.value.assign(static_cast<size_t>(n) * n, 0.0);
  g.fraction.assign(static_cast<size_t>(n) * n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double x = g.cx(i), y = g.cy(j);
      const double h = 0.5 * g.cell;
      const bool c00 = domain.contains(x - h, y - h);
      const bool c10 = domain.contains(x + h, y - h);
      const bool c01 = domain.contains(x - h, y + h);
      const bool c11 = domain.contains(x + h, y + h);
      const bool cc = domain.contains(x, y);
      double frac;
      if (c00 && c10 && c01 && c11 && cc) {
        frac = 1.0;
      } else if (!c00 && !c10 && !c01 && !c11 && !cc) {
        frac = 0.0;
      } else {
        int inside = 0;  // 4x4 subsampling of boundary cells
        for (int a = 0; a < 4; ++a)
          for (int b = 0; b < 4; ++b)
            if (domain.contains(x - h + (a + 0.5) * g.cell / 4.0,
                                y - h + (b + 0.5) * g.cell / 4.0))
              ++inside;
        frac = inside / 16.0;
      }
      g.fraction[static_cast<size_t>(j) * n + i] = frac;
      if (frac > 0.0) g.at(i, j) = fn(x, y);
    }
  return g;
}

DecreasingRearrangement decreasing_rearrangement(const GridField& g) {
  std::vector<std::pair<double, double>> cells;  // (value, measure)
  cells.reserve(g.value.size());
  const double ca = g.cell_area();
  for (size_t idx = 0; idx < g.value.size(); ++idx)
    if (g.fraction[idx] > 0.0)
      cells.emplace_back(g.value[idx], g.fraction[idx] * ca);
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  DecreasingRearrangement out;
  out.values.reserve(cells.size());
  out.measures.reserve(cells.size());
  double acc = 0.0;
  for (const auto& [v, m] : cells) {
    acc += m;
    out.values.push_back(v);
    out.measures.push_back(acc);
  }
  out.total = acc;
  return out;
}

double DecreasingRearrangement::value_at_measure(double s) const {
  if (values.empty() || s >= total) return 0.0;
  if (s <= 0.0) return values.front();
  // f*(s) = values[j] for s in (measures[j-1], measures[j]]
  const auto it = std::lower_bound(measures.begin(), measures.end(), s);
  return values[static_cast<size_t>(it - measures.begin())];
}

double DecreasingRearrangement::distribution(double t) const {
  // mu(t) = total measure where value > t; values are sorted descending
  const auto it = std::upper_bound(
      values.begin(), values.end(), t,
      [](double lhs, double rhs) { return lhs > rhs; });
  if (it == values.begin()) return 0.0;
  return measures[static_cast<size_t>(it - values.begin()) - 1];
}

GridField spherical_rearrangement(const GridField& g) {
  const DecreasingRearrangement dr = decreasing_rearrangement(g);
  const double R = std::sqrt(dr.total / kPi);
  const int n = std::max(g.nx, g.ny);
  Domain2D ball{StarDomain::disk(std::max(R, 1e-300)), 0.0, 0.0};
  GridField out = rasterize(
      ball,
      [&dr](double x, double y) {
        return dr.value_at_measure(kPi * (x * x + y * y));
      },
      n);
  return out;
}

DominationReport lemma_domination_check(const RadialSource& src,
                                        const Domain2D& domain, double R,
                                        int grid_n) {
  if (!(R > 0.0)) throw InvalidArgument("lemma check: R must be > 0");
  const GridField g = rasterize(
      domain, [&src](double x, double y) { return src.value(std::hypot(x, y)); },
      grid_n);
  DominationReport rep;
  rep.measure_mismatch = std::abs(domain.area() - kPi * R * R);
  if (rep.measure_mismatch > 2.0 * g.cell_area()) {
    std::ostringstream msg;
    msg << "lemma check: |Omega| differs from pi R^2 by "
        << rep.measure_mismatch << " (more than two grid cells)";
    throw InvalidArgument(msg.str());
  }
  const DecreasingRearrangement dr = decreasing_rearrangement(g);
  const double diag = g.cell * std::sqrt(2.0);
  rep.max_violation = -1e300;
  rep.max_raw_difference = -1e300;
  const int m = grid_n;
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < m; ++i) {
      const double x = -R + (i + 0.5) * 2.0 * R / m;
      const double y = -R + (j + 0.5) * 2.0 * R / m;
      const double r = std::hypot(x, y);
      if (r >= R) continue;
      const double sharp = dr.value_at_measure(kPi * r * r);
      rep.max_raw_difference =
          std::max(rep.max_raw_difference, sharp - src.value(r));
      const double reference = src.value(std::max(0.0, r - diag));
      rep.max_violation = std::max(rep.max_violation, sharp - reference);
      ++rep.cells_checked;
    }
  rep.ok = rep.max_violation <= 1e-12;
  return rep;
}

HardyLittlewoodCheck hardy_littlewood(const GridField& f, const GridField& g) {
  if (f.nx != g.nx || f.ny != g.ny || f.cell != g.cell)
    throw InvalidArgument("hardy_littlewood: incompatible grids");
  HardyLittlewoodCheck out;
  const double ca = f.cell_area();
  double fmax = 0.0, gmax = 0.0, boundary_measure = 0.0;
  for (size_t idx = 0; idx < f.value.size(); ++idx) {
    const double m = std::min(f.fraction[idx], g.fraction[idx]) * ca;
    if (m > 0.0) {
      out.plain += f.value[idx] * g.value[idx] * m;
      fmax = std::max(fmax, std::abs(f.value[idx]));
      gmax = std::max(gmax, std::abs(g.value[idx]));
    }
    const double fr = std::min(f.fraction[idx], g.fraction[idx]);
    if (fr > 0.0 && fr < 1.0) boundary_measure += ca;
  }
  const DecreasingRearrangement df = decreasing_rearrangement(f);
  const DecreasingRearrangement dg = decreasing_rearrangement(g);
  // integrate f*(s) g*(s) ds over the merged measure partition
  size_t i = 0, j = 0;
  double s = 0.0;
  const double total = std::min(df.total, dg.total);
  while (s < total && i < df.values.size() && j < dg.values.size()) {
    const double next = std::min(df.measures[i], dg.measures[j]);
    out.rearranged += df.values[i] * dg.values[j] * (next - s);
    s = next;
    if (df.measures[i] <= next) ++i;
    if (j < dg.measures.size() && dg.measures[j] <= next) ++j;
  }
  out.slack = boundary_measure * std::max(fmax * gmax, 1e-300);
  return out;
}

TwoDiskReport two_disk_counterexample(double eps, double beta) {
  if (!(eps > 0.0)) throw InvalidArgument("two-disk: eps must be > 0");
  if (!(beta > 0.0)) throw InvalidArgument("two-disk: beta must be > 0");
  TwoDiskReport rep;
  rep.eps = eps;
  rep.beta = beta;
  rep.c = std::sqrt(1.0 + eps * eps);
  const double logc = std::log(rep.c);
  rep.beta0 = (1.0 - 1.0 / rep.c) / logc;
  rep.linf_domain = 1.0 / (2.0 * beta) + 0.25;
  rep.linf_ball = 1.0 / (2.0 * beta * rep.c) + 0.5 * logc + 0.25;
  rep.delta = rep.linf_ball - rep.linf_domain;
  rep.comparison_fails = beta < rep.beta0;
  return rep;
}

TalentiReport talenti_experiments(const Domain2D& domain,
                                  const RadialSource& src,
                                  std::optional<double> beta,
                                  const TalentiOptions& opts) {
  if (src.dim() != 2)
    throw InvalidArgument("talenti experiments are 2-d");
  TalentiReport rep;
  rep.dirichlet = !beta.has_value();
  rep.beta = beta.value_or(0.0);

  const double Rstar = std::sqrt(domain.area() / kPi);
  SpectralConfig cfg;
  cfg.angular_modes = opts.spectral_modes;
  cfg.radial_points = opts.spectral_points;
  const DiskBc ball_bc =
      beta ? DiskBc::robin(*beta) : DiskBc::make_dirichlet();

  // centered ball of equal measure
  const SourceField f_ball = make_source_field(src);
  const FourierRadialField ball = solve_disk(Rstar, ball_bc, f_ball, cfg);
  rep.j_ball = energy(ball, f_ball);
  rep.a_ball = ball.integral_u();

  const bool shifted_disk = domain.star.cos_coeffs().empty() &&
                            domain.star.sin_coeffs().empty();
  std::function<double(double, double)> u_domain;  // in domain coordinates
  if (shifted_disk) {
    // disk translated by (cx, cy): solve on the centered disk with the
    // source shifted the opposite way
    const SourceField f = make_source_field(src, domain.cx, domain.cy);
    const FourierRadialField field =
        solve_disk(domain.star.radius(0.0), ball_bc, f, cfg);
    rep.j_domain = energy(field, f);
    rep.a_domain = field.integral_u();
    const auto fld = std::make_shared<FourierRadialField>(field);
    u_domain = [fld, &domain](double x, double y) {
      const double xx = x - domain.cx, yy = y - domain.cy;
      return fld->value(std::hypot(xx, yy), std::atan2(yy, xx));
    };
  } else {
    if (domain.cx != 0.0 || domain.cy != 0.0)
      throw InvalidArgument(
          "talenti experiments: non-disk domains must be centered");
    auto mesh = std::make_shared<const Mesh>(
        build_star_mesh(domain.star, opts.fem_h));
    const SourceField f = make_source_field(src);
    const FemBc bc = beta ? FemBc::robin(*beta) : FemBc::dirichlet();
    const FemField field = assemble_solve(mesh, bc, f);
    rep.j_domain = energy(field, f);
    rep.a_domain = integral_u(field);
    const auto fld = std::make_shared<FemField>(field);
    // boundary raster cells sample up to a cell diagonal outside the mesh
    // polygon; extend barycentrically that far
    const double tol = std::max(
        0.5 * opts.fem_h, 3.0 * domain.star.max_radius() / opts.grid_n);
    u_domain = [fld, tol](double x, double y) {
      return fld->value(x, y, tol);
    };
  }
  rep.j_margin = rep.j_domain - rep.j_ball;
  rep.a_margin = rep.a_ball - rep.a_domain;

  // Hardy-Littlewood on grids over Omega
  const GridField fg = rasterize(
      domain, [&src](double x, double y) { return src.value(std::hypot(x, y)); },
      opts.grid_n);
  const GridField ug = rasterize(domain, u_domain, opts.grid_n);
  rep.hl = hardy_littlewood(fg, ug);
  return rep;
}

}  // namespace heatshape
