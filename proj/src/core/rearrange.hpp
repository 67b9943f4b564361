#ifndef HEATSHAPE_REARRANGE_HPP
#define HEATSHAPE_REARRANGE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "radial_source.hpp"
#include "star_domain.hpp"

namespace heatshape {

// Uniform Cartesian grid field with per-cell domain-membership fractions
// (0/1 inside/outside, 4x4 subsampled area fraction on boundary cells).
struct GridField {
  double x0 = 0.0, y0 = 0.0;
  double cell = 0.0;
  int nx = 0, ny = 0;
  std::vector<double> value;
  std::vector<double> fraction;

  double cell_area() const { return cell * cell; }
  double total_measure() const;
  double cx(int i) const { return x0 + (i + 0.5) * cell; }
  double cy(int j) const { return y0 + (j + 0.5) * cell; }
  double& at(int i, int j) { return value[static_cast<size_t>(j) * nx + i]; }
  double at(int i, int j) const { return value[static_cast<size_t>(j) * nx + i]; }
  double frac(int i, int j) const {
    return fraction[static_cast<size_t>(j) * nx + i];
  }

  // CSV export: "x,y,value,fraction".
  void export_csv(const std::string& path) const;
};

// Rasterize fn over the domain onto an n x n grid covering its bounding box.
GridField rasterize(const Domain2D& domain,
                    const std::function<double(double, double)>& fn, int n);

// Decreasing rearrangement data: cells sorted by value with cumulative
// measures; value_at_measure(s) = f*(s) = inf{t : mu(t) < s}.
struct DecreasingRearrangement {
  std::vector<double> values;   // descending
  std::vector<double> measures; // prefix sums, same length
  double total = 0.0;

  double value_at_measure(double s) const;
  double distribution(double t) const;  // mu(t) = measure{f > t}
};

DecreasingRearrangement decreasing_rearrangement(const GridField& g);

// Spherical decreasing rearrangement onto the centered ball of equal
// measure, sampled on a fresh grid of the same resolution.
GridField spherical_rearrangement(const GridField& g);

// Lemma-style domination check: (f|_Omega)^sharp(x) <= f(x) on B_R up to a
// one-cell slack (the reference is evaluated at the radius shrunk by one
// cell diagonal, which dominates the grid measure quantization).
struct DominationReport {
  double max_violation = 0.0;       // against the slack-adjusted reference
  double max_raw_difference = 0.0;  // against f(|x|) itself
  double measure_mismatch = 0.0;    // | |Omega| - pi R^2 |
  int cells_checked = 0;
  bool ok = false;
};

DominationReport lemma_domination_check(const RadialSource& src,
                                        const Domain2D& domain, double R,
                                        int grid_n = 256);

// Hardy-Littlewood products on step functions: int f g and int f* g*.
struct HardyLittlewoodCheck {
  double plain = 0.0;
  double rearranged = 0.0;
  double slack = 0.0;  // boundary-cell measure * sup|f| * sup|g|
};

HardyLittlewoodCheck hardy_littlewood(const GridField& f, const GridField& g);

// Closed-form two-disk counterexample: Omega = D_1 (source f = 1) plus a
// disjoint disk of radius eps (f = 0); the equal-measure ball has radius
// c = sqrt(1 + eps^2). Comparison fails iff beta < beta0 = (1 - 1/c)/ln c.
struct TwoDiskReport {
  double eps = 0.0;
  double c = 0.0;
  double beta = 0.0;
  double beta0 = 0.0;
  double linf_domain = 0.0;
  double linf_ball = 0.0;
  double delta = 0.0;  // linf_ball - linf_domain
  bool comparison_fails = false;
};

TwoDiskReport two_disk_counterexample(double eps, double beta);

// Talenti comparison experiment: J and A on Omega vs the centered ball of
// equal measure, plus the grid Hardy-Littlewood check.
struct TalentiReport {
  bool dirichlet = true;
  double beta = 0.0;
  double j_domain = 0.0;
  double j_ball = 0.0;
  double j_margin = 0.0;  // j_domain - j_ball (>= 0 expected, Dirichlet)
  double a_domain = 0.0;
  double a_ball = 0.0;
  double a_margin = 0.0;  // a_ball - a_domain (>= 0 expected)
  HardyLittlewoodCheck hl;
};

struct TalentiOptions {
  double fem_h = 0.02;
  int grid_n = 128;
  int spectral_modes = 64;
  int spectral_points = 512;
};

TalentiReport talenti_experiments(const Domain2D& domain,
                                  const RadialSource& src,
                                  std::optional<double> beta,
                                  const TalentiOptions& opts = {});

}  // namespace heatshape

#endif
