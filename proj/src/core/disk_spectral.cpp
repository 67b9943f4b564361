#include "disk_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "banded.hpp"
#include "errors.hpp"

namespace heatshape {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kOrder = 4;  // element degree

// Gauss-Lobatto nodes of degree 4 on [-1, 1].
const double kRef[kOrder + 1] = {-1.0, -std::sqrt(3.0 / 7.0), 0.0,
                                 std::sqrt(3.0 / 7.0), 1.0};

// 6-point Gauss-Legendre rule on [-1, 1].
const double kQx[6] = {-0.932469514203152028, -0.661209386466264514,
                       -0.238619186083196909, 0.238619186083196909,
                       0.661209386466264514,  0.932469514203152028};
const double kQw[6] = {0.171324492379170345, 0.360761573048138608,
                       0.467913934572691047, 0.467913934572691047,
                       0.360761573048138608, 0.171324492379170345};

double lagrange_value(int i, double x) {
  double v = 1.0;
  for (int j = 0; j <= kOrder; ++j)
    if (j != i) v *= (x - kRef[j]) / (kRef[i] - kRef[j]);
  return v;
}

double lagrange_deriv(int i, double x) {
  double acc = 0.0;
  for (int m = 0; m <= kOrder; ++m) {
    if (m == i) continue;
    double term = 1.0 / (kRef[i] - kRef[m]);
    for (int j = 0; j <= kOrder; ++j)
      if (j != i && j != m) term *= (x - kRef[j]) / (kRef[i] - kRef[j]);
    acc += term;
  }
  return acc;
}

}  // namespace

void SpectralConfig::validate() const {
  if (angular_modes < 1)
    throw InvalidArgument("spectral config: angular_modes must be >= 1");
  if (radial_points < 16)
    throw InvalidArgument("spectral config: radial_points must be >= 16");
}

DiskBc DiskBc::robin(double beta) {
  if (!(beta > 0.0)) throw InvalidArgument("disk bc: beta must be > 0");
  return DiskBc{false, beta};
}

DiskBc DiskBc::make_dirichlet() { return DiskBc{true, 0.0}; }

SourceField make_source_field(const RadialSource& src, double shift_x,
                              double shift_y) {
  if (src.dim() != 2)
    throw InvalidArgument("spectral solves take 2-d sources");
  SourceField f;
  f.radial = (shift_x == 0.0 && shift_y == 0.0);
  f.eval = [src, shift_x, shift_y](double x, double y) {
    return src.value_at(x, y, shift_x, shift_y);
  };
  return f;
}

SourceField constant_source_field(double c) {
  return SourceField{[c](double, double) { return c; }, true};
}

struct FourierRadialField::Workspace {
  double R = 1.0;
  int elements = 0;
  int dofs = 0;
  std::vector<double> vertices;    // element endpoints, size elements+1
  std::vector<double> node_r;      // global node radii, size dofs
  std::vector<double> quad_r;      // elements x 6
  std::vector<double> quad_w;      // elements x 6 (includes jacobian)
  double phi[kOrder + 1][6];       // basis at quad points
  double dphi[kOrder + 1][6];      // d/dxi at quad points

  int dof(int e, int i) const { return e * kOrder + i; }

  void build(double radius, int radial_points) {
    R = radius;
    elements = radial_points - 1;
    dofs = elements * kOrder + 1;
    vertices.resize(radial_points);
    for (int j = 0; j < radial_points; ++j)
      vertices[j] = R * std::sin(0.5 * kPi * j / (radial_points - 1));
    vertices[radial_points - 1] = R;
    node_r.assign(dofs, 0.0);
    quad_r.assign(static_cast<size_t>(elements) * 6, 0.0);
    quad_w.assign(static_cast<size_t>(elements) * 6, 0.0);
    for (int e = 0; e < elements; ++e) {
      const double a = vertices[e], b = vertices[e + 1];
      const double h = b - a;
      for (int i = 0; i <= kOrder; ++i)
        node_r[dof(e, i)] = a + 0.5 * h * (kRef[i] + 1.0);
      for (int q = 0; q < 6; ++q) {
        quad_r[e * 6 + q] = a + 0.5 * h * (kQx[q] + 1.0);
        quad_w[e * 6 + q] = 0.5 * h * kQw[q];
      }
    }
    node_r.back() = R;
    for (int i = 0; i <= kOrder; ++i)
      for (int q = 0; q < 6; ++q) {
        phi[i][q] = lagrange_value(i, kQx[q]);
        dphi[i][q] = lagrange_deriv(i, kQx[q]);
      }
  }

  // Stiffness-plus-mass operator for mode k, with boundary handling.
  BandedSpd assemble(int k, const DiskBc& bc) const {
    BandedSpd A(dofs, kOrder);
    for (int e = 0; e < elements; ++e) {
      const double h = vertices[e + 1] - vertices[e];
      const double dxdr = 2.0 / h;
      for (int q = 0; q < 6; ++q) {
        const double r = quad_r[e * 6 + q];
        const double w = quad_w[e * 6 + q];
        const double mass = (k == 0) ? 0.0 : w * (k * k / r) /* * r / r^2 */;
        for (int i = 0; i <= kOrder; ++i)
          for (int j = i; j <= kOrder; ++j) {
            double v = w * dxdr * dxdr * dphi[i][q] * dphi[j][q] * r;
            if (k != 0) v += mass * phi[i][q] * phi[j][q];
            A.add(dof(e, i), dof(e, j), v);
          }
      }
    }
    if (bc.dirichlet)
      A.set_identity_row(dofs - 1);
    else
      A.add(dofs - 1, dofs - 1, bc.beta * R);
    if (k >= 1) A.set_identity_row(0);  // regularity: c(0) = 0
    return A;
  }

  std::vector<double> load(const std::vector<double>& g_at_quad, int k,
                           const DiskBc& bc) const {
    std::vector<double> b(dofs, 0.0);
    for (int e = 0; e < elements; ++e)
      for (int q = 0; q < 6; ++q) {
        const double r = quad_r[e * 6 + q];
        const double w = quad_w[e * 6 + q];
        const double g = g_at_quad[e * 6 + q];
        for (int i = 0; i <= kOrder; ++i) b[dof(e, i)] += w * g * phi[i][q] * r;
      }
    if (bc.dirichlet) b[dofs - 1] = 0.0;
    if (k >= 1) b[0] = 0.0;
    return b;
  }

  // Evaluate a dof vector (or its derivative) at radius r.
  double eval(const std::vector<double>& u, double r, bool deriv) const {
    const double rc = std::clamp(r, 0.0, R);
    int lo = 0, hi = elements;  // find element with vertices[e] <= rc
    while (hi - lo > 1) {
      const int mid = (lo + hi) / 2;
      if (vertices[mid] <= rc)
        lo = mid;
      else
        hi = mid;
    }
    const int e = lo;
    const double h = vertices[e + 1] - vertices[e];
    const double xi = 2.0 * (rc - vertices[e]) / h - 1.0;
    double acc = 0.0;
    for (int i = 0; i <= kOrder; ++i)
      acc += u[dof(e, i)] *
             (deriv ? lagrange_deriv(i, xi) * 2.0 / h : lagrange_value(i, xi));
    return acc;
  }

  double integrate_quad(const std::vector<double>& at_quad) const {
    double acc = 0.0;
    for (size_t q = 0; q < at_quad.size(); ++q) acc += at_quad[q] * quad_w[q];
    return acc;
  }

  // int g(r) u(r) r dr for a dof vector u and samples g at quad points.
  double dot_quad(const std::vector<double>& u,
                  const std::vector<double>& g_at_quad) const {
    double acc = 0.0;
    for (int e = 0; e < elements; ++e)
      for (int q = 0; q < 6; ++q) {
        double uq = 0.0;
        for (int i = 0; i <= kOrder; ++i) uq += u[dof(e, i)] * phi[i][q];
        acc += quad_w[e * 6 + q] * g_at_quad[e * 6 + q] * uq * quad_r[e * 6 + q];
      }
    return acc;
  }
};

namespace {

// Angular Fourier samples of the source at every radial quadrature point.
// modes[k][cos/sin] indexed as g[2k] (cos), g[2k+1] (sin); normalization:
// f = g0 + sum_k (g_{2k} cos k th + g_{2k+1} sin k th).
struct SourceModes {
  int K = 0;
  std::vector<std::vector<double>> g;  // size 2K+2, each over quad points

  double mode_energy(const FourierRadialField::Workspace& ws, int k) const {
    const double w = (k == 0) ? 2.0 * kPi : kPi;
    std::vector<double> sq(g[2 * k].size());
    for (size_t q = 0; q < sq.size(); ++q) {
      double s = g[2 * k][q] * g[2 * k][q];
      if (k >= 1) s += g[2 * k + 1][q] * g[2 * k + 1][q];
      sq[q] = s * ws.quad_r[q];
    }
    return w * ws.integrate_quad(sq);
  }
};

SourceModes sample_source_modes(const FourierRadialField::Workspace& ws,
                                const SourceField& src, int K) {
  SourceModes sm;
  sm.K = K;
  const size_t nq = ws.quad_r.size();
  sm.g.assign(2 * K + 2, std::vector<double>(nq, 0.0));
  if (src.radial) {
    for (size_t q = 0; q < nq; ++q) sm.g[0][q] = src.eval(ws.quad_r[q], 0.0);
    return sm;
  }
  const int nth = 4 * K;
  std::vector<double> c(nth), s(nth);
  for (int m = 0; m < nth; ++m) {
    c[m] = std::cos(2.0 * kPi * m / nth);
    s[m] = std::sin(2.0 * kPi * m / nth);
  }
  std::vector<double> fs(nth);
  for (size_t q = 0; q < nq; ++q) {
    const double r = ws.quad_r[q];
    for (int m = 0; m < nth; ++m) fs[m] = src.eval(r * c[m], r * s[m]);
    // running angle multiples via complex recurrence
    for (int k = 0; k <= K; ++k) {
      double ac = 0.0, as = 0.0;
      for (int m = 0; m < nth; ++m) {
        const int km = static_cast<int>((static_cast<long long>(k) * m) % nth);
        ac += fs[m] * c[km];
        as += fs[m] * s[km];
      }
      if (k == 0) {
        sm.g[0][q] = ac / nth;
      } else {
        sm.g[2 * k][q] = 2.0 * ac / nth;
        sm.g[2 * k + 1][q] = 2.0 * as / nth;
      }
    }
  }
  return sm;
}

}  // namespace

FourierRadialField solve_disk(double R, DiskBc bc, const SourceField& source,
                              const SpectralConfig& cfg) {
  if (!(R > 0.0)) throw InvalidArgument("solve_disk: R must be > 0");
  cfg.validate();
  auto ws = std::make_shared<FourierRadialField::Workspace>();
  ws->build(R, cfg.radial_points);

  const int K = cfg.angular_modes;
  const SourceModes sm = sample_source_modes(*ws, source, K);

  FourierRadialField field;
  field.ws_ = ws;
  field.R_ = R;
  field.bc_ = bc;
  field.cfg_ = cfg;
  field.cos_.assign(K + 1, {});
  field.sin_.assign(K + 1, {});

  double total_src_energy = 0.0, top_src_energy = 0.0;
  for (int k = 0; k <= K; ++k) {
    const double ek = sm.mode_energy(*ws, k);
    total_src_energy += ek;
    if (k == K) top_src_energy = ek;
  }
  field.aliasing_warning_ =
      total_src_energy > 0.0 && top_src_energy > 1e-6 * total_src_energy;

  for (int k = 0; k <= K; ++k) {
    const bool zero_cos =
        std::all_of(sm.g[2 * k].begin(), sm.g[2 * k].end(),
                    [](double v) { return v == 0.0; });
    const bool zero_sin =
        k == 0 || std::all_of(sm.g[2 * k + 1].begin(), sm.g[2 * k + 1].end(),
                              [](double v) { return v == 0.0; });
    if (zero_cos && zero_sin) {
      field.cos_[k].assign(ws->dofs, 0.0);
      if (k >= 1) field.sin_[k].assign(ws->dofs, 0.0);
      continue;
    }
    BandedSpd A = ws->assemble(k, bc);
    try {
      A.factorize();
    } catch (const NumericError& e) {
      std::ostringstream msg;
      msg << "solve_disk: mode " << k << ": " << e.what();
      throw NumericError(msg.str());
    }
    field.cos_[k] = ws->load(sm.g[2 * k], k, bc);
    A.solve(field.cos_[k]);
    if (k >= 1) {
      field.sin_[k] = ws->load(sm.g[2 * k + 1], k, bc);
      A.solve(field.sin_[k]);
    }
  }
  return field;
}

double FourierRadialField::value(double r, double theta) const {
  double acc = ws_->eval(cos_[0], r, false);
  for (int k = 1; k <= cfg_.angular_modes; ++k) {
    if (cos_[k].empty()) continue;
    acc += ws_->eval(cos_[k], r, false) * std::cos(k * theta) +
           ws_->eval(sin_[k], r, false) * std::sin(k * theta);
  }
  return acc;
}

double FourierRadialField::cos_coefficient(int k, double r) const {
  return ws_->eval(cos_[k], r, false);
}

double FourierRadialField::sin_coefficient(int k, double r) const {
  if (k == 0) return 0.0;
  return ws_->eval(sin_[k], r, false);
}

std::pair<double, double> FourierRadialField::complex_coefficient(
    int k, double r) const {
  const int ka = std::abs(k);
  if (ka > cfg_.angular_modes)
    throw InvalidArgument("complex_coefficient: |k| beyond the mode cutoff");
  if (ka == 0) return {cos_coefficient(0, r), 0.0};
  const double re = 0.5 * cos_coefficient(ka, r);
  const double im = -0.5 * sin_coefficient(ka, r);
  return k > 0 ? std::make_pair(re, im) : std::make_pair(re, -im);
}

double FourierRadialField::mode_abs_max(int k) const {
  double m = 0.0;
  for (double v : cos_[k]) m = std::max(m, std::abs(v));
  if (k >= 1)
    for (double v : sin_[k]) m = std::max(m, std::abs(v));
  return m;
}

double FourierRadialField::boundary_residual(int k) const {
  if (bc_.dirichlet) {
    double res = std::abs(cos_[k].back());
    if (k >= 1) res = std::max(res, std::abs(sin_[k].back()));
    return res;
  }
  auto res_one = [&](const std::vector<double>& u) {
    if (u.empty()) return 0.0;
    return std::abs(ws_->eval(u, R_, true) + bc_.beta * u.back());
  };
  double res = res_one(cos_[k]);
  if (k >= 1) res = std::max(res, res_one(sin_[k]));
  return res;
}

double FourierRadialField::linf_norm() const {
  const int nr = 128, nth = 256;
  double best = 0.0, br = 0.0, bt = 0.0;
  for (int i = 0; i <= nr; ++i) {
    const double r = R_ * i / nr;
    for (int j = 0; j < nth; ++j) {
      const double t = 2.0 * kPi * j / nth;
      const double v = std::abs(value(r, t));
      if (v > best) {
        best = v;
        br = r;
        bt = t;
      }
    }
  }
  // local refinement around the coarse max
  double dr = R_ / nr, dt = 2.0 * kPi / nth;
  for (int pass = 0; pass < 5; ++pass) {
    double nbr = br, nbt = bt;
    for (int i = -4; i <= 4; ++i)
      for (int j = -4; j <= 4; ++j) {
        const double r = std::clamp(br + i * dr / 4.0, 0.0, R_);
        const double t = bt + j * dt / 4.0;
        const double v = std::abs(value(r, t));
        if (v > best) {
          best = v;
          nbr = r;
          nbt = t;
        }
      }
    br = nbr;
    bt = nbt;
    dr /= 4.0;
    dt /= 4.0;
  }
  return best;
}

double FourierRadialField::integral_u() const {
  std::vector<double> at_quad(ws_->quad_r.size());
  for (int e = 0; e < ws_->elements; ++e)
    for (int q = 0; q < 6; ++q) {
      double uq = 0.0;
      for (int i = 0; i <= kOrder; ++i)
        uq += cos_[0][ws_->dof(e, i)] * ws_->phi[i][q];
      at_quad[e * 6 + q] = uq * ws_->quad_r[e * 6 + q];
    }
  return 2.0 * kPi * ws_->integrate_quad(at_quad);
}

double FourierRadialField::average() const {
  return integral_u() / (kPi * R_ * R_);
}

void FourierRadialField::export_csv(const std::string& path, int n_r,
                                    int n_theta) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out.precision(17);
  out << "r,theta,u\n";
  for (int i = 0; i <= n_r; ++i) {
    const double r = R_ * i / n_r;
    for (int j = 0; j < n_theta; ++j) {
      const double t = 2.0 * kPi * j / n_theta;
      out << r << "," << t << "," << value(r, t) << "\n";
    }
  }
}

namespace {

// Shared by energy/total_heat: per-mode a(u,u) and L(u) with the assembly
// quadrature, weighted 2*pi (k=0) or pi (k>=1).
struct EnergyPieces {
  double quad_form = 0.0;  // sum w_k a_k(u, u)
  double load = 0.0;       // sum w_k L_k(u) = int f u
};

EnergyPieces energy_pieces(const FourierRadialField::Workspace& ws,
                           const SpectralConfig& cfg, const DiskBc& bc,
                           const SourceField& source,
                           const std::vector<std::vector<double>>& cosd,
                           const std::vector<std::vector<double>>& sind) {
  SourceModes sm = sample_source_modes(ws, source, cfg.angular_modes);
  EnergyPieces ep;
  for (int k = 0; k <= cfg.angular_modes; ++k) {
    const double w = (k == 0) ? 2.0 * kPi : kPi;
    const BandedSpd A = ws.assemble(k, bc);
    auto piece = [&](const std::vector<double>& u,
                     const std::vector<double>& g) {
      if (u.empty()) return;
      const std::vector<double> Au = A.multiply(u);
      double uAu = 0.0;
      for (int i = 0; i < ws.dofs; ++i) uAu += u[i] * Au[i];
      ep.quad_form += w * uAu;
      ep.load += w * ws.dot_quad(u, g);
    };
    piece(cosd[k], sm.g[2 * k]);
    if (k >= 1) piece(sind[k], sm.g[2 * k + 1]);
  }
  return ep;
}

}  // namespace

double energy(const FourierRadialField& field, const SourceField& source) {
  const EnergyPieces ep = energy_pieces(*field.ws_, field.cfg_, field.bc_,
                                        source, field.cos_, field.sin_);
  return 0.5 * ep.quad_form - ep.load;
}

double total_heat(const FourierRadialField& field, const SourceField& source) {
  const EnergyPieces ep = energy_pieces(*field.ws_, field.cfg_, field.bc_,
                                        source, field.cos_, field.sin_);
  return ep.load;
}

}  // namespace heatshape
