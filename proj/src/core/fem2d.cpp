#include "fem2d.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "errors.hpp"

namespace heatshape {

namespace {

constexpr double kPi = std::numbers::pi;

// 2-point Gauss on [0,1] for boundary-edge integrals.
const double kEdgeQx[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};

struct TriGeom {
  double area;
  double bx[3], by[3];  // P1 gradient components: grad phi_i = (bx, by)
};

TriGeom tri_geometry(const Mesh& mesh, const std::array<int, 3>& t) {
  const auto& p0 = mesh.vertices[t[0]];
  const auto& p1 = mesh.vertices[t[1]];
  const auto& p2 = mesh.vertices[t[2]];
  const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                     (p1[1] - p0[1]) * (p2[0] - p0[0]);
  TriGeom g;
  g.area = 0.5 * det;
  g.bx[0] = (p1[1] - p2[1]) / det;
  g.by[0] = (p2[0] - p1[0]) / det;
  g.bx[1] = (p2[1] - p0[1]) / det;
  g.by[1] = (p0[0] - p2[0]) / det;
  g.bx[2] = (p0[1] - p1[1]) / det;
  g.by[2] = (p1[0] - p0[0]) / det;
  return g;
}

double edge_beta(const FemBc& bc, double theta) {
  if (bc.kind == FemBc::Kind::Robin) return bc.beta;
  return bc.beta_fn(theta);
}

// Assemble the full operator (stiffness + Robin edge mass) and load vector.
void assemble_system(const Mesh& mesh, const FemBc& bc, const SourceField& src,
                     Eigen::SparseMatrix<double>& A, Eigen::VectorXd& b,
                     std::vector<bool>* boundary_flag) {
  const int n = static_cast<int>(mesh.vertices.size());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(mesh.triangles.size() * 9 + mesh.boundary.size() * 4);
  b = Eigen::VectorXd::Zero(n);

  for (const auto& t : mesh.triangles) {
    const TriGeom g = tri_geometry(mesh, t);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        trips.emplace_back(t[i], t[j],
                           g.area * (g.bx[i] * g.bx[j] + g.by[i] * g.by[j]));
    // edge-midpoint quadrature, exact for quadratics
    const auto& p0 = mesh.vertices[t[0]];
    const auto& p1 = mesh.vertices[t[1]];
    const auto& p2 = mesh.vertices[t[2]];
    const double mx[3] = {0.5 * (p0[0] + p1[0]), 0.5 * (p1[0] + p2[0]),
                          0.5 * (p2[0] + p0[0])};
    const double my[3] = {0.5 * (p0[1] + p1[1]), 0.5 * (p1[1] + p2[1]),
                          0.5 * (p2[1] + p0[1])};
    const double fm[3] = {src.eval(mx[0], my[0]), src.eval(mx[1], my[1]),
                          src.eval(mx[2], my[2])};
    // phi_i at the midpoints: 1/2 on the two adjacent edges, 0 opposite
    const double w = g.area / 3.0;
    b[t[0]] += w * 0.5 * (fm[0] + fm[2]);
    b[t[1]] += w * 0.5 * (fm[0] + fm[1]);
    b[t[2]] += w * 0.5 * (fm[1] + fm[2]);
  }

  if (boundary_flag) boundary_flag->assign(n, false);
  for (const auto& e : mesh.boundary) {
    if (boundary_flag) {
      (*boundary_flag)[e.v0] = true;
      (*boundary_flag)[e.v1] = true;
    }
    if (bc.kind == FemBc::Kind::Dirichlet) continue;
    const auto& p0 = mesh.vertices[e.v0];
    const auto& p1 = mesh.vertices[e.v1];
    const double len = std::hypot(p1[0] - p0[0], p1[1] - p0[1]);
    double m00 = 0.0, m01 = 0.0, m11 = 0.0;
    for (double q : kEdgeQx) {
      const double theta = e.theta0 + q * (e.theta1 - e.theta0);
      const double beta = edge_beta(bc, theta);
      if (!(beta > 0.0))
        throw ConfigError("fem2d: Robin coefficient must stay positive");
      const double w = 0.5 * len * beta;
      m00 += w * (1.0 - q) * (1.0 - q);
      m01 += w * (1.0 - q) * q;
      m11 += w * q * q;
    }
    trips.emplace_back(e.v0, e.v0, m00);
    trips.emplace_back(e.v0, e.v1, m01);
    trips.emplace_back(e.v1, e.v0, m01);
    trips.emplace_back(e.v1, e.v1, m11);
  }

  A.resize(n, n);
  A.setFromTriplets(trips.begin(), trips.end());
}

void apply_dirichlet(Eigen::SparseMatrix<double>& A, Eigen::VectorXd& b,
                     const std::vector<bool>& on_boundary) {
  for (int k = 0; k < A.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(A, k); it; ++it) {
      const bool bi = on_boundary[it.row()];
      const bool bj = on_boundary[it.col()];
      if (bi || bj) it.valueRef() = (it.row() == it.col()) ? 1.0 : 0.0;
    }
  for (size_t i = 0; i < on_boundary.size(); ++i)
    if (on_boundary[i]) b[static_cast<int>(i)] = 0.0;
}

}  // namespace

FemBc FemBc::dirichlet() { return FemBc{Kind::Dirichlet, 0.0, {}}; }

FemBc FemBc::robin(double beta) {
  if (!(beta > 0.0)) throw ConfigError("fem2d: Robin beta must be > 0");
  return FemBc{Kind::Robin, beta, {}};
}

FemBc FemBc::robin_variable(std::function<double(double)> beta_fn) {
  if (!beta_fn) throw ConfigError("fem2d: missing beta(theta)");
  return FemBc{Kind::RobinVariable, 0.0, std::move(beta_fn)};
}

// Uniform spatial bin structure for point location.
struct FemField::Locator {
  double x0, y0, cell;
  int nx, ny;
  std::vector<std::vector<int>> bins;

  Locator(const Mesh& mesh) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& v : mesh.vertices) {
      xmin = std::min(xmin, v[0]);
      xmax = std::max(xmax, v[0]);
      ymin = std::min(ymin, v[1]);
      ymax = std::max(ymax, v[1]);
    }
    const int target = std::max(
        1, static_cast<int>(std::sqrt(static_cast<double>(mesh.triangles.size()))));
    nx = ny = target;
    cell = std::max((xmax - xmin) / nx, (ymax - ymin) / ny) + 1e-300;
    x0 = xmin;
    y0 = ymin;
    bins.assign(static_cast<size_t>(nx) * ny, {});
    for (size_t t = 0; t < mesh.triangles.size(); ++t) {
      const auto& tri = mesh.triangles[t];
      double txmin = 1e300, txmax = -1e300, tymin = 1e300, tymax = -1e300;
      for (int v : tri) {
        txmin = std::min(txmin, mesh.vertices[v][0]);
        txmax = std::max(txmax, mesh.vertices[v][0]);
        tymin = std::min(tymin, mesh.vertices[v][1]);
        tymax = std::max(tymax, mesh.vertices[v][1]);
      }
      const int i0 = std::clamp(static_cast<int>((txmin - x0) / cell), 0, nx - 1);
      const int i1 = std::clamp(static_cast<int>((txmax - x0) / cell), 0, nx - 1);
      const int j0 = std::clamp(static_cast<int>((tymin - y0) / cell), 0, ny - 1);
      const int j1 = std::clamp(static_cast<int>((tymax - y0) / cell), 0, ny - 1);
      for (int i = i0; i <= i1; ++i)
        for (int j = j0; j <= j1; ++j)
          bins[static_cast<size_t>(j) * nx + i].push_back(static_cast<int>(t));
    }
  }

  const std::vector<int>& candidates(double x, double y) const {
    const int i = std::clamp(static_cast<int>((x - x0) / cell), 0, nx - 1);
    const int j = std::clamp(static_cast<int>((y - y0) / cell), 0, ny - 1);
    return bins[static_cast<size_t>(j) * nx + i];
  }
};

FemField assemble_solve(std::shared_ptr<const Mesh> mesh, FemBc bc,
                        const SourceField& source) {
  if (!mesh || mesh->triangles.empty())
    throw InvalidArgument("fem2d: empty mesh");
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b;
  std::vector<bool> on_boundary;
  assemble_system(*mesh, bc, source, A, b, &on_boundary);
  if (bc.kind == FemBc::Kind::Dirichlet) apply_dirichlet(A, b, on_boundary);

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver;
  solver.compute(A);
  if (solver.info() != Eigen::Success)
    throw NumericError("fem2d: sparse factorization failed");
  Eigen::VectorXd u = solver.solve(b);
  u += solver.solve(b - A * u);  // one step of iterative refinement
  const double resid = (A * u - b).norm();
  double max_diag = 0.0;
  for (int i = 0; i < A.rows(); ++i)
    max_diag = std::max(max_diag, std::abs(A.coeff(i, i)));
  const double scale = b.norm() + max_diag * u.norm() + 1e-300;
  if (!(resid <= 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "fem2d: normwise linear solve residual " << resid / scale
        << " exceeds 1e-12";
    throw NumericError(msg.str());
  }

  FemField field;
  field.mesh_ = std::move(mesh);
  field.locator_ = std::make_shared<const FemField::Locator>(*field.mesh_);
  field.bc_ = std::move(bc);
  field.u_.assign(u.data(), u.data() + u.size());
  return field;
}

double FemField::value(double x, double y, double tol) const {
  const Mesh& m = *mesh_;
  auto bary_of = [&](int t, double bary[3]) {
    const auto& tri = m.triangles[t];
    const auto& p0 = m.vertices[tri[0]];
    const auto& p1 = m.vertices[tri[1]];
    const auto& p2 = m.vertices[tri[2]];
    const double det = (p1[0] - p0[0]) * (p2[1] - p0[1]) -
                       (p1[1] - p0[1]) * (p2[0] - p0[0]);
    bary[1] = ((x - p0[0]) * (p2[1] - p0[1]) - (y - p0[1]) * (p2[0] - p0[0])) / det;
    bary[2] = ((p1[0] - p0[0]) * (y - p0[1]) - (p1[1] - p0[1]) * (x - p0[0])) / det;
    bary[0] = 1.0 - bary[1] - bary[2];
    return std::min({bary[0], bary[1], bary[2]});
  };
  int best = -1;
  double best_worst = -1e300;
  double best_bary[3] = {0, 0, 0};
  double bary[3];
  for (int t : locator_->candidates(x, y)) {
    const double w = bary_of(t, bary);
    if (w > best_worst) {
      best_worst = w;
      best = t;
      std::copy(bary, bary + 3, best_bary);
    }
    if (w >= 0.0) break;
  }
  if (best_worst < 0.0) {
    for (size_t t = 0; t < m.triangles.size(); ++t) {
      const double w = bary_of(static_cast<int>(t), bary);
      if (w > best_worst) {
        best_worst = w;
        best = static_cast<int>(t);
        std::copy(bary, bary + 3, best_bary);
      }
      if (w >= 0.0) break;
    }
  }
  if (best < 0) throw RangeError("fem2d: point location failed (empty mesh?)");
  const TriGeom g = tri_geometry(m, m.triangles[best]);
  const double local = std::sqrt(2.0 * std::abs(g.area));
  if (best_worst * local < -tol) {
    std::ostringstream msg;
    msg << "fem2d: point (" << x << ", " << y << ") outside the mesh by about "
        << -best_worst * local;
    throw RangeError(msg.str());
  }
  const auto& tri = m.triangles[best];
  return best_bary[0] * u_[tri[0]] + best_bary[1] * u_[tri[1]] +
         best_bary[2] * u_[tri[2]];
}

double FemField::max_interior() const {
  double m = -1e300;
  std::vector<bool> on_boundary(u_.size(), false);
  for (const auto& e : mesh_->boundary) {
    on_boundary[e.v0] = true;
    on_boundary[e.v1] = true;
  }
  for (size_t i = 0; i < u_.size(); ++i)
    if (!on_boundary[i]) m = std::max(m, u_[i]);
  return m;
}

double FemField::min_interior() const {
  double m = 1e300;
  std::vector<bool> on_boundary(u_.size(), false);
  for (const auto& e : mesh_->boundary) {
    on_boundary[e.v0] = true;
    on_boundary[e.v1] = true;
  }
  for (size_t i = 0; i < u_.size(); ++i)
    if (!on_boundary[i]) m = std::min(m, u_[i]);
  return m;
}

void FemField::export_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out.precision(17);
  out << "x y u\n";
  for (size_t i = 0; i < u_.size(); ++i)
    out << mesh_->vertices[i][0] << " " << mesh_->vertices[i][1] << " " << u_[i]
        << "\n";
}

double energy(const FemField& field, const SourceField& source) {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b;
  assemble_system(field.mesh(), field.bc(), source, A, b, nullptr);
  Eigen::Map<const Eigen::VectorXd> u(field.values().data(),
                                      field.values().size());
  // Dirichlet fields vanish on the boundary, so the untouched operator and
  // load give the same quadratic form.
  return 0.5 * u.dot(A * u) - b.dot(u);
}

double total_heat(const FemField& field, const SourceField& source) {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b;
  assemble_system(field.mesh(), field.bc(), source, A, b, nullptr);
  Eigen::Map<const Eigen::VectorXd> u(field.values().data(),
                                      field.values().size());
  return b.dot(u);
}

double integral_u(const FemField& field) {
  const Mesh& m = field.mesh();
  const auto& u = field.values();
  double acc = 0.0;
  for (const auto& t : m.triangles) {
    const TriGeom g = tri_geometry(m, t);
    acc += g.area / 3.0 * (u[t[0]] + u[t[1]] + u[t[2]]);
  }
  return acc;
}

double average_temperature(const FemField& field) {
  return integral_u(field) / field.mesh().area();
}

StationarityResidual stationarity_residual(const FemField& field,
                                           const StarDomain& domain,
                                           const SourceField& source) {
  if (field.bc().kind != FemBc::Kind::Robin)
    throw InvalidArgument("stationarity_residual needs a constant Robin field");
  const double beta = field.bc().beta;
  const Mesh& m = field.mesh();
  const auto& u = field.values();

  // adjacent triangle of each boundary edge
  std::vector<int> edge_tri(m.boundary.size(), -1);
  {
    auto key = [](int a, int b) {
      return std::pair<int, int>(std::min(a, b), std::max(a, b));
    };
    std::vector<std::pair<std::pair<int, int>, int>> all;
    all.reserve(m.triangles.size() * 3);
    for (size_t t = 0; t < m.triangles.size(); ++t)
      for (int i = 0; i < 3; ++i)
        all.push_back({key(m.triangles[t][i], m.triangles[t][(i + 1) % 3]),
                       static_cast<int>(t)});
    std::sort(all.begin(), all.end());
    for (size_t e = 0; e < m.boundary.size(); ++e) {
      const auto k = key(m.boundary[e].v0, m.boundary[e].v1);
      auto it = std::lower_bound(
          all.begin(), all.end(), k,
          [](const auto& lhs, const auto& rhs) { return lhs.first < rhs; });
      if (it != all.end() && it->first == k) edge_tri[e] = it->second;
    }
  }

  StationarityResidual out;
  out.max = -1e300;
  out.min = 1e300;
  for (size_t e = 0; e < m.boundary.size(); ++e) {
    const auto& edge = m.boundary[e];
    const int t = edge_tri[e];
    if (t < 0) throw GeometryError("stationarity_residual: dangling boundary edge");
    const TriGeom g = tri_geometry(m, m.triangles[t]);
    double gx = 0.0, gy = 0.0;
    for (int i = 0; i < 3; ++i) {
      gx += g.bx[i] * u[m.triangles[t][i]];
      gy += g.by[i] * u[m.triangles[t][i]];
    }
    const double um = 0.5 * (u[edge.v0] + u[edge.v1]);
    const double mx = 0.5 * (m.vertices[edge.v0][0] + m.vertices[edge.v1][0]);
    const double my = 0.5 * (m.vertices[edge.v0][1] + m.vertices[edge.v1][1]);
    const double theta_m = 0.5 * (edge.theta0 + edge.theta1);
    const double H = domain.curvature(theta_m);
    const double f = source.eval(mx, my);
    const double gval = -beta * beta * um * um + 0.5 * (gx * gx + gy * gy) +
                        0.5 * beta * um * um * H - f * um;
    out.max = std::max(out.max, gval);
    out.min = std::min(out.min, gval);
  }
  out.spread = out.max - out.min;
  return out;
}

FemField solve_insulation(std::shared_ptr<const Mesh> mesh,
                          const std::function<double(double)>& h_fn,
                          const SourceField& source, double h_min) {
  if (!h_fn) throw ConfigError("solve_insulation: missing h(theta)");
  for (int i = 0; i < 1024; ++i) {
    const double h = h_fn(2.0 * kPi * i / 1024);
    if (!(h >= h_min)) {
      std::ostringstream msg;
      msg << "solve_insulation: h(theta) = " << h << " below h_min = " << h_min;
      throw ConfigError(msg.str());
    }
  }
  return assemble_solve(std::move(mesh),
                        FemBc::robin_variable([h_fn](double theta) {
                          return 1.0 / h_fn(theta);
                        }),
                        source);
}

}  // namespace heatshape
