#include "mesh2d.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>

#include "errors.hpp"

namespace heatshape {

namespace {
constexpr double kPi = std::numbers::pi;

double tri_area2(const std::array<double, 2>& a, const std::array<double, 2>& b,
                 const std::array<double, 2>& c) {
  return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
}
}  // namespace

double Mesh::area() const {
  double acc = 0.0;
  for (const auto& t : triangles)
    acc += 0.5 * tri_area2(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
  return acc;
}

double Mesh::min_angle_deg() const {
  double worst = 180.0;
  for (const auto& t : triangles) {
    for (int i = 0; i < 3; ++i) {
      const auto& a = vertices[t[i]];
      const auto& b = vertices[t[(i + 1) % 3]];
      const auto& c = vertices[t[(i + 2) % 3]];
      const double ux = b[0] - a[0], uy = b[1] - a[1];
      const double vx = c[0] - a[0], vy = c[1] - a[1];
      const double dot = ux * vx + uy * vy;
      const double cross = std::abs(ux * vy - uy * vx);
      worst = std::min(worst, std::atan2(cross, dot) * 180.0 / kPi);
    }
  }
  return worst;
}

int Mesh::euler_characteristic() const {
  std::set<std::pair<int, int>> edges;
  for (const auto& t : triangles)
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      if (a > b) std::swap(a, b);
      edges.insert({a, b});
    }
  return static_cast<int>(vertices.size()) - static_cast<int>(edges.size()) +
         static_cast<int>(triangles.size());
}

void Mesh::write_text(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out.precision(17);
  std::set<std::pair<int, int>> edges;
  for (const auto& t : triangles)
    for (int i = 0; i < 3; ++i) {
      int a = t[i], b = t[(i + 1) % 3];
      if (a > b) std::swap(a, b);
      edges.insert({a, b});
    }
  out << vertices.size() << " " << edges.size() << " " << triangles.size()
      << "\n";
  for (const auto& v : vertices) out << v[0] << " " << v[1] << "\n";
  for (const auto& t : triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
}

Mesh Mesh::read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open '" + path + "' for reading");
  size_t nv = 0, ne = 0, nt = 0;
  if (!(in >> nv >> ne >> nt))
    throw ConfigError("mesh file '" + path + "': bad header (want \"V E T\")");
  Mesh m;
  m.vertices.resize(nv);
  for (auto& v : m.vertices)
    if (!(in >> v[0] >> v[1]))
      throw ConfigError("mesh file '" + path + "': truncated vertex list");
  m.triangles.resize(nt);
  for (auto& t : m.triangles) {
    if (!(in >> t[0] >> t[1] >> t[2]))
      throw ConfigError("mesh file '" + path + "': truncated triangle list");
    for (int idx : t)
      if (idx < 0 || idx >= static_cast<int>(nv))
        throw ConfigError("mesh file '" + path + "': triangle index out of range");
  }
  return m;
}

Mesh build_star_mesh_structured(const StarDomain& domain, int rings,
                                int ring_factor) {
  if (rings < 2) throw InvalidArgument("star mesh: need at least 2 rings");
  if (ring_factor < 3) throw InvalidArgument("star mesh: ring factor < 3");
  if (!(domain.min_radius() > 0.0))
    throw GeometryError("star mesh: boundary radius is not positive");

  const int N = rings;
  const int L = ring_factor;
  Mesh m;
  m.rings = N;
  m.ring_factor = L;
  m.vertices.push_back({0.0, 0.0});
  std::vector<int> ring_start(N + 1, 0);
  std::vector<std::vector<double>> ring_theta(N + 1);
  for (int i = 1; i <= N; ++i) {
    ring_start[i] = static_cast<int>(m.vertices.size());
    const int mi = L * i;
    ring_theta[i].resize(mi);
    for (int j = 0; j < mi; ++j) {
      const double th = 2.0 * kPi * j / mi;
      ring_theta[i][j] = th;
      const double r = domain.radius(th) * i / N;
      m.vertices.push_back({r * std::cos(th), r * std::sin(th)});
    }
  }

  // center fan
  for (int j = 0; j < L; ++j)
    m.triangles.push_back({0, ring_start[1] + j, ring_start[1] + (j + 1) % L});

  // annulus strips, stitched by angle
  for (int i = 1; i < N; ++i) {
    const int p = L * i, q = L * (i + 1);
    int ai = 0, bj = 0;
    auto inner_angle = [&](int idx) {
      return idx < p ? ring_theta[i][idx] : ring_theta[i][idx - p] + 2.0 * kPi;
    };
    auto outer_angle = [&](int idx) {
      return idx < q ? ring_theta[i + 1][idx] : ring_theta[i + 1][idx - q] + 2.0 * kPi;
    };
    auto inner_v = [&](int idx) { return ring_start[i] + idx % p; };
    auto outer_v = [&](int idx) { return ring_start[i + 1] + idx % q; };
    while (ai < p || bj < q) {
      const bool advance_inner =
          bj >= q || (ai < p && inner_angle(ai + 1) <= outer_angle(bj + 1));
      if (advance_inner) {
        m.triangles.push_back({inner_v(ai), outer_v(bj), inner_v(ai + 1)});
        ++ai;
      } else {
        m.triangles.push_back({inner_v(ai), outer_v(bj), outer_v(bj + 1)});
        ++bj;
      }
    }
  }

  // boundary edges with angular parameters
  const int mb = L * N;
  for (int j = 0; j < mb; ++j) {
    Mesh::BoundaryEdge e;
    e.v0 = ring_start[N] + j;
    e.v1 = ring_start[N] + (j + 1) % mb;
    e.theta0 = ring_theta[N][j];
    e.theta1 = (j + 1 < mb) ? ring_theta[N][j + 1] : 2.0 * kPi;
    m.boundary.push_back(e);
  }

  for (const auto& t : m.triangles)
    if (tri_area2(m.vertices[t[0]], m.vertices[t[1]], m.vertices[t[2]]) <= 0.0)
      throw GeometryError("star mesh: inverted triangle (domain too distorted)");
  return m;
}

Mesh build_star_mesh(const StarDomain& domain, double h) {
  if (!(h > 0.0)) throw InvalidArgument("star mesh: h must be > 0");
  if (!(h < domain.base_radius() / 4.0))
    throw InvalidArgument("star mesh: require h < R/4");
  const int rings =
      std::max(4, static_cast<int>(std::lround(domain.max_radius() / h)));
  Mesh m = build_star_mesh_structured(domain, rings, domain.mesh_ring_factor());
  m.target_h = h;
  return m;
}

}  // namespace heatshape
