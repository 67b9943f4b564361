#ifndef HEATSHAPE_MESH2D_HPP
#define HEATSHAPE_MESH2D_HPP

#include <array>
#include <string>
#include <vector>

#include "star_domain.hpp"

namespace heatshape {

// Triangulation of a star-shaped domain: concentric rings of L*i vertices
// mapped radially onto the boundary curve, stitched by angle. Deterministic;
// boundary vertices lie on rho(theta) exactly.
struct Mesh {
  struct BoundaryEdge {
    int v0 = 0;
    int v1 = 0;
    double theta0 = 0.0;
    double theta1 = 0.0;
  };

  std::vector<std::array<double, 2>> vertices;
  std::vector<std::array<int, 3>> triangles;  // CCW
  std::vector<BoundaryEdge> boundary;
  double target_h = 0.0;
  int rings = 0;
  int ring_factor = 0;

  double area() const;
  double min_angle_deg() const;
  int euler_characteristic() const;  // V - E + T (1 for a disk)

  // Plain-text format: header "V E T", vertex lines "x y",
  // triangle lines "i j k" (0-based).
  void write_text(const std::string& path) const;
  static Mesh read_text(const std::string& path);
};

// Structured mesh with explicit ring count and ring factor (used by the flow
// experiments to keep the topology fixed across a stencil).
Mesh build_star_mesh_structured(const StarDomain& domain, int rings,
                                int ring_factor);

// Target-edge-length entry point; requires h < R/4.
Mesh build_star_mesh(const StarDomain& domain, double h);

}  // namespace heatshape

#endif
