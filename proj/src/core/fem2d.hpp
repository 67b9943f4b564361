#ifndef HEATSHAPE_FEM2D_HPP
#define HEATSHAPE_FEM2D_HPP

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "disk_spectral.hpp"  // SourceField
#include "mesh2d.hpp"

namespace heatshape {

// Boundary condition for the P1 solver: Dirichlet, constant Robin, or
// variable Robin beta(theta).
struct FemBc {
  enum class Kind { Dirichlet, Robin, RobinVariable };
  Kind kind = Kind::Robin;
  double beta = 1.0;
  std::function<double(double)> beta_fn;  // of the boundary angle

  static FemBc dirichlet();
  static FemBc robin(double beta);
  static FemBc robin_variable(std::function<double(double)> beta_fn);
};

class FemField {
 public:
  const Mesh& mesh() const { return *mesh_; }
  const std::vector<double>& values() const { return u_; }
  const FemBc& bc() const { return bc_; }

  // P1 interpolation; points within `tol` of the mesh polygon are evaluated
  // by barycentric extension of the nearest triangle.
  double value(double x, double y, double tol = 1e-9) const;

  double max_interior() const;
  double min_interior() const;

  // "x y u" triples, one per vertex.
  void export_csv(const std::string& path) const;

 private:
  friend FemField assemble_solve(std::shared_ptr<const Mesh>, FemBc,
                                 const SourceField&);
  friend double energy(const FemField&, const SourceField&);
  friend double total_heat(const FemField&, const SourceField&);

  struct Locator;
  std::shared_ptr<const Mesh> mesh_;
  std::shared_ptr<const Locator> locator_;
  FemBc bc_;
  std::vector<double> u_;
};

// Assemble and solve -lap u = f with the given boundary condition: P1
// stiffness + boundary Robin mass, 3-point (edge-midpoint) source
// quadrature, sparse LDLT with one step of iterative refinement.
FemField assemble_solve(std::shared_ptr<const Mesh> mesh, FemBc bc,
                        const SourceField& source);

// Energies assembled with the solver's quadrature (the discrete energy
// identity J = -1/2 int f u then holds to rounding).
double energy(const FemField& field, const SourceField& source);
double total_heat(const FemField& field, const SourceField& source);
double average_temperature(const FemField& field);
double integral_u(const FemField& field);

// g = -beta^2 u^2 + |grad u|^2/2 + (beta/2) u^2 H - f u at boundary-edge
// midpoints; H analytic from the star domain. Constant on the boundary for
// stationary shapes.
struct StationarityResidual {
  double max = 0.0;
  double min = 0.0;
  double spread = 0.0;
};

StationarityResidual stationarity_residual(const FemField& field,
                                           const StarDomain& domain,
                                           const SourceField& source);

// Thin-insulation solve: h(theta) du/dnu + u = 0, i.e. variable Robin
// coefficient beta(theta) = 1/h(theta); h must stay above h_min.
FemField solve_insulation(std::shared_ptr<const Mesh> mesh,
                          const std::function<double(double)>& h_fn,
                          const SourceField& source, double h_min = 1e-6);

}  // namespace heatshape

#endif
