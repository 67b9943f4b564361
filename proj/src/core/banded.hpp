#ifndef HEATSHAPE_BANDED_HPP
#define HEATSHAPE_BANDED_HPP

#include <vector>

namespace heatshape {

// Symmetric positive definite band matrix, lower-triangle storage:
// entry(j + d, j) lives at band_[j * (bw + 1) + d] for d = 0..bw.
class BandedSpd {
 public:
  BandedSpd(int n, int bandwidth);

  int size() const { return n_; }
  int bandwidth() const { return bw_; }

  void add(int i, int j, double v);
  double get(int i, int j) const;
  void set_identity_row(int i);  // decouple dof i (diag 1, couplings 0)

  // In-place Cholesky; throws NumericError on a nonpositive pivot.
  void factorize();
  // Solve L L^T x = rhs (after factorize); rhs is overwritten with x.
  void solve(std::vector<double>& rhs) const;

  // y = A x for the unfactored matrix.
  std::vector<double> multiply(const std::vector<double>& x) const;

 private:
  int n_;
  int bw_;
  bool factored_ = false;
  std::vector<double> band_;
};

}  // namespace heatshape

#endif
