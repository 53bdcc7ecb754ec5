#pragma once

#include <functional>
#include <vector>

#include "dpw/matrix2.hpp"

namespace dpw {

// Rectangular lattice z = origin + h*(i + sqrt(-1)*j), 0 <= i < nx, 0 <= j < ny.
struct GridSpec {
  cplx origin{};
  double h = 0.1;
  int nx = 17, ny = 17;
  cplx point(int i, int j) const { return origin + h * cplx(double(i), double(j)); }
  int index(int i, int j) const { return j * nx + i; }
  int size() const { return nx * ny; }
  static GridSpec centered(double half_width, int n) {
    return {cplx(-half_width, -half_width), 2.0 * half_width / (n - 1), n, n};
  }
};

// Local minimal-surface data: conformal factor u (metric e^{2u}|dz|^2) and
// Hopf coefficient q (Q = q dz^2) sampled on a grid.  Analytic generators
// are optional; when present they are used for off-lattice evaluation
// (transport), while all residual measurements use the samples.
struct MinimalChartData {
  GridSpec grid;
  std::vector<double> u;
  std::vector<cplx> q;
  std::function<double(cplx)> u_fn;
  std::function<cplx(cplx)> q_fn;

  static MinimalChartData from_functions(const GridSpec& g, std::function<double(cplx)> uf,
                                         std::function<cplx(cplx)> qf);
  // round-sphere solution of the compatibility equation: u = log(1/(1+|z|^2)), q = 0
  static MinimalChartData sphere(const GridSpec& g);
  // flat data u = 0 with constant q of the flat modulus |q| = 2
  static MinimalChartData clifford(const GridSpec& g, cplx q0 = cplx(2.0));
  double u_at(int i, int j) const { return u[grid.index(i, j)]; }
  cplx q_at(int i, int j) const { return q[grid.index(i, j)]; }
  bool has_functions() const { return static_cast<bool>(u_fn); }
};

// The dz / dzbar parts of the associated-family form at one zeta, assembled
// on the interior lattice (margin layers carry unusable one-sided data and
// are excluded from all sup norms).
struct ConnectionFormPair {
  GridSpec grid;
  cplx zeta{};
  int margin = 1;
  std::vector<Matrix2> Cz, Czbar;
  bool interior(int i, int j) const {
    return i >= margin && i < grid.nx - margin && j >= margin && j < grid.ny - margin;
  }
};

// Associated family in the unitary frame (e^{-u/2} t, e^{u/2} s):
//   Cz    = [  u_z/2              zeta^{-1} e^u ]      (dz part)
//           [ -(i/2) e^{-u} q    -u_z/2         ]
//   Czbar = [ -u_zbar/2          -(i/2) e^{-u} conj(q) ]  (dzbar part)
//           [ -zeta e^u           u_zbar/2      ]
// u-derivatives by centered differences.  Throws for zeta = 0.
ConnectionFormPair associated_family_form(const MinimalChartData& data, cplx zeta);

// sup over (double-margin) interior points of the discrete curvature
// || d_z Czbar - d_zbar Cz + [Cz, Czbar] ||.
double flatness_residual(const MinimalChartData& data, cplx zeta);

struct CoefficientResiduals {
  double r_minus = 0.0;  // zeta^{-1} coefficient: discrete d^nabla Phi
  double r_zero = 0.0;   // zeta^0: F^nabla - [Phi wedge Phi*]
  double r_plus = 0.0;   // zeta^{+1}: d^nabla Phi*
};

// The three Laurent coefficients of the family curvature; they control
// flatness_residual for every zeta:
//   flatness(zeta) <= |zeta|^{-1} r_minus + r_zero + |zeta| r_plus + O(h^2).
CoefficientResiduals coefficient_residuals(const MinimalChartData& data);

// sup over interior of ||A + A^†|| on the two coordinate directions
// (A_x = Cz + Czbar, A_y = i(Cz - Czbar)); zero (to rounding) iff |zeta| = 1.
double unitarity_check(const ConnectionFormPair& form);

}  // namespace dpw
