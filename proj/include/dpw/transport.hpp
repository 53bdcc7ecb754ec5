#pragma once

#include <span>
#include <vector>

#include "dpw/potential.hpp"

namespace dpw {

// Piecewise-linear path in the punctured z-plane.
struct Path {
  std::vector<cplx> waypoints;
  bool closed = false;

  static Path segment(cplx a, cplx b) { return {{a, b}, false}; }
  // closed n-gon approximating a circle, starting at center + radius
  static Path circle(cplx center, double radius, int n = 32);
  // path that starts at base, runs straight to the circle, once around, and back
  static Path lasso(cplx base, cplx center, double radius, int n = 32);
  void validate() const;  // consecutive waypoints distinct
  double min_distance_to(std::span<const cplx> points) const;
};

struct TransportOptions {
  double tol = 1e-10;          // local error target per step
  double pole_clearance = -1;  // < 0: 1e-2 times the min pairwise pole distance
  int renorm_every = 8;        // determinant renormalization cadence
  int max_steps = 2000000;
};

// Frame equation d Psi = Psi * xi, Psi(start) = I, at a fixed spectral value.
Matrix2 parallel_transport(const DPWPotential& pot, const Path& path, cplx zeta,
                           const TransportOptions& opts = {});

// Same, in the truncated loop algebra (support capped to [-trunc, trunc]);
// the accumulated Wiener norm of discarded convolution tails is written to
// *tail_norm if non-null.
MatrixLoop parallel_transport_loop(const DPWPotential& pot, const Path& path, int trunc,
                                   const TransportOptions& opts = {},
                                   double* tail_norm = nullptr);

struct Holonomy {
  Matrix2 value;
  cplx zeta{};
  cplx basepoint{};
  double det_error = 0.0;  // |det - 1|
};

// Holonomy of a closed loop; throws std::invalid_argument if the path is not
// closed and std::domain_error for zeta = 0 with negative Laurent support.
Holonomy holonomy(const DPWPotential& pot, const Path& loop, cplx zeta,
                  const TransportOptions& opts = {});

// Conjugation covariance under change of basepoint: the holonomy based at
// waypoint k equals T * H * T^{-1} with T the transport from the original
// basepoint; returns the sampled defect norm.
double holonomy_basepoint_covariance(const DPWPotential& pot, const Path& loop, cplx zeta,
                                     int k, const TransportOptions& opts = {});

// max over pairs of ||XY - YX||_F; > threshold certifies non-abelian.
double abelianness_probe(std::span<const Matrix2> hols);

}  // namespace dpw
