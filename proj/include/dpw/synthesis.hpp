#pragma once

#include <array>
#include <optional>

#include "dpw/chart.hpp"
#include "dpw/iwasawa.hpp"
#include "dpw/transport.hpp"

namespace dpw {

struct FramePoint {
  MatrixLoop F;  // unitary class
  MatrixLoop B;  // plus class
  double residual = 0.0;
};

// Pointwise Iwasawa-split parallel frame of a potential over a simply
// connected grid: Psi(z) = dressing * transport(basepoint -> z).
struct ExtendedFrameGrid {
  GridSpec grid;
  int bi = 0, bj = 0;  // basepoint lattice indices
  MatrixLoop dressing;
  std::vector<FramePoint> points;
  double max_residual = 0.0;
  double transport_tail = 0.0;
  const FramePoint& at(int i, int j) const { return points[grid.index(i, j)]; }
};

struct SynthesisOptions {
  int trunc = 16;          // loop truncation degree for the frame
  double tol = 1e-10;      // transport and factorization tolerance
  double integrability_threshold = 0.05;  // bound on coefficient residuals
};

ExtendedFrameGrid extended_frame(const DPWPotential& pot, const GridSpec& grid, int bi, int bj,
                                 const MatrixLoop& dressing, const SynthesisOptions& opts = {});

// Unitary frames of the associated family integrated directly from chart
// data at unit zeta samples (the positive part is the identity there).
struct UnitaryFrameGrid {
  GridSpec grid;
  int bi = 0, bj = 0;
  std::vector<cplx> zetas;
  std::vector<std::vector<Matrix2>> F;  // [zeta sample][grid index]
  const Matrix2& at(int s, int i, int j) const { return F[s][grid.index(i, j)]; }
};

UnitaryFrameGrid frame_from_chart(const MinimalChartData& data, std::span<const cplx> zetas,
                                  int bi, int bj, const SynthesisOptions& opts = {});

// The immersion read off at the Sym points: f(z) = F(z,-1) * F(z,+1)^{-1}.
struct SurfaceMap {
  GridSpec grid;
  int bi = 0, bj = 0;
  std::vector<Matrix2> f;
  double unitarity = 0.0;  // sup || f^† f - I ||
  const Matrix2& at(int i, int j) const { return f[grid.index(i, j)]; }
};

SurfaceMap sym_point_surface(const ExtendedFrameGrid& frames, double unitarity_tol = 1e-6);
SurfaceMap sym_point_surface(const UnitaryFrameGrid& frames, double unitarity_tol = 1e-6);

struct GeometryReport {
  double conformality = 0.0;     // sup |<f_x,f_y>| + | |f_x| - |f_y| |
  double mean_curvature = 0.0;   // sup |H|
  cplx hopf_mean{};              // mean extracted Hopf coefficient
  double hopf_deviation = 0.0;   // sup deviation from the mean
  double metric_scale = 0.0;     // mean |f_x|
  bool degenerate = false;
};

GeometryReport geometry_report(const SurfaceMap& surface);

// S^3 = SU(2) as a unit vector in R^4 (row-major first column: w1 = f00,
// w2 = f10; v = (Re w1, Im w1, Re w2, Im w2)).
std::array<double, 4> su2_to_r4(const Matrix2& f);

// sup | |w1| - 1/sqrt(2) | after one global ambient isometry, constructed by
// aligning the two focal circles of the surface with coordinate planes.
// Small only if the image lies on a Clifford torus.
double clifford_torus_deviation(const SurfaceMap& surface);

// closed-form objects of the flat (vacuum) family: xi = (zeta^{-1} E+ + gamma E-) dz
DPWPotential vacuum_potential(cplx gamma);
// its extended unitary frame F(z, zeta) = exp((z/zeta - conj(gamma) zbar) E+ + (gamma z - zeta zbar) E-)
Matrix2 vacuum_frame(cplx z, cplx zeta, cplx gamma);

}  // namespace dpw
