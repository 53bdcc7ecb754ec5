#include "dpw/synthesis.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <stdexcept>

namespace dpw {

namespace {

// visit all grid points along lattice edges starting from the basepoint:
// first along row bj, then up/down each column
template <class Visit>
void walk_grid(const GridSpec& g, int bi, int bj, Visit&& visit) {
  for (int i = bi + 1; i < g.nx; ++i) visit(i - 1, bj, i, bj);
  for (int i = bi - 1; i >= 0; --i) visit(i + 1, bj, i, bj);
  for (int i = 0; i < g.nx; ++i) {
    for (int j = bj + 1; j < g.ny; ++j) visit(i, j - 1, i, j);
    for (int j = bj - 1; j >= 0; --j) visit(i, j + 1, i, j);
  }
}

}  // namespace

ExtendedFrameGrid extended_frame(const DPWPotential& pot, const GridSpec& grid, int bi, int bj,
                                 const MatrixLoop& dressing, const SynthesisOptions& opts) {
  if (bi < 0 || bi >= grid.nx || bj < 0 || bj >= grid.ny)
    throw std::invalid_argument("extended_frame: basepoint outside the grid");
  ExtendedFrameGrid out;
  out.grid = grid;
  out.bi = bi;
  out.bj = bj;
  out.dressing = dressing;
  out.points.resize(grid.size());

  for (cplx p : pot.pole_locations()) {
    bool inx = p.real() >= grid.origin.real() - grid.h &&
               p.real() <= grid.point(grid.nx - 1, 0).real() + grid.h;
    bool iny = p.imag() >= grid.origin.imag() - grid.h &&
               p.imag() <= grid.point(0, grid.ny - 1).imag() + grid.h;
    if (inx && iny)
      throw std::runtime_error("extended_frame: declared pole inside the grid rectangle");
  }

  std::vector<MatrixLoop> psi(grid.size());
  psi[grid.index(bi, bj)] = dressing;
  TransportOptions topts{};
  topts.tol = opts.tol;
  double tails = 0.0;
  walk_grid(grid, bi, bj, [&](int i0, int j0, int i1, int j1) {
    Path edge = Path::segment(grid.point(i0, j0), grid.point(i1, j1));
    double t = 0.0;
    MatrixLoop step = parallel_transport_loop(pot, edge, opts.trunc, topts, &t);
    tails += t;
    psi[grid.index(i1, j1)] = loop_mul_capped(psi[grid.index(i0, j0)], step, opts.trunc, &tails);
  });
  out.transport_tail = tails;

  IwasawaOptions iopts{};
  iopts.tol = opts.tol;
  for (int k = 0; k < grid.size(); ++k) {
    IwasawaResult r = iwasawa(psi[k], iopts);
    out.points[k] = {std::move(r.F), std::move(r.B), r.residual};
    out.max_residual = std::max(out.max_residual, r.residual);
  }
  return out;
}

namespace {

// chart-form evaluation off the lattice: analytic generators when present
// (derivatives by 5-point stencils), bilinear interpolation otherwise
struct ChartEval {
  const MinimalChartData& d;

  double u(cplx z) const { return d.u_fn ? d.u_fn(z) : bilinear(d.grid, d.u, z); }
  cplx q(cplx z) const { return d.q_fn ? d.q_fn(z) : bilinear(d.grid, d.q, z); }
  cplx uz(cplx z) const {
    if (d.u_fn) {
      const double s = 1e-3;
      const auto& f = d.u_fn;
      double ux = (-f(z + 2 * s) + 8.0 * f(z + s) - 8.0 * f(z - s) + f(z - 2 * s)) / (12 * s);
      cplx is{0.0, s};
      double uy =
          (-f(z + 2.0 * is) + 8.0 * f(z + is) - 8.0 * f(z - is) + f(z - 2.0 * is)) / (12 * s);
      return cplx(ux, -uy) * 0.5;
    }
    const GridSpec& g = d.grid;
    double x = (z.real() - g.origin.real()) / g.h, y = (z.imag() - g.origin.imag()) / g.h;
    int i = std::clamp(int(std::floor(x)), 1, g.nx - 3);
    int j = std::clamp(int(std::floor(y)), 1, g.ny - 3);
    auto node = [&](int ii, int jj) {
      double ux = (d.u_at(ii + 1, jj) - d.u_at(ii - 1, jj)) / (2 * g.h);
      double uy = (d.u_at(ii, jj + 1) - d.u_at(ii, jj - 1)) / (2 * g.h);
      return cplx(ux, -uy) * 0.5;
    };
    double fx = x - i, fy = y - j;
    return (1 - fx) * (1 - fy) * node(i, j) + fx * (1 - fy) * node(i + 1, j) +
           (1 - fx) * fy * node(i, j + 1) + fx * fy * node(i + 1, j + 1);
  }

 private:
  template <class A>
  static A bilinear(const GridSpec& g, const std::vector<A>& v, cplx z) {
    double x = (z.real() - g.origin.real()) / g.h, y = (z.imag() - g.origin.imag()) / g.h;
    int i = std::clamp(int(std::floor(x)), 0, g.nx - 2);
    int j = std::clamp(int(std::floor(y)), 0, g.ny - 2);
    double fx = x - i, fy = y - j;
    return (1 - fx) * (1 - fy) * v[g.index(i, j)] + fx * (1 - fy) * v[g.index(i + 1, j)] +
           (1 - fx) * fy * v[g.index(i, j + 1)] + fx * fy * v[g.index(i + 1, j + 1)];
  }
};

Matrix2 chart_form_dir(const ChartEval& ev, cplx z, cplx dz, cplx zeta) {
  double u = ev.u(z);
  cplx q = ev.q(z), uz = ev.uz(z), uzb = std::conj(uz);
  double eu = std::exp(u);
  cplx qfac = cplx(0.0, -0.5) * std::exp(-u);
  Matrix2 Cz{uz * 0.5, eu / zeta, qfac * q, -uz * 0.5};
  Matrix2 Czb{-uzb * 0.5, qfac * std::conj(q), -zeta * eu, uzb * 0.5};
  return Cz * dz + Czb * std::conj(dz);
}

}  // namespace

UnitaryFrameGrid frame_from_chart(const MinimalChartData& data, std::span<const cplx> zetas,
                                  int bi, int bj, const SynthesisOptions& opts) {
  CoefficientResiduals cr = coefficient_residuals(data);
  double worst = std::max({cr.r_minus, cr.r_zero, cr.r_plus});
  if (worst > opts.integrability_threshold)
    throw std::runtime_error("frame_from_chart: non-integrable data (coefficient residual " +
                             std::to_string(worst) + ")");
  UnitaryFrameGrid out;
  out.grid = data.grid;
  out.bi = bi;
  out.bj = bj;
  out.zetas.assign(zetas.begin(), zetas.end());
  out.F.assign(zetas.size(), std::vector<Matrix2>(data.grid.size()));
  ChartEval ev{data};

  for (size_t s = 0; s < out.zetas.size(); ++s) {
    cplx zeta = out.zetas[s];
    auto& F = out.F[s];
    F[data.grid.index(bi, bj)] = Matrix2::identity();
    walk_grid(data.grid, bi, bj, [&](int i0, int j0, int i1, int j1) {
      // classical RK4 substeps along the lattice edge (smooth fields)
      cplx a = data.grid.point(i0, j0), b = data.grid.point(i1, j1);
      int nsub = std::clamp(int(std::ceil(std::abs(b - a) / std::pow(opts.tol, 0.25))), 4, 64);
      Matrix2 y = F[data.grid.index(i0, j0)];
      cplx dz = (b - a) / double(nsub);
      for (int k = 0; k < nsub; ++k) {
        cplx z0 = a + double(k) * dz;
        auto rhs = [&](const Matrix2& m, cplx z) { return m * chart_form_dir(ev, z, dz, zeta); };
        Matrix2 k1 = rhs(y, z0);
        Matrix2 k2 = rhs(y + k1 * 0.5, z0 + 0.5 * dz);
        Matrix2 k3 = rhs(y + k2 * 0.5, z0 + 0.5 * dz);
        Matrix2 k4 = rhs(y + k3, z0 + dz);
        y += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (1.0 / 6.0);
      }
      y *= 1.0 / std::sqrt(y.det());
      F[data.grid.index(i1, j1)] = y;
    });
  }
  return out;
}

namespace {

SurfaceMap surface_from(const GridSpec& grid, int bi, int bj,
                        const std::function<Matrix2(int)>& Fminus,
                        const std::function<Matrix2(int)>& Fplus, double unitarity_tol) {
  SurfaceMap s;
  s.grid = grid;
  s.bi = bi;
  s.bj = bj;
  s.f.resize(grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    Matrix2 f = Fminus(k) * Fplus(k).inverse();
    s.f[k] = f;
    s.unitarity = std::max(s.unitarity, (f.adjoint() * f - Matrix2::identity()).frobenius());
  }
  if (s.unitarity > unitarity_tol)
    throw std::runtime_error("sym_point_surface: frame not unitary at the Sym points (residual " +
                             std::to_string(s.unitarity) + ")");
  return s;
}

}  // namespace

SurfaceMap sym_point_surface(const ExtendedFrameGrid& frames, double unitarity_tol) {
  return surface_from(
      frames.grid, frames.bi, frames.bj,
      [&](int k) { return loop_eval(frames.points[k].F, cplx(-1.0)); },
      [&](int k) { return loop_eval(frames.points[k].F, cplx(1.0)); }, unitarity_tol);
}

SurfaceMap sym_point_surface(const UnitaryFrameGrid& frames, double unitarity_tol) {
  int sm = -1, sp = -1;
  for (size_t s = 0; s < frames.zetas.size(); ++s) {
    if (std::abs(frames.zetas[s] - cplx(-1.0)) < 1e-14) sm = static_cast<int>(s);
    if (std::abs(frames.zetas[s] - cplx(1.0)) < 1e-14) sp = static_cast<int>(s);
  }
  if (sm < 0 || sp < 0)
    throw std::invalid_argument("sym_point_surface: zeta samples must contain -1 and +1");
  return surface_from(
      frames.grid, frames.bi, frames.bj, [&](int k) { return frames.F[sm][k]; },
      [&](int k) { return frames.F[sp][k]; }, unitarity_tol);
}

std::array<double, 4> su2_to_r4(const Matrix2& f) {
  return {f(0, 0).real(), f(0, 0).imag(), f(1, 0).real(), f(1, 0).imag()};
}

namespace {

using Vec4 = std::array<double, 4>;

Vec4 sub(const Vec4& a, const Vec4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}
Vec4 add(const Vec4& a, const Vec4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
Vec4 scale(const Vec4& a, double s) { return {a[0] * s, a[1] * s, a[2] * s, a[3] * s}; }
double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}
double len(const Vec4& a) { return std::sqrt(dot(a, a)); }

// N_a = eps_{abcd} u_b v_c w_d
Vec4 cross4(const Vec4& u, const Vec4& v, const Vec4& w) {
  auto det3 = [](double a1, double a2, double a3, double b1, double b2, double b3, double c1,
                 double c2, double c3) {
    return a1 * (b2 * c3 - b3 * c2) - a2 * (b1 * c3 - b3 * c1) + a3 * (b1 * c2 - b2 * c1);
  };
  return {det3(u[1], u[2], u[3], v[1], v[2], v[3], w[1], w[2], w[3]),
          -det3(u[0], u[2], u[3], v[0], v[2], v[3], w[0], w[2], w[3]),
          det3(u[0], u[1], u[3], v[0], v[1], v[3], w[0], w[1], w[3]),
          -det3(u[0], u[1], u[2], v[0], v[1], v[2], w[0], w[1], w[2])};
}

struct SurfaceDiff {
  Vec4 v, fx, fy, fxx, fyy, fxy, n;
  double E;
};

std::optional<SurfaceDiff> diffs_at(const SurfaceMap& s, int i, int j) {
  const GridSpec& g = s.grid;
  if (i < 1 || i >= g.nx - 1 || j < 1 || j >= g.ny - 1) return std::nullopt;
  double h = g.h;
  auto V = [&](int ii, int jj) { return su2_to_r4(s.at(ii, jj)); };
  SurfaceDiff d;
  d.v = V(i, j);
  d.fx = scale(sub(V(i + 1, j), V(i - 1, j)), 1.0 / (2 * h));
  d.fy = scale(sub(V(i, j + 1), V(i, j - 1)), 1.0 / (2 * h));
  d.fxx = scale(add(sub(V(i + 1, j), scale(V(i, j), 2.0)), V(i - 1, j)), 1.0 / (h * h));
  d.fyy = scale(add(sub(V(i, j + 1), scale(V(i, j), 2.0)), V(i, j - 1)), 1.0 / (h * h));
  d.fxy = scale(sub(sub(V(i + 1, j + 1), V(i + 1, j - 1)), sub(V(i - 1, j + 1), V(i - 1, j - 1))),
                1.0 / (4 * h * h));
  Vec4 n = cross4(d.v, d.fx, d.fy);
  double ln = len(n);
  if (ln < 1e-12) return std::nullopt;
  d.n = scale(n, 1.0 / ln);
  d.E = 0.5 * (dot(d.fx, d.fx) + dot(d.fy, d.fy));
  return d;
}

}  // namespace

GeometryReport geometry_report(const SurfaceMap& s) {
  const GridSpec& g = s.grid;
  GeometryReport rep;
  double scale_sum = 0.0;
  int count = 0;
  std::vector<cplx> hopfs;
  double min_fx = std::numeric_limits<double>::infinity();
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      auto dopt = diffs_at(s, i, j);
      if (!dopt) {
        rep.degenerate = true;
        continue;
      }
      const SurfaceDiff& d = *dopt;
      double lx = len(d.fx), ly = len(d.fy);
      min_fx = std::min(min_fx, std::min(lx, ly));
      rep.conformality = std::max(rep.conformality, std::abs(dot(d.fx, d.fy)) + std::abs(lx - ly));
      Vec4 lap = add(d.fxx, d.fyy);
      rep.mean_curvature = std::max(rep.mean_curvature, std::abs(dot(lap, d.n) / (2.0 * d.E)));
      hopfs.push_back(cplx(dot(sub(d.fxx, d.fyy), d.n) / 4.0, -0.5 * dot(d.fxy, d.n)));
      scale_sum += lx;
      ++count;
    }
  if (count == 0) {
    rep.degenerate = true;
    return rep;
  }
  rep.metric_scale = scale_sum / count;
  if (min_fx < 1e-8 * std::max(1.0, rep.metric_scale)) rep.degenerate = true;
  cplx mean = 0.0;
  for (cplx q : hopfs) mean += q;
  mean /= double(hopfs.size());
  rep.hopf_mean = mean;
  for (cplx q : hopfs) rep.hopf_deviation = std::max(rep.hopf_deviation, std::abs(q - mean));
  return rep;
}

double clifford_torus_deviation(const SurfaceMap& s) {
  const GridSpec& g = s.grid;
  std::vector<Vec4> cplus, cminus, pts;
  const double r = 1.0 / std::sqrt(2.0);
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      auto dopt = diffs_at(s, i, j);
      if (!dopt) continue;
      const SurfaceDiff& d = *dopt;
      cplus.push_back(scale(add(d.v, d.n), r));
      cminus.push_back(scale(sub(d.v, d.n), r));
      pts.push_back(d.v);
    }
  if (pts.size() < 8) return std::numeric_limits<double>::infinity();

  // the focal circles of a Clifford torus span two orthogonal 2-planes;
  // align them with the coordinate w1/w2 planes
  auto plane_basis = [](const std::vector<Vec4>& cloud) {
    Eigen::MatrixXd m(cloud.size(), 4);
    for (size_t k = 0; k < cloud.size(); ++k)
      for (int c = 0; c < 4; ++c) m(static_cast<int>(k), c) = cloud[k][c];
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
    return std::pair<Eigen::Vector4d, Eigen::Vector4d>(svd.matrixV().col(0), svd.matrixV().col(1));
  };
  auto [p1, p2] = plane_basis(cplus);
  auto [m1, m2] = plane_basis(cminus);
  Eigen::Matrix4d Q;
  Q.col(0) = p1;
  Q.col(1) = p2;
  for (int c = 0; c < 2; ++c) {
    m1 -= Q.col(c) * Q.col(c).dot(m1);
    m2 -= Q.col(c) * Q.col(c).dot(m2);
  }
  m1.normalize();
  m2 -= m1 * m1.dot(m2);
  m2.normalize();
  Q.col(2) = m1;
  Q.col(3) = m2;
  double dev = 0.0;
  for (const Vec4& v : pts) {
    Eigen::Vector4d y = Q.transpose() * Eigen::Vector4d(v[0], v[1], v[2], v[3]);
    dev = std::max(dev, std::abs(std::hypot(y[0], y[1]) - r));
  }
  return dev;
}

DPWPotential vacuum_potential(cplx gamma) {
  DPWPotential pot;
  pot.add(-1, 0, 1, Rational::constant(1.0));
  pot.add(0, 1, 0, Rational::constant(gamma));
  return pot;
}

Matrix2 vacuum_frame(cplx z, cplx zeta, cplx gamma) {
  cplx beta = -std::conj(gamma);
  cplx zb = std::conj(z);
  Matrix2 w =
      Matrix2::e_plus() * (z / zeta + beta * zb) + Matrix2::e_minus() * (gamma * z - zeta * zb);
  return mexp(w);
}

}  // namespace dpw
