#include "dpw/transport.hpp"

#include <functional>
#include <numbers>
#include <stdexcept>

namespace dpw {

Path Path::circle(cplx center, double radius, int n) {
  Path p;
  for (int k = 0; k <= n; ++k)
    p.waypoints.push_back(center + std::polar(radius, 2.0 * std::numbers::pi * k / n));
  p.waypoints.back() = p.waypoints.front();
  p.closed = true;
  return p;
}

Path Path::lasso(cplx base, cplx center, double radius, int n) {
  double a0 = std::arg(base - center);  // enter the circle facing the base
  Path p;
  p.waypoints.push_back(base);
  for (int k = 0; k <= n; ++k)
    p.waypoints.push_back(center + std::polar(radius, a0 + 2.0 * std::numbers::pi * k / n));
  p.waypoints[n + 1] = p.waypoints[1];
  p.waypoints.push_back(base);
  p.closed = true;
  return p;
}

void Path::validate() const {
  if (waypoints.size() < 2) throw std::invalid_argument("Path: need at least two waypoints");
  for (size_t k = 1; k < waypoints.size(); ++k)
    if (waypoints[k] == waypoints[k - 1])
      throw std::invalid_argument("Path: consecutive waypoints must be distinct");
}

static double seg_point_dist(cplx a, cplx b, cplx p) {
  cplx d = b - a;
  double l2 = std::norm(d);
  if (l2 == 0.0) return std::abs(p - a);
  double t = std::clamp(((p - a) * std::conj(d)).real() / l2, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

double Path::min_distance_to(std::span<const cplx> points) const {
  double m = std::numeric_limits<double>::infinity();
  for (size_t k = 1; k < waypoints.size(); ++k)
    for (cplx p : points) m = std::min(m, seg_point_dist(waypoints[k - 1], waypoints[k], p));
  return m;
}

namespace {

double clearance(const std::vector<cplx>& poles, double requested) {
  if (requested >= 0.0) return requested;
  double dmin = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < poles.size(); ++i)
    for (size_t j = i + 1; j < poles.size(); ++j)
      dmin = std::min(dmin, std::abs(poles[i] - poles[j]));
  if (!std::isfinite(dmin)) dmin = 1.0;
  return 1e-2 * dmin;
}

void check_clearance(const DPWPotential& pot, const Path& path, const TransportOptions& opts) {
  path.validate();
  std::vector<cplx> poles = pot.pole_locations();
  if (poles.empty()) return;
  double delta = clearance(poles, opts.pole_clearance);
  if (path.min_distance_to(poles) < delta)
    throw std::runtime_error("transport: path-too-close to a pole (clearance " +
                             std::to_string(delta) + ")");
}

double state_norm(const Matrix2& m) { return m.frobenius(); }
double state_norm(const MatrixLoop& l) { return loop_norm(l); }

// Dormand-Prince 5(4) over one straight segment, dy/dt = rhs(z(t)) applied
// to y from the right.  Rhs: y, z, dz -> derivative state.
template <class State, class Rhs>
State integrate_segment(State y, cplx z0, cplx z1, double tol, const TransportOptions& opts,
                        Rhs&& rhs, int& renorm_counter, const std::function<void(State&)>& renorm,
                        long& steps) {
  static const double A[7][6] = {
      {},
      {1.0 / 5},
      {3.0 / 40, 9.0 / 40},
      {44.0 / 45, -56.0 / 15, 32.0 / 9},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
      {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double C[7] = {0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
  static const double B5[7] = {35.0 / 384,      0.0,        500.0 / 1113, 125.0 / 192,
                               -2187.0 / 6784,  11.0 / 84,  0.0};
  static const double B4[7] = {5179.0 / 57600,  0.0,          7571.0 / 16695, 393.0 / 640,
                               -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

  cplx dz = z1 - z0;
  double t = 0.0, h = 0.1;
  const double hmin = 1e-13;
  State k[7];
  while (t < 1.0) {
    h = std::min(h, 1.0 - t);
    k[0] = rhs(y, z0 + t * dz, dz);
    for (int s = 1; s < 7; ++s) {
      State ys = y;
      for (int j = 0; j < s; ++j)
        if (A[s][j] != 0.0) ys = ys + cplx(h * A[s][j]) * k[j];
      k[s] = rhs(ys, z0 + (t + C[s] * h) * dz, dz);
    }
    State y5 = y, err{};
    for (int s = 0; s < 7; ++s) {
      if (B5[s] != 0.0) y5 = y5 + cplx(h * B5[s]) * k[s];
      double db = B5[s] - B4[s];
      if (db != 0.0) err = err + cplx(h * db) * k[s];
    }
    double scale = std::max(1.0, state_norm(y));
    double e = state_norm(err);
    if (++steps > opts.max_steps)
      throw std::runtime_error("transport: step budget exhausted");
    if (e <= tol * scale) {
      t += h;
      y = y5;
      if (++renorm_counter % opts.renorm_every == 0) renorm(y);
    }
    double f = 0.9 * std::pow(tol * scale / std::max(e, 1e-300), 0.2);
    h *= std::clamp(f, 0.2, 5.0);
    if (h < hmin && t < 1.0)
      throw std::runtime_error("transport: stiffness failure (step underflow)");
  }
  return y;
}

}  // namespace

Matrix2 parallel_transport(const DPWPotential& pot, const Path& path, cplx zeta,
                           const TransportOptions& opts) {
  check_clearance(pot, path, opts);
  if (zeta == cplx(0.0) && pot.lo() < 0)
    throw std::domain_error("transport: pole-of-family at zeta = 0");
  Matrix2 y = Matrix2::identity();
  int counter = 0;
  long steps = 0;
  std::function<void(Matrix2&)> renorm = [](Matrix2& m) {
    cplx d = m.det();
    m *= 1.0 / std::sqrt(d);  // principal branch; trace-free generator keeps det near 1
  };
  auto rhs = [&](const Matrix2& s, cplx z, cplx dz) { return s * (pot.eval(z, zeta) * dz); };
  for (size_t seg = 1; seg < path.waypoints.size(); ++seg)
    y = integrate_segment(y, path.waypoints[seg - 1], path.waypoints[seg], opts.tol, opts, rhs,
                          counter, renorm, steps);
  return y;
}

MatrixLoop parallel_transport_loop(const DPWPotential& pot, const Path& path, int trunc,
                                   const TransportOptions& opts, double* tail_norm) {
  check_clearance(pot, path, opts);
  MatrixLoop y = MatrixLoop::identity();
  int counter = 0;
  long steps = 0;
  double tails = 0.0;
  std::function<void(MatrixLoop&)> renorm = [&](MatrixLoop& l) {
    ScalarLoop d = det_loop(l);
    l = scalar_mul(inv_sqrt_near_one(d, trunc), l, trunc);
  };
  auto rhs = [&](const MatrixLoop& s, cplx z, cplx dz) {
    MatrixLoop xi;
    for (const auto& [n, m] : pot.terms) {
      Matrix2 c;
      for (int k = 0; k < 4; ++k) c.e[k] = m[k].eval(z) * dz;
      xi = xi + MatrixLoop::monomial(n, c);
    }
    return loop_mul_capped(s, xi, trunc, &tails);
  };
  for (size_t seg = 1; seg < path.waypoints.size(); ++seg)
    y = integrate_segment(y, path.waypoints[seg - 1], path.waypoints[seg], opts.tol, opts, rhs,
                          counter, renorm, steps);
  if (tail_norm) *tail_norm = tails;
  return y;
}

Holonomy holonomy(const DPWPotential& pot, const Path& loop, cplx zeta,
                  const TransportOptions& opts) {
  if (!loop.closed && loop.waypoints.front() != loop.waypoints.back())
    throw std::invalid_argument("holonomy: path is not closed");
  Path p = loop;
  if (p.waypoints.front() != p.waypoints.back()) p.waypoints.push_back(p.waypoints.front());
  Holonomy h;
  h.value = parallel_transport(pot, p, zeta, opts);
  h.zeta = zeta;
  h.basepoint = p.waypoints.front();
  h.det_error = std::abs(h.value.det() - cplx(1.0));
  return h;
}

double holonomy_basepoint_covariance(const DPWPotential& pot, const Path& loop, cplx zeta, int k,
                                     const TransportOptions& opts) {
  Path p = loop;
  if (p.waypoints.front() != p.waypoints.back()) p.waypoints.push_back(p.waypoints.front());
  int n = static_cast<int>(p.waypoints.size()) - 1;  // closing point duplicated
  k = ((k % n) + n) % n;
  Path rotated;  // same loop traversed from waypoint k
  for (int j = 0; j <= n; ++j) rotated.waypoints.push_back(p.waypoints[(k + j) % n]);
  rotated.closed = true;
  // transport from the original basepoint to waypoint k
  Path head;
  for (int j = 0; j <= k; ++j) head.waypoints.push_back(p.waypoints[j]);
  Matrix2 H = holonomy(pot, p, zeta, opts).value;
  Matrix2 Hk = holonomy(pot, rotated, zeta, opts).value;
  if (head.waypoints.size() < 2) return (H - Hk).frobenius();
  Matrix2 T = parallel_transport(pot, head, zeta, opts);
  // d Psi = Psi xi composes transports on the right: H = T Hk T^{-1}
  return (H - T * Hk * T.inverse()).frobenius();
}

double abelianness_probe(std::span<const Matrix2> hols) {
  double worst = 0.0;
  for (size_t i = 0; i < hols.size(); ++i)
    for (size_t j = i + 1; j < hols.size(); ++j)
      worst = std::max(worst, (hols[i] * hols[j] - hols[j] * hols[i]).frobenius());
  return worst;
}

}  // namespace dpw
