#include "dpw/complexpoly.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <functional>
#include <stdexcept>

namespace dpw {

Poly Poly::from_roots(std::span<const cplx> roots, cplx lead) {
  Poly p = Poly::constant(lead);
  for (cplx r : roots) p = p * Poly{std::vector<cplx>{-r, 1.0}};
  return p;
}

void Poly::trim(double eps) {
  double cut = eps > 0.0 ? eps * std::max(1.0, max_abs()) : 0.0;
  while (!c.empty() && std::abs(c.back()) <= cut) c.pop_back();
}

double Poly::max_abs() const {
  double m = 0.0;
  for (const auto& x : c) m = std::max(m, std::abs(x));
  return m;
}

cplx Poly::eval(cplx z) const {
  cplx v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * z + *it;
  return v;
}

Poly Poly::derivative() const {
  if (c.size() <= 1) return {};
  std::vector<cplx> d(c.size() - 1);
  for (size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * cplx(double(k));
  return Poly{std::move(d)};
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<cplx> r(std::max(c.size(), o.c.size()), 0.0);
  for (size_t k = 0; k < c.size(); ++k) r[k] += c[k];
  for (size_t k = 0; k < o.c.size(); ++k) r[k] += o.c[k];
  return Poly{std::move(r)};
}

Poly Poly::operator-(const Poly& o) const { return *this + o * cplx(-1.0); }

Poly Poly::operator*(const Poly& o) const {
  if (c.empty() || o.c.empty()) return {};
  std::vector<cplx> r(c.size() + o.c.size() - 1, 0.0);
  for (size_t i = 0; i < c.size(); ++i)
    for (size_t j = 0; j < o.c.size(); ++j) r[i + j] += c[i] * o.c[j];
  return Poly{std::move(r)};
}

Poly Poly::operator*(cplx s) const {
  std::vector<cplx> r = c;
  for (auto& x : r) x *= s;
  return Poly{std::move(r)};
}

void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r) {
  if (b.is_zero()) throw std::invalid_argument("poly_divmod: division by zero polynomial");
  std::vector<cplx> rem = a.c;
  int db = b.degree();
  int dq = a.degree() - db;
  if (dq < 0) {
    q = {};
    r = a;
    return;
  }
  std::vector<cplx> quo(dq + 1, 0.0);
  cplx inv = 1.0 / b.lead();
  for (int k = dq; k >= 0; --k) {
    cplx f = rem[k + db] * inv;
    quo[k] = f;
    for (int j = 0; j <= db; ++j) rem[k + j] -= f * b.c[j];
  }
  rem.resize(db > 0 ? db : 0);
  q = Poly{std::move(quo)};
  r = Poly{std::move(rem)};
  r.trim(1e-14);
}

std::vector<cplx> poly_roots(const Poly& p) {
  Poly q = p;
  q.trim(1e-14);
  int n = q.degree();
  if (n <= 0) return {};
  if (n == 1) return {-q.c[0] / q.c[1]};
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  cplx inv = 1.0 / q.lead();
  for (int k = 0; k < n; ++k) comp(k, n - 1) = -q.c[k] * inv;
  for (int k = 1; k < n; ++k) comp(k, k - 1) = 1.0;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cplx> roots(n);
  Poly dp = q.derivative();
  for (int k = 0; k < n; ++k) {
    cplx z = es.eigenvalues()(k);
    for (int it = 0; it < 3; ++it) {  // Newton polish
      cplx d = dp.eval(z);
      if (std::abs(d) < 1e-300) break;
      cplx step = q.eval(z) / d;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      z -= step;
    }
    roots[k] = z;
  }
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

int root_multiplicity(const Poly& p, cplx z0, double tol) {
  if (p.is_zero()) return 0;
  double scale = std::max(p.max_abs(), 1e-300);
  Poly d = p;
  int m = 0;
  while (m <= p.degree()) {
    if (std::abs(d.eval(z0)) > tol * std::max(1.0, scale)) break;
    ++m;
    d = d.derivative();
    scale = std::max(d.max_abs(), 1e-300);
  }
  return m;
}

std::vector<std::vector<int>> cluster_points(std::span<const cplx> pts, double tol) {
  int n = static_cast<int>(pts.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(pts[i] - pts[j]) <= tol) parent[find(i)] = find(j);
  std::vector<std::vector<int>> groups;
  std::vector<int> label(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (label[r] < 0) {
      label[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[label[r]].push_back(i);
  }
  return groups;
}

}  // namespace dpw
