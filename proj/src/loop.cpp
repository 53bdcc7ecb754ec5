#include "dpw/loop.hpp"

#include <numbers>
#include <stdexcept>

namespace dpw {

MatrixLoop MatrixLoop::trimmed(double eps) const {
  size_t b = 0, e = coeffs.size();
  while (b < e && coeffs[b].frobenius() <= eps) ++b;
  while (e > b && coeffs[e - 1].frobenius() <= eps) --e;
  if (b == e) return {};
  return {lo + static_cast<int>(b),
          std::vector<Matrix2>(coeffs.begin() + b, coeffs.begin() + e)};
}

bool MatrixLoop::is_finite() const {
  for (const auto& m : coeffs)
    if (!m.is_finite()) return false;
  return true;
}

MatrixLoop operator+(const MatrixLoop& a, const MatrixLoop& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  int lo = std::min(a.lo, b.lo), hi = std::max(a.hi(), b.hi());
  std::vector<Matrix2> c(hi - lo + 1);
  for (int n = lo; n <= hi; ++n) c[n - lo] = a.coeff(n) + b.coeff(n);
  return MatrixLoop{lo, std::move(c)}.trimmed();
}

MatrixLoop operator-(const MatrixLoop& a, const MatrixLoop& b) {
  return a + (cplx(-1.0) * b);
}

MatrixLoop operator*(cplx s, const MatrixLoop& a) {
  MatrixLoop r = a;
  for (auto& m : r.coeffs) m *= s;
  return r;
}

MatrixLoop loop_mul(const MatrixLoop& a, const MatrixLoop& b) {
  if (a.is_zero() || b.is_zero()) return {};
  int lo = a.lo + b.lo;
  int hi = a.hi() + b.hi();
  std::vector<Matrix2> c(hi - lo + 1);
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j)
      c[i + j] += a.coeffs[i] * b.coeffs[j];
  return MatrixLoop{lo, std::move(c)}.trimmed();
}

MatrixLoop loop_mul_capped(const MatrixLoop& a, const MatrixLoop& b, int max_degree,
                           double* tail_norm) {
  MatrixLoop full = loop_mul(a, b);
  if (full.is_zero()) return full;
  double tail = 0.0;
  int lo = std::max(full.lo, -max_degree);
  int hi = std::min(full.hi(), max_degree);
  for (int n = full.lo; n <= full.hi(); ++n)
    if (n < -max_degree || n > max_degree) tail += full.coeff(n).frobenius();
  if (tail_norm) *tail_norm += tail;
  if (lo > hi) return {};
  std::vector<Matrix2> c(full.coeffs.begin() + (lo - full.lo),
                         full.coeffs.begin() + (hi - full.lo + 1));
  return MatrixLoop{lo, std::move(c)}.trimmed();
}

Matrix2 loop_eval(const MatrixLoop& a, cplx zeta) {
  if (a.is_zero()) return Matrix2::zero();
  if (zeta == cplx(0.0)) {
    if (a.lo < 0 && a.trimmed().lo < 0)
      throw std::domain_error("loop_eval: pole-at-origin (zeta = 0 with negative support)");
    return a.coeff(0);
  }
  // Horner from the top coefficient, then multiply by zeta^lo.
  Matrix2 acc = Matrix2::zero();
  for (auto it = a.coeffs.rbegin(); it != a.coeffs.rend(); ++it) acc = acc * zeta + *it;
  return acc * std::pow(zeta, cplx(double(a.lo)));
}

MatrixLoop loop_star(const MatrixLoop& a) {
  if (a.is_zero()) return {};
  int lo = -a.hi();
  std::vector<Matrix2> c(a.coeffs.size());
  for (int n = lo; n <= -a.lo; ++n) c[n - lo] = a.coeff(-n).adjoint();
  return {lo, std::move(c)};
}

double loop_norm(const MatrixLoop& a) {
  double s = 0.0;
  for (const auto& m : a.coeffs) s += m.frobenius();
  return s;
}

double sup_norm_circle(const MatrixLoop& a, int nsamples) {
  double s = 0.0;
  for (int k = 0; k < nsamples; ++k) {
    double th = 2.0 * std::numbers::pi * k / nsamples;
    s = std::max(s, loop_eval(a, std::polar(1.0, th)).frobenius());
  }
  return s;
}

LoopClass classify_loop(const MatrixLoop& a, double tol, int nsamples) {
  MatrixLoop t = a.trimmed();
  if (!t.is_zero() && t.lo >= 0) {
    Matrix2 c0 = t.coeff(0);
    bool upper = std::abs(c0(1, 0)) <= tol;
    bool posdiag = c0(0, 0).real() > 0.0 && std::abs(c0(0, 0).imag()) <= tol &&
                   c0(1, 1).real() > 0.0 && std::abs(c0(1, 1).imag()) <= tol;
    if (upper && posdiag) return LoopClass::plus;
  }
  MatrixLoop g = loop_mul(loop_star(a), a) - MatrixLoop::identity();
  if (sup_norm_circle(g, nsamples) < tol) return LoopClass::unitary;
  return LoopClass::general;
}

MatrixLoop inverse_plus(const MatrixLoop& a, int degree, double* tail_gauge) {
  MatrixLoop t = a.trimmed();
  if (t.is_zero() || t.lo != 0)
    throw std::invalid_argument("inverse_plus: loop is not in the plus class");
  Matrix2 c0inv = t.coeff(0).inverse();
  std::vector<Matrix2> inv(degree + 1);
  inv[0] = c0inv;
  int K = t.hi();
  for (int m = 1; m <= degree; ++m) {
    Matrix2 s = Matrix2::zero();
    for (int j = 1; j <= std::min(m, K); ++j) s += t.coeff(j) * inv[m - j];
    inv[m] = -(c0inv * s);
  }
  if (tail_gauge) *tail_gauge = inv[degree].frobenius();
  return MatrixLoop{0, std::move(inv)}.trimmed();
}

cplx ScalarLoop::eval(cplx zeta) const {
  cplx acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * zeta + *it;
  return acc * std::pow(zeta, cplx(double(lo)));
}

ScalarLoop det_loop(const MatrixLoop& a) {
  if (a.is_zero()) return {};
  // det = a11*a22 - a12*a21 as scalar Laurent convolutions
  int lo = 2 * a.lo, hi = 2 * a.hi();
  std::vector<cplx> c(hi - lo + 1, 0.0);
  int n = static_cast<int>(a.coeffs.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Matrix2 &x = a.coeffs[i], &y = a.coeffs[j];
      c[i + j] += x(0, 0) * y(1, 1) - x(0, 1) * y(1, 0);
    }
  ScalarLoop d{lo, std::move(c)};
  while (!d.coeffs.empty() && std::abs(d.coeffs.back()) == 0.0) d.coeffs.pop_back();
  while (!d.coeffs.empty() && std::abs(d.coeffs.front()) == 0.0) {
    d.coeffs.erase(d.coeffs.begin());
    ++d.lo;
  }
  return d;
}

static ScalarLoop smul(const ScalarLoop& a, const ScalarLoop& b, int cap) {
  if (a.is_zero() || b.is_zero()) return {};
  int lo = std::max(a.lo + b.lo, -cap);
  int hi = std::min(a.hi() + b.hi(), cap);
  if (lo > hi) return {};
  std::vector<cplx> c(hi - lo + 1, 0.0);
  for (int i = a.lo; i <= a.hi(); ++i)
    for (int j = b.lo; j <= b.hi(); ++j) {
      int n = i + j;
      if (n >= lo && n <= hi) c[n - lo] += a.coeff(i) * b.coeff(j);
    }
  return {lo, std::move(c)};
}

static ScalarLoop saxpy(cplx alpha, const ScalarLoop& a, cplx beta, const ScalarLoop& b) {
  int lo = std::min(a.is_zero() ? 0 : a.lo, b.is_zero() ? 0 : b.lo);
  int hi = std::max(a.is_zero() ? 0 : a.hi(), b.is_zero() ? 0 : b.hi());
  std::vector<cplx> c(hi - lo + 1, 0.0);
  for (int n = lo; n <= hi; ++n) c[n - lo] = alpha * a.coeff(n) + beta * b.coeff(n);
  return {lo, std::move(c)};
}

ScalarLoop inv_sqrt_near_one(const ScalarLoop& d, int max_degree, int iters) {
  ScalarLoop r{0, {1.0}};
  for (int it = 0; it < iters; ++it) {
    // r <- r (3 - d r^2) / 2
    ScalarLoop r2 = smul(r, r, max_degree);
    ScalarLoop dr2 = smul(d, r2, max_degree);
    ScalarLoop u = saxpy(3.0, ScalarLoop{0, {1.0}}, 0.0, ScalarLoop{});
    u = saxpy(1.0, u, -1.0, dr2);
    r = smul(r, u, max_degree);
    for (auto& x : r.coeffs) x *= 0.5;
  }
  return r;
}

MatrixLoop scalar_mul(const ScalarLoop& s, const MatrixLoop& a, int max_degree) {
  if (s.is_zero() || a.is_zero()) return {};
  int lo = std::max(s.lo + a.lo, -max_degree);
  int hi = std::min(s.hi() + a.hi(), max_degree);
  if (lo > hi) return {};
  std::vector<Matrix2> c(hi - lo + 1);
  for (int i = s.lo; i <= s.hi(); ++i)
    for (int j = a.lo; j <= a.hi(); ++j) {
      int n = i + j;
      if (n >= lo && n <= hi) c[n - lo] += a.coeff(j) * s.coeff(i);
    }
  return MatrixLoop{lo, std::move(c)}.trimmed();
}

}  // namespace dpw
