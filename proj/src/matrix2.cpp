#include "dpw/matrix2.hpp"

namespace dpw {

static cplx sinhc(cplx mu) {
  if (std::abs(mu) < 1e-4) {
    cplx m2 = mu * mu;
    return 1.0 + m2 / 6.0 + m2 * m2 / 120.0;
  }
  return std::sinh(mu) / mu;
}

Matrix2 mexp(const Matrix2& m) {
  cplx s = m.trace() * 0.5;
  Matrix2 n = m - Matrix2::diag(s, s);
  cplx mu = std::sqrt(-n.det());
  Matrix2 r = Matrix2::identity() * std::cosh(mu) + n * sinhc(mu);
  return r * std::exp(s);
}

void qr_pos(const Matrix2& a, Matrix2& q, Matrix2& r) {
  // Gram-Schmidt on columns; R gets a positive real diagonal.
  cplx a11 = a(0, 0), a21 = a(1, 0), a12 = a(0, 1), a22 = a(1, 1);
  double n1 = std::sqrt(std::norm(a11) + std::norm(a21));
  cplx q11 = a11 / n1, q21 = a21 / n1;
  cplx r12 = std::conj(q11) * a12 + std::conj(q21) * a22;
  cplx w1 = a12 - q11 * r12, w2 = a22 - q21 * r12;
  double n2 = std::sqrt(std::norm(w1) + std::norm(w2));
  cplx q12 = w1 / n2, q22 = w2 / n2;
  q = {q11, q12, q21, q22};
  r = {cplx(n1), r12, 0.0, cplx(n2)};
}

double smin(const Matrix2& a) {
  // singular values of a 2x2: s^2 are eigenvalues of A^† A
  Matrix2 g = a.adjoint() * a;
  double tr = g.trace().real();
  double dt = std::abs(g.det());
  double disc = std::max(0.0, tr * tr / 4.0 - dt);
  double lam = tr / 2.0 - std::sqrt(disc);
  return std::sqrt(std::max(0.0, lam));
}

}  // namespace dpw
