#pragma once

#include <array>
#include <complex>
#include <cmath>

namespace dpw {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};

// 2x2 complex matrix, row-major storage.  Small enough that everything is
// done with closed forms; no Eigen in the hot loops.
struct Matrix2 {
  std::array<cplx, 4> e{};  // [ e0 e1 ; e2 e3 ]

  Matrix2() = default;
  Matrix2(cplx a, cplx b, cplx c, cplx d) : e{a, b, c, d} {}

  static Matrix2 zero() { return {}; }
  static Matrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Matrix2 diag(cplx a, cplx d) { return {a, 0.0, 0.0, d}; }
  // nilpotent basis elements and the Cartan generator
  static Matrix2 e_plus() { return {0.0, 1.0, 0.0, 0.0}; }
  static Matrix2 e_minus() { return {0.0, 0.0, 1.0, 0.0}; }
  static Matrix2 cartan() { return {1.0, 0.0, 0.0, -1.0}; }

  cplx& operator()(int i, int j) { return e[2 * i + j]; }
  const cplx& operator()(int i, int j) const { return e[2 * i + j]; }

  Matrix2 operator+(const Matrix2& o) const {
    return {e[0] + o.e[0], e[1] + o.e[1], e[2] + o.e[2], e[3] + o.e[3]};
  }
  Matrix2 operator-(const Matrix2& o) const {
    return {e[0] - o.e[0], e[1] - o.e[1], e[2] - o.e[2], e[3] - o.e[3]};
  }
  Matrix2 operator-() const { return {-e[0], -e[1], -e[2], -e[3]}; }
  Matrix2& operator+=(const Matrix2& o) {
    for (int k = 0; k < 4; ++k) e[k] += o.e[k];
    return *this;
  }
  Matrix2& operator-=(const Matrix2& o) {
    for (int k = 0; k < 4; ++k) e[k] -= o.e[k];
    return *this;
  }
  Matrix2 operator*(const Matrix2& o) const {
    return {e[0] * o.e[0] + e[1] * o.e[2], e[0] * o.e[1] + e[1] * o.e[3],
            e[2] * o.e[0] + e[3] * o.e[2], e[2] * o.e[1] + e[3] * o.e[3]};
  }
  Matrix2 operator*(cplx s) const { return {e[0] * s, e[1] * s, e[2] * s, e[3] * s}; }
  Matrix2& operator*=(cplx s) {
    for (auto& x : e) x *= s;
    return *this;
  }
  friend Matrix2 operator*(cplx s, const Matrix2& m) { return m * s; }

  cplx det() const { return e[0] * e[3] - e[1] * e[2]; }
  cplx trace() const { return e[0] + e[3]; }
  Matrix2 adjoint() const {  // conjugate transpose
    return {std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])};
  }
  Matrix2 transpose() const { return {e[0], e[2], e[1], e[3]}; }
  Matrix2 conjugate() const {
    return {std::conj(e[0]), std::conj(e[1]), std::conj(e[2]), std::conj(e[3])};
  }
  Matrix2 adjugate() const { return {e[3], -e[1], -e[2], e[0]}; }
  Matrix2 inverse() const {
    cplx d = det();
    return adjugate() * (1.0 / d);
  }

  double frobenius() const {
    double s = 0.0;
    for (const auto& x : e) s += std::norm(x);
    return std::sqrt(s);
  }
  double max_abs() const {
    double m = 0.0;
    for (const auto& x : e) m = std::max(m, std::abs(x));
    return m;
  }
  bool is_finite() const {
    for (const auto& x : e)
      if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    return true;
  }
};

// Matrix exponential via M = (tr/2) I + N with N trace-free and
// N^2 = -det(N) I, so exp(N) = cosh(mu) I + sinhc(mu) N, mu^2 = -det N.
Matrix2 mexp(const Matrix2& m);

// QR with R upper triangular and strictly positive real diagonal (A invertible).
void qr_pos(const Matrix2& a, Matrix2& q, Matrix2& r);

// Smallest singular value (for conditioning checks).
double smin(const Matrix2& a);

}  // namespace dpw
