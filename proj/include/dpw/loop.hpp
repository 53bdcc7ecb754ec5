#pragma once

#include <vector>
#include "dpw/matrix2.hpp"

namespace dpw {

// 2x2-matrix-valued finite Laurent series in the spectral parameter zeta.
// Coefficients cover indices lo .. lo+coeffs.size()-1; the zero loop has
// empty support.  Values are immutable in spirit: every operation returns
// a fresh loop.
struct MatrixLoop {
  int lo = 0;
  std::vector<Matrix2> coeffs;

  MatrixLoop() = default;
  MatrixLoop(int lo_, std::vector<Matrix2> c) : lo(lo_), coeffs(std::move(c)) {}

  static MatrixLoop zero() { return {}; }
  static MatrixLoop constant(const Matrix2& m) { return {0, {m}}; }
  static MatrixLoop identity() { return constant(Matrix2::identity()); }
  static MatrixLoop monomial(int n, const Matrix2& m) { return {n, {m}}; }

  bool is_zero() const { return coeffs.empty(); }
  int hi() const { return lo + static_cast<int>(coeffs.size()) - 1; }
  int truncation_degree() const {  // N = max(|lo|, |hi|)
    if (is_zero()) return 0;
    return std::max(std::abs(lo), std::abs(hi()));
  }
  Matrix2 coeff(int n) const {
    if (is_zero() || n < lo || n > hi()) return Matrix2::zero();
    return coeffs[n - lo];
  }
  // drop zero (or <= eps in Frobenius norm) coefficients at both ends
  MatrixLoop trimmed(double eps = 0.0) const;
  bool is_finite() const;
};

MatrixLoop operator+(const MatrixLoop& a, const MatrixLoop& b);
MatrixLoop operator-(const MatrixLoop& a, const MatrixLoop& b);
MatrixLoop operator*(cplx s, const MatrixLoop& a);

// Cauchy convolution; exact (support range is the sum of ranges).
MatrixLoop loop_mul(const MatrixLoop& a, const MatrixLoop& b);

// Convolution with support capped to [-max_degree, max_degree]; the Wiener
// norm of the discarded tail is accumulated into *tail_norm if non-null.
MatrixLoop loop_mul_capped(const MatrixLoop& a, const MatrixLoop& b, int max_degree,
                           double* tail_norm);

// Horner-style evaluation.  Throws std::domain_error("pole-at-origin") for
// zeta == 0 with negative support.
Matrix2 loop_eval(const MatrixLoop& a, cplx zeta);

// star(a)(zeta) = a(1/conj(zeta))^†, i.e. star(a)_m = (a_{-m})^†.
MatrixLoop loop_star(const MatrixLoop& a);

// Wiener norm: sum of Frobenius norms of the coefficients.
double loop_norm(const MatrixLoop& a);

// max Frobenius norm over n equispaced samples of the unit circle.
double sup_norm_circle(const MatrixLoop& a, int nsamples = 64);

enum class LoopClass { general, unitary, plus };

// unitary  <=>  ||star(a)a - I||_sup < tol on the unit circle;
// plus     <=>  lo >= 0 and coefficient 0 upper-triangular with strictly
//               positive real diagonal.
LoopClass classify_loop(const MatrixLoop& a, double tol, int nsamples = 64);

// Power-series inverse of a plus loop (a(0) invertible), truncated at
// `degree`; the Frobenius norm of the last computed coefficient is written
// to *tail_gauge as a decay indicator if non-null.
MatrixLoop inverse_plus(const MatrixLoop& a, int degree, double* tail_gauge = nullptr);

// Scalar finite Laurent series; used for determinants of loops.
struct ScalarLoop {
  int lo = 0;
  std::vector<cplx> coeffs;
  bool is_zero() const { return coeffs.empty(); }
  int hi() const { return lo + static_cast<int>(coeffs.size()) - 1; }
  cplx coeff(int n) const {
    if (is_zero() || n < lo || n > hi()) return 0.0;
    return coeffs[n - lo];
  }
  cplx eval(cplx zeta) const;
};

ScalarLoop det_loop(const MatrixLoop& a);
// inverse square root of a scalar loop close to 1, by Newton iteration in
// the truncated Laurent algebra (support capped to [-max_degree, max_degree])
ScalarLoop inv_sqrt_near_one(const ScalarLoop& d, int max_degree, int iters = 4);
MatrixLoop scalar_mul(const ScalarLoop& s, const MatrixLoop& a, int max_degree);

}  // namespace dpw
