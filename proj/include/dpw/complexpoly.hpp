#pragma once

#include <vector>
#include <span>
#include "dpw/matrix2.hpp"

namespace dpw {

// Dense complex polynomial, c[k] is the z^k coefficient.  The zero
// polynomial has an empty coefficient vector and degree -1.
struct Poly {
  std::vector<cplx> c;

  Poly() = default;
  explicit Poly(std::vector<cplx> coeffs) : c(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<cplx> coeffs) : c(coeffs) { trim(); }
  static Poly constant(cplx v) { return Poly{std::vector<cplx>{v}}; }
  static Poly x() { return Poly{std::vector<cplx>{0.0, 1.0}}; }
  static Poly from_roots(std::span<const cplx> roots, cplx lead = 1.0);

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  cplx lead() const { return c.empty() ? cplx(0.0) : c.back(); }
  cplx coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c.size())) ? c[k] : cplx(0.0);
  }
  // drop trailing coefficients that are exactly zero, or below eps if given
  void trim(double eps = 0.0);
  double max_abs() const;

  cplx eval(cplx z) const;
  Poly derivative() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(cplx s) const;
  Poly operator-() const { return *this * cplx(-1.0); }
  friend Poly operator*(cplx s, const Poly& p) { return p * s; }
};

// Euclidean division a = q*b + r, deg r < deg b.
void poly_divmod(const Poly& a, const Poly& b, Poly& q, Poly& r);

// All complex roots via the companion matrix, with Newton polish.
std::vector<cplx> poly_roots(const Poly& p);

// Multiplicity of `z0` as a root of p, using the relative tolerance `tol`
// on the scaled derivatives (0 if p(z0) is not small).
int root_multiplicity(const Poly& p, cplx z0, double tol = 1e-9);

// Cluster a list of points: indices grouped so members are within tol.
std::vector<std::vector<int>> cluster_points(std::span<const cplx> pts, double tol);

}  // namespace dpw
