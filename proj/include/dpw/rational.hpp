#pragma once

#include "dpw/complexpoly.hpp"

namespace dpw {

// Rational function in one complex variable, kept gcd-reduced (common roots
// of numerator and denominator cancelled by root clustering) with a monic
// denominator.
struct Rational {
  Poly num;
  Poly den{std::vector<cplx>{1.0}};

  Rational() = default;
  Rational(Poly n, Poly d, double tol = 1e-9);
  static Rational constant(cplx v) { return Rational(Poly::constant(v), Poly::constant(1.0)); }
  static Rational x() { return Rational(Poly::x(), Poly::constant(1.0)); }
  static Rational zero() { return {}; }

  bool is_zero() const { return num.is_zero(); }
  cplx eval(cplx z) const { return num.eval(z) / den.eval(z); }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const { return {(-num), den}; }
  Rational operator*(cplx s) const { return {num * s, den}; }

  // pole order at a finite point (0 if regular there)
  int pole_order(cplx z0, double tol = 1e-9) const;
  // pole order at infinity of the 1-form (this)dz, i.e. of -f(1/w)/w^2 at w=0
  int form_pole_order_at_infinity() const;
  // finite pole locations (deduplicated), with orders
  std::vector<std::pair<cplx, int>> poles(double tol = 1e-9) const;

  double max_abs() const { return std::max(num.max_abs(), den.max_abs()); }
};

bool approx_zero(const Rational& r, double tol);

}  // namespace dpw
