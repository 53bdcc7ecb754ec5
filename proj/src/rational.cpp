#include "dpw/rational.hpp"

#include <stdexcept>

namespace dpw {

Rational::Rational(Poly n, Poly d, double tol) : num(std::move(n)), den(std::move(d)) {
  num.trim(1e-14);
  den.trim(1e-14);
  if (den.is_zero()) throw std::invalid_argument("Rational: denominator identically zero");
  if (num.is_zero()) {
    den = Poly::constant(1.0);
    return;
  }
  // cancel common roots, clustering within tol
  for (cplx r : poly_roots(den)) {
    while (root_multiplicity(num, r, tol) >= 1 && root_multiplicity(den, r, tol) >= 1) {
      Poly q, rem, lin{std::vector<cplx>{-r, 1.0}};
      poly_divmod(num, lin, q, rem);
      num = q;
      poly_divmod(den, lin, q, rem);
      den = q;
      if (num.is_zero() || den.degree() == 0) break;
    }
    if (num.is_zero()) break;
  }
  if (num.is_zero()) {
    den = Poly::constant(1.0);
    return;
  }
  cplx lead = den.lead();
  den = den * (1.0 / lead);
  num = num * (1.0 / lead);
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num * o.den + o.num * den, den * o.den);
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(num * o.den - o.num * den, den * o.den);
}
Rational Rational::operator*(const Rational& o) const {
  return Rational(num * o.num, den * o.den);
}
Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw std::domain_error("Rational: division-by-zero");
  return Rational(num * o.den, den * o.num);
}

int Rational::pole_order(cplx z0, double tol) const {
  if (is_zero()) return 0;
  return root_multiplicity(den, z0, tol);
}

int Rational::form_pole_order_at_infinity() const {
  if (is_zero()) return 0;
  return std::max(0, num.degree() - den.degree() + 2);
}

std::vector<std::pair<cplx, int>> Rational::poles(double tol) const {
  std::vector<std::pair<cplx, int>> out;
  if (is_zero() || den.degree() <= 0) return out;
  std::vector<cplx> rts = poly_roots(den);
  std::vector<std::vector<int>> groups = cluster_points(rts, tol);
  for (const auto& g : groups) out.emplace_back(rts[g.front()], static_cast<int>(g.size()));
  return out;
}

bool approx_zero(const Rational& r, double tol) {
  return r.num.max_abs() <= tol * std::max(1.0, r.den.max_abs());
}

}  // namespace dpw
