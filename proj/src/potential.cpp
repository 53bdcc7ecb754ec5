#include "dpw/potential.hpp"

#include <algorithm>
#include <stdexcept>

namespace dpw {

void SpinPartition::validate() const {
  std::array<bool, 7> seen{};
  for (int l : first) {
    if (l < 1 || l > 6 || seen[l]) throw std::invalid_argument("SpinPartition: invalid triple");
    seen[l] = true;
  }
  for (int l : second) {
    if (l < 1 || l > 6 || seen[l]) throw std::invalid_argument("SpinPartition: invalid triple");
    seen[l] = true;
  }
}

int DPWPotential::lo() const { return terms.empty() ? 0 : terms.begin()->first; }
int DPWPotential::hi() const { return terms.empty() ? 0 : terms.rbegin()->first; }

Rational DPWPotential::entry(int n, int i, int j) const {
  auto it = terms.find(n);
  if (it == terms.end()) return {};
  return it->second[2 * i + j];
}

void DPWPotential::add(int n, int i, int j, const Rational& r) {
  if (r.is_zero()) return;
  auto& m = terms[n];
  m[2 * i + j] = m[2 * i + j] + r;
}

Matrix2 DPWPotential::coeff_eval(int n, cplx z) const {
  auto it = terms.find(n);
  if (it == terms.end()) return Matrix2::zero();
  Matrix2 m;
  for (int k = 0; k < 4; ++k) m.e[k] = it->second[k].eval(z);
  return m;
}

Matrix2 DPWPotential::eval(cplx z, cplx zeta) const {
  if (zeta == cplx(0.0) && lo() < 0)
    throw std::domain_error("DPWPotential::eval: pole-of-family at zeta = 0");
  Matrix2 acc;
  for (const auto& [n, m] : terms) {
    cplx zn = std::pow(zeta, cplx(double(n)));
    for (int k = 0; k < 4; ++k) acc.e[k] += m[k].eval(z) * zn;
  }
  return acc;
}

std::vector<cplx> DPWPotential::pole_locations(double tol) const {
  std::vector<cplx> all;
  for (const auto& [n, m] : terms)
    for (const auto& r : m)
      for (const auto& [z0, ord] : r.poles(tol)) all.push_back(z0);
  std::vector<cplx> out;
  for (const auto& g : cluster_points(all, tol)) out.push_back(all[g.front()]);
  return out;
}

double DPWPotential::trace_residual() const {
  double worst = 0.0;
  for (const auto& [n, m] : terms) {
    Rational tr = m[0] + m[3];
    double scale = std::max({1.0, m[0].max_abs(), m[3].max_abs()});
    if (!tr.is_zero()) worst = std::max(worst, tr.num.max_abs() / scale);
  }
  return worst;
}

ZetaSeries series_mul(const ZetaSeries& a, const ZetaSeries& b, int cap) {
  ZetaSeries r(std::min<size_t>(cap + 1, a.size() + b.size() - 1), 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      if (i + j < r.size()) r[i + j] += a[i] * b[j];
  return r;
}

ZetaSeries series_inv(const ZetaSeries& g, int cap) {
  if (g.empty() || g[0] == cplx(0.0))
    throw std::domain_error("lawson_potential: division-by-zero in B (G(0) = 0)");
  ZetaSeries r(cap + 1, 0.0);
  r[0] = 1.0 / g[0];
  for (int m = 1; m <= cap; ++m) {
    cplx s = 0.0;
    for (int j = 1; j <= m && j < static_cast<int>(g.size()); ++j) s += g[j] * r[m - j];
    r[m] = -s / g[0];
  }
  return r;
}

ZetaSeries lawson_H(const ZetaSeries& A, int cap) {
  ZetaSeries h = series_mul(A, A, cap);
  h.resize(std::max(h.size(), A.size()), 0.0);
  for (size_t k = 0; k < A.size() && k < h.size(); ++k) h[k] += A[k];
  return h;
}

ZetaSeries lawson_B(const ZetaSeries& A, const ZetaSeries& G, int cap) {
  // -(1/G)(-1/3 + A + (1/3 - A)^2) = -(1/G)(A^2 + A/3 - 2/9)
  ZetaSeries p = series_mul(A, A, cap);
  p.resize(std::max<size_t>(p.size(), std::max<size_t>(A.size(), 1)), 0.0);
  for (size_t k = 0; k < A.size(); ++k) p[k] += A[k] / 3.0;
  p[0] -= 2.0 / 9.0;
  ZetaSeries b = series_mul(p, series_inv(G, cap), cap);
  for (auto& x : b) x = -x;
  return b;
}

DPWPotential lawson_potential(cplx A, cplx G) {
  return lawson_potential(ZetaSeries{A}, ZetaSeries{G}, 16);
}

DPWPotential lawson_potential(const ZetaSeries& A, const ZetaSeries& G, int cap) {
  if (G.empty() || G[0] == cplx(0.0))
    throw std::domain_error("lawson_potential: division-by-zero in B (G = 0)");
  ZetaSeries H = lawson_H(A, cap), B = lawson_B(A, G, cap);

  Poly quartic{std::vector<cplx>{-1.0, 0.0, 0.0, 0.0, 1.0}};  // z^4 - 1
  Rational diag0(Poly{std::vector<cplx>{0.0, 0.0, 0.0, cplx(-4.0 / 3.0)}}, quartic);
  Rational zsq(Poly{std::vector<cplx>{0.0, 0.0, 1.0}}, Poly::constant(1.0));
  Rational invz(Poly::constant(1.0), Poly::x());
  Rational invq(Poly::constant(1.0), quartic);
  Rational invz2q(Poly::constant(1.0), Poly{std::vector<cplx>{0.0, 0.0, 1.0}} * quartic);

  DPWPotential pot;
  pot.add(0, 0, 0, diag0);
  pot.add(0, 1, 1, -diag0);
  pot.add(-1, 0, 1, Rational::constant(1.0));
  bool anyA = false, anyH = false, anyB = false;
  for (size_t n = 0; n < A.size(); ++n)
    if (A[n] != cplx(0.0)) {
      pot.add(static_cast<int>(n), 0, 0, invz * A[n]);
      pot.add(static_cast<int>(n), 1, 1, -(invz * A[n]));
      anyA = true;
    }
  for (size_t n = 0; n < B.size(); ++n)
    if (B[n] != cplx(0.0)) {
      pot.add(static_cast<int>(n), 0, 1, zsq * B[n]);
      anyB = true;
    }
  for (size_t n = 0; n < G.size(); ++n)
    if (G[n] != cplx(0.0)) pot.add(static_cast<int>(n), 1, 0, invq * G[n]);
  for (size_t n = 0; n < H.size(); ++n)
    if (H[n] != cplx(0.0)) {
      pot.add(static_cast<int>(n) + 1, 1, 0, invz2q * H[n]);
      anyH = true;
    }

  // declared divisor of the family (per-entry 1-form order bounds)
  int d0 = anyA ? 1 : 0;
  pot.declared.push_back({ZPoint::at(0.0), {d0, 0, anyH ? 2 : 0, d0}});
  for (cplx w : {cplx(1.0), cplx(-1.0), cplx(0.0, 1.0), cplx(0.0, -1.0)})
    pot.declared.push_back({ZPoint::at(w), {1, 0, 1, 1}});
  pot.declared.push_back({ZPoint::infinity(), {1, anyB ? 4 : 2, 0, 1}});
  return pot;
}

namespace {

const char* entry_name(int k) {
  static const char* names[4] = {"(1,1)", "(1,2)", "(2,1)", "(2,2)"};
  return names[k];
}

int measured_order_finite(const DPWPotential& pot, int k, cplx z0, double tol) {
  int worst = 0;
  for (const auto& [n, m] : pot.terms) worst = std::max(worst, m[k].pole_order(z0, tol));
  return worst;
}

int measured_order_infinity(const DPWPotential& pot, int k) {
  int worst = 0;
  for (const auto& [n, m] : pot.terms)
    worst = std::max(worst, m[k].form_pole_order_at_infinity());
  return worst;
}

}  // namespace

PoleReport validate_pole_structure(const DPWPotential& pot, const SpinPartition& part,
                                   const std::vector<ZPoint>& weierstrass, double tol) {
  part.validate();
  if (weierstrass.size() != 6)
    throw std::invalid_argument("validate_pole_structure: need six Weierstrass locations");
  PoleReport rep;
  auto push = [&](std::string what, int measured, int allowed) {
    bool ok = measured <= allowed;
    rep.items.push_back({std::move(what), measured, allowed, ok});
    if (!ok) rep.pass = false;
  };

  // declared-divisor check: every actual pole must sit on the declared set
  for (const auto& [n, m] : pot.terms) {
    for (int k = 0; k < 4; ++k) {
      for (const auto& [z0, ord] : m[k].poles(tol)) {
        const PoleDecl* found = nullptr;
        for (const auto& d : pot.declared)
          if (!d.where.at_infinity && std::abs(d.where.z - z0) < 1e-6) found = &d;
        if (!found) {
          rep.items.push_back({"off-divisor pole of entry " + std::string(entry_name(k)) +
                                   " at z = (" + std::to_string(z0.real()) + "," +
                                   std::to_string(z0.imag()) + ")",
                               ord, 0, false});
          rep.pass = false;
        } else {
          push("declared divisor, entry " + std::string(entry_name(k)) + " at declared point",
               ord, found->max_order[k]);
        }
      }
      int iord = m[k].form_pole_order_at_infinity();
      if (iord > 0) {
        const PoleDecl* found = nullptr;
        for (const auto& d : pot.declared)
          if (d.where.at_infinity) found = &d;
        if (!found) {
          rep.items.push_back({"off-divisor pole of entry " + std::string(entry_name(k)) +
                                   " at infinity",
                               iord, 0, false});
          rep.pass = false;
        } else {
          push("declared divisor, entry " + std::string(entry_name(k)) + " at infinity", iord,
               found->max_order[k]);
        }
      }
    }
  }

  // theorem pattern at the finite labeled Weierstrass points
  auto pattern_at = [&](int label, bool first_triple) {
    const ZPoint& p = weierstrass[label - 1];
    if (p.at_infinity) return;  // covered by the declared-divisor check
    std::array<int, 4> allowed = first_triple ? std::array<int, 4>{1, 0, 2, 1}
                                              : std::array<int, 4>{1, 2, 0, 1};
    for (int k = 0; k < 4; ++k)
      push("theorem bound at Q" + std::to_string(label) + ", entry " + entry_name(k),
           measured_order_finite(pot, k, p.z, tol), allowed[k]);
  };
  for (int l : part.first) pattern_at(l, true);
  for (int l : part.second) pattern_at(l, false);
  return rep;
}

LeadingTermReport leading_term_check(const DPWPotential& pot, double tol) {
  LeadingTermReport rep;
  auto flag = [&](std::string what, bool ok) {
    rep.items.push_back({std::move(what), ok ? 0 : 1, 0, ok});
    if (!ok) rep.pass = false;
  };
  flag("lowest Laurent index >= -1", pot.lo() >= -1);

  Rational m00 = pot.entry(-1, 0, 0), m10 = pot.entry(-1, 1, 0), m11 = pot.entry(-1, 1, 1);
  Rational m01 = pot.entry(-1, 0, 1);
  flag("zeta^-1 coefficient nilpotent upper-triangular",
       approx_zero(m00, tol) && approx_zero(m10, tol) && approx_zero(m11, tol));
  flag("zeta^-1 (1,2) entry is a nonzero constant",
       !m01.is_zero() && m01.num.degree() == 0 && m01.den.degree() == 0);

  rep.hopf_candidate = pot.entry(0, 1, 0);
  // the Hopf candidate must carry no poles beyond the declared divisor
  bool clean = true;
  for (const auto& [z0, ord] : rep.hopf_candidate.poles(tol)) {
    bool declared = false;
    for (const auto& d : pot.declared)
      if (!d.where.at_infinity && std::abs(d.where.z - z0) < 1e-6 && d.max_order[2] >= ord)
        declared = true;
    if (!declared) clean = false;
  }
  flag("zeta^0 lower-left entry has quadratic-differential pole shape", clean);
  return rep;
}

}  // namespace dpw
