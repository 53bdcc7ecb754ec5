#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "dpw/loop.hpp"
#include "dpw/rational.hpp"

namespace dpw {

// Partition of the six Weierstrass labels (1..6) into two triples.
struct SpinPartition {
  std::array<int, 3> first{1, 2, 3};
  std::array<int, 3> second{4, 5, 6};
  void validate() const;  // disjoint triples covering {1..6}
};

// A point of the z-line, possibly the point at infinity.
struct ZPoint {
  bool at_infinity = false;
  cplx z{};
  static ZPoint infinity() { return {true, 0.0}; }
  static ZPoint at(cplx z) { return {false, z}; }
};

// Declared pole of a potential with per-entry (row-major) order bounds for
// the 1-form entries.
struct PoleDecl {
  ZPoint where;
  std::array<int, 4> max_order{};
};

// Meromorphic sl2 matrix 1-form with Laurent-zeta coefficients:
//   xi = sum_n zeta^n xi_n(z) dz,  xi_n rational 2x2.
struct DPWPotential {
  std::map<int, std::array<Rational, 4>> terms;
  std::vector<PoleDecl> declared;

  bool is_zero() const { return terms.empty(); }
  int lo() const;
  int hi() const;
  Rational entry(int n, int i, int j) const;
  void add(int n, int i, int j, const Rational& r);
  Matrix2 coeff_eval(int n, cplx z) const;
  // full evaluation; throws std::domain_error for zeta == 0 with lo() < 0
  Matrix2 eval(cplx z, cplx zeta) const;
  // union of finite pole locations over all entries and indices
  std::vector<cplx> pole_locations(double tol = 1e-9) const;
  // max over n of ||xi_n(0,0) + xi_n(1,1)||, normalized (trace-free check)
  double trace_residual() const;
};

using ZetaSeries = std::vector<cplx>;  // coefficients of zeta^0, zeta^1, ...

// The genus-2 Lawson-family potential in the z-coordinate:
//   [ -(4/3) z^3/(z^4-1) + A/z            zeta^{-1} + B z^2              ]
//   [ G/(z^4-1) + zeta H/(z^2 (z^4-1))    +(4/3) z^3/(z^4-1) - A/z       ] dz
// with H = A + A^2 and B = -(1/G)(-1/3 + A + (1/3 - A)^2).  A and G may be
// finite zeta-power series; the formulas apply coefficient-wise with the
// series product truncated at `cap`.
DPWPotential lawson_potential(cplx A, cplx G);
DPWPotential lawson_potential(const ZetaSeries& A, const ZetaSeries& G, int cap = 16);

// series helpers used by the Lawson constraints (exposed for tests)
ZetaSeries series_mul(const ZetaSeries& a, const ZetaSeries& b, int cap);
ZetaSeries series_inv(const ZetaSeries& g, int cap);  // g[0] != 0
ZetaSeries lawson_H(const ZetaSeries& A, int cap);
ZetaSeries lawson_B(const ZetaSeries& A, const ZetaSeries& G, int cap);

struct PoleCheckItem {
  std::string what;
  int measured = 0;
  int allowed = 0;
  bool ok = true;
};

struct PoleReport {
  bool pass = true;
  std::vector<PoleCheckItem> items;
};

// Theorem-pattern pole validator.  `weierstrass` gives the six labeled
// abscissas (finite or infinite).  Checks, per entry and per point:
//   - measured order <= declared order at every declared pole, and no pole
//     off the declared divisor;
//   - at finite Weierstrass locations: diagonal <= 1; lower-left <= 2 on the
//     first triple and regular on the second; upper-right <= 2 on the second
//     triple and regular on the first.
// Infinite labels are covered by the declared-divisor check only (the
// trivialization twist at infinity is model-dependent).
PoleReport validate_pole_structure(const DPWPotential& pot, const SpinPartition& part,
                                   const std::vector<ZPoint>& weierstrass,
                                   double tol = 1e-9);

struct LeadingTermReport {
  bool pass = true;
  std::vector<PoleCheckItem> items;
  Rational hopf_candidate;  // the zeta^0 lower-left entry
};

// Verifies the zeta^{-1} coefficient is upper-right nilpotent with a
// constant (1,2) entry, that no zeta^{<-1} terms exist, and reports the
// zeta^0 lower-left entry as the Hopf-coefficient candidate.
LeadingTermReport leading_term_check(const DPWPotential& pot, double tol = 1e-9);

}  // namespace dpw
