#include "doctest.h"

#include <random>

#include "dpw/potential.hpp"

using namespace dpw;

namespace {
std::vector<ZPoint> lawson_weierstrass() {
  // Q1..Q3 over z = 0, Q4..Q6 over infinity (triple-cover picture)
  std::vector<ZPoint> w(6);
  for (int k = 0; k < 3; ++k) w[k] = ZPoint::at(0.0);
  for (int k = 3; k < 6; ++k) w[k] = ZPoint::infinity();
  return w;
}
}  // namespace

TEST_CASE("lawson constraint arithmetic at the paper's sample parameters") {
  // A=0, G=1: H = 0, B = 2/9
  ZetaSeries H = lawson_H({0.0}, 8), B = lawson_B({0.0}, {1.0}, 8);
  CHECK(std::abs(H[0]) < 1e-15);
  CHECK(std::abs(B[0] - cplx(2.0 / 9.0)) < 1e-15);
  // A=1/3, G=1: H = 4/9, B = 0
  H = lawson_H({cplx(1.0 / 3.0)}, 8);
  B = lawson_B({cplx(1.0 / 3.0)}, {1.0}, 8);
  CHECK(std::abs(H[0] - cplx(4.0 / 9.0)) < 1e-15);
  CHECK(std::abs(B[0]) < 1e-15);
  // A=-1, G=1: H = 0, B = -4/9
  H = lawson_H({cplx(-1.0)}, 8);
  B = lawson_B({cplx(-1.0)}, {1.0}, 8);
  CHECK(std::abs(H[0]) < 1e-15);
  CHECK(std::abs(B[0] + cplx(4.0 / 9.0)) < 1e-15);
}

TEST_CASE("lawson identities hold for randomized parameters including series") {
  std::mt19937_64 rng(51);
  std::normal_distribution<double> g;
  auto rnd = [&] { return cplx(g(rng), g(rng)); };
  for (int trial = 0; trial < 12; ++trial) {
    int deg = trial % 3;  // constants and short zeta-series
    ZetaSeries A(deg + 1), G(deg + 1);
    for (auto& x : A) x = rnd();
    for (auto& x : G) x = rnd();
    G[0] += 2.0;  // keep G invertible at zeta = 0
    int cap = 10;
    ZetaSeries H = lawson_H(A, cap), B = lawson_B(A, G, cap);
    // H - A - A^2 = 0
    ZetaSeries r = series_mul(A, A, cap);
    r.resize(cap + 1, 0.0);
    for (size_t k = 0; k < A.size(); ++k) r[k] += A[k];
    for (size_t k = 0; k < H.size() && k <= size_t(cap); ++k) r[k] -= H[k];
    for (cplx x : r) CHECK(std::abs(x) < 1e-12);
    // G*B + (-1/3 + A + (1/3 - A)^2) = 0, i.e. G*B + A^2 + A/3 - 2/9 = 0
    ZetaSeries gb = series_mul(G, B, cap);
    ZetaSeries p = series_mul(A, A, cap);
    p.resize(cap + 1, 0.0);
    gb.resize(cap + 1, 0.0);
    for (size_t k = 0; k < A.size(); ++k) p[k] += A[k] / 3.0;
    p[0] -= 2.0 / 9.0;
    for (int k = 0; k <= cap; ++k) CHECK(std::abs(gb[k] + p[k]) < 1e-11);
  }
}

TEST_CASE("lawson potential is trace-free with the declared pole divisor") {
  std::mt19937_64 rng(53);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 8; ++trial) {
    cplx A(g(rng), g(rng)), G(g(rng) + 2.0, g(rng));
    DPWPotential pot = lawson_potential(A, G);
    CHECK(pot.trace_residual() < 1e-12);
    CHECK(pot.lo() == -1);
    PoleReport rep = validate_pole_structure(pot, SpinPartition{}, lawson_weierstrass());
    CHECK(rep.pass);
  }
  CHECK_THROWS_AS(lawson_potential(cplx(0.2), cplx(0.0)), std::domain_error);
}

TEST_CASE("pole validator rejects constructed violations") {
  DPWPotential pot = lawson_potential(cplx(0.1), cplx(1.0));
  // order-3 diagonal pole at Q1 (z = 0)
  DPWPotential bad = pot;
  Rational cubicpole(Poly::constant(1.0), Poly{std::vector<cplx>{0.0, 0.0, 0.0, 1.0}});
  bad.add(0, 0, 0, cubicpole);
  bad.add(0, 1, 1, -cubicpole);
  PoleReport rep = validate_pole_structure(bad, SpinPartition{}, lawson_weierstrass());
  CHECK_FALSE(rep.pass);
  bool found3 = false;
  for (const auto& it : rep.items)
    if (!it.ok && it.measured == 3) found3 = true;
  CHECK(found3);

  // pole off the declared divisor
  DPWPotential off = pot;
  Rational stray(Poly::constant(1.0), Poly{std::vector<cplx>{-cplx(0.5, 0.5), 1.0}});
  off.add(0, 0, 0, stray);
  off.add(0, 1, 1, -stray);
  rep = validate_pole_structure(off, SpinPartition{}, lawson_weierstrass());
  CHECK_FALSE(rep.pass);
  bool offdiv = false;
  for (const auto& it : rep.items)
    if (!it.ok && it.what.find("off-divisor") != std::string::npos) offdiv = true;
  CHECK(offdiv);
}

TEST_CASE("leading term check") {
  DPWPotential pot = lawson_potential(cplx(0.3, 0.1), cplx(1.5, -0.2));
  LeadingTermReport rep = leading_term_check(pot);
  CHECK(rep.pass);
  // the Hopf candidate is G/(z^4 - 1)
  Rational want(Poly::constant(cplx(1.5, -0.2)),
                Poly{std::vector<cplx>{-1.0, 0.0, 0.0, 0.0, 1.0}});
  CHECK(approx_zero(rep.hopf_candidate - want, 1e-12));

  DPWPotential shifted = pot;
  shifted.add(-2, 0, 1, Rational::constant(1.0));
  CHECK_FALSE(leading_term_check(shifted).pass);
}
