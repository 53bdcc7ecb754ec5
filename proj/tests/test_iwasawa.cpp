#include "doctest.h"

#include <numbers>
#include <random>

#include "dpw/iwasawa.hpp"

using namespace dpw;

namespace {

Matrix2 random_matrix(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g;
  Matrix2 m;
  for (int k = 0; k < 4; ++k) m.e[k] = cplx(g(rng), g(rng)) * scale;
  return m;
}

MatrixLoop random_loop(int N, std::mt19937_64& rng, double scale) {
  std::vector<Matrix2> c(2 * N + 1);
  for (auto& m : c) m = random_matrix(rng, scale);
  return {-N, std::move(c)};
}

MatrixLoop well_conditioned_loop(int N, std::mt19937_64& rng, double eps = 0.35) {
  MatrixLoop p = random_loop(N, rng, 1.0);
  double n = loop_norm(p);
  return MatrixLoop::identity() + (cplx(eps / n) * p);
}

}  // namespace

TEST_CASE("spectral_factorize trivial symbols") {
  FactorizationDiagnostics d;
  MatrixLoop B = spectral_factorize(MatrixLoop::identity(), {}, &d);
  CHECK(loop_norm(B - MatrixLoop::identity()) < 1e-12);

  MatrixLoop J2 = MatrixLoop::constant(Matrix2::diag(2.0, 0.5));
  MatrixLoop B2 = spectral_factorize(J2);
  CHECK(loop_norm(B2 - MatrixLoop::constant(Matrix2::diag(std::sqrt(2.0), 1.0 / std::sqrt(2.0)))) <
        1e-12);

  // J = (2 + z + 1/z) I  ->  B = (1 + z) I.  The symbol vanishes at z = -1,
  // the very boundary of the positivity precondition, where Bauer converges
  // like 1/M instead of geometrically; assert the factor at that rate.
  MatrixLoop J3{-1, {Matrix2::identity(), Matrix2::identity() * cplx(2.0), Matrix2::identity()}};
  SpectralOptions bopts{.tol = 1e-11};
  bopts.max_block = 4096;
  bopts.allow_newton_fallback = false;
  MatrixLoop B3 = spectral_factorize(J3, bopts);
  MatrixLoop want{0, {Matrix2::identity(), Matrix2::identity()}};
  CHECK(sup_norm_circle(B3 - want, 64) < 5e-4);
}

TEST_CASE("spectral_factorize rejects bad symbols") {
  MatrixLoop notherm = MatrixLoop::monomial(1, Matrix2::identity());
  CHECK_THROWS(spectral_factorize(notherm));
  MatrixLoop notpos = MatrixLoop::constant(Matrix2::diag(1.0, -1.0));
  CHECK_THROWS_WITH_AS(spectral_factorize(notpos),
                       doctest::Contains("not-positive-definite"), std::runtime_error);
}

TEST_CASE("iwasawa of an already unitary loop") {
  MatrixLoop rot{-1, {Matrix2{0.0, -1.0, 0.0, 0.0}, Matrix2::zero(), Matrix2{0.0, 0.0, 1.0, 0.0}}};
  IwasawaResult r = iwasawa(rot);
  CHECK(sup_norm_circle(r.B - MatrixLoop::identity(), 64) < 1e-9);
  CHECK(sup_norm_circle(r.F - rot, 64) < 1e-9);
}

TEST_CASE("iwasawa of a normalized plus loop") {
  std::mt19937_64 rng(31);
  MatrixLoop psi = MatrixLoop::identity() + MatrixLoop::monomial(1, random_matrix(rng, 0.15)) +
                   MatrixLoop::monomial(3, random_matrix(rng, 0.1));
  IwasawaResult r = iwasawa(psi);
  CHECK(sup_norm_circle(r.F - MatrixLoop::identity(), 64) < 1e-8);
  CHECK(sup_norm_circle(r.B - psi, 64) < 1e-8);
}

TEST_CASE("constant loop reduces to dense QR with positive-diagonal R") {
  std::mt19937_64 rng(37);
  Matrix2 A = random_matrix(rng) + Matrix2::identity() * 2.0;
  IwasawaResult r = iwasawa(MatrixLoop::constant(A));
  Matrix2 q, rr;
  qr_pos(A, q, rr);
  CHECK((loop_eval(r.F, 1.0) - q).frobenius() < 1e-9);
  CHECK((loop_eval(r.B, 1.0) - rr).frobenius() < 1e-9);
}

TEST_CASE("random reconstruction, unitarity and normalization") {
  std::mt19937_64 rng(41);
  const double tol = 1e-10;
  for (int trial = 0; trial < 6; ++trial) {
    MatrixLoop psi = well_conditioned_loop(trial < 3 ? 4 : 8, rng);
    IwasawaResult r = iwasawa(psi, {.tol = tol});
    CHECK(r.reconstruction < 10 * tol);
    CHECK(r.unitarity < 10 * tol);
    Matrix2 b0 = r.B.coeff(0);
    CHECK(b0(1, 0) == cplx(0.0));
    CHECK(b0(0, 0).imag() == 0.0);
    CHECK(b0(1, 1).imag() == 0.0);
    CHECK(b0(0, 0).real() > 0.0);
    CHECK(b0(1, 1).real() > 0.0);
  }
}

TEST_CASE("uniqueness: different internal block sizes agree") {
  std::mt19937_64 rng(43);
  MatrixLoop psi = well_conditioned_loop(5, rng);
  const double tol = 1e-10;
  IwasawaOptions o1{.tol = tol};
  o1.spectral.forced_block = 64;
  IwasawaOptions o2{.tol = tol};
  o2.spectral.forced_block = 128;
  IwasawaResult r1 = iwasawa(psi, o1), r2 = iwasawa(psi, o2);
  CHECK(sup_norm_circle(r1.F - r2.F, 64) < 100 * tol);
}

TEST_CASE("determinant compatibility for det-1 loops") {
  std::mt19937_64 rng(47);
  std::normal_distribution<double> g;
  // products of elementary determinant-1 loops
  MatrixLoop psi = MatrixLoop::identity();
  for (int k = 0; k < 4; ++k) {
    cplx a(0.4 * g(rng), 0.4 * g(rng));
    int n = (k % 2 == 0) ? 1 : -1;
    Matrix2 nil = (k % 2 == 0) ? Matrix2::e_plus() : Matrix2::e_minus();
    MatrixLoop el = MatrixLoop::identity() + MatrixLoop::monomial(n, nil * a);
    psi = loop_mul(psi, el);
  }
  IwasawaResult r = iwasawa(psi, {.tol = 1e-11});
  for (int k = 0; k < 32; ++k) {
    cplx z = std::polar(1.0, 2.0 * std::numbers::pi * k / 32);
    CHECK(std::abs(std::abs(loop_eval(r.F, z).det()) - 1.0) < 1e-8);
  }
  cplx detb0 = loop_eval(r.B, 1e-9).det();  // value at zeta -> 0
  CHECK(detb0.real() > 0.0);
  CHECK(std::abs(detb0.imag()) < 1e-8);
}
