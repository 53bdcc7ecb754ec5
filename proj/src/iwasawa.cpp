#include "dpw/iwasawa.hpp"

#include <numbers>
#include <stdexcept>

namespace dpw {

namespace {

double herm_min_eig(const Matrix2& h) {
  double tr = h.trace().real();
  double dt = (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)).real();
  double disc = std::max(0.0, tr * tr / 4.0 - dt);
  return tr / 2.0 - std::sqrt(disc);
}

double factor_residual(const MatrixLoop& B, const MatrixLoop& J, int nsamples) {
  MatrixLoop r = loop_mul(loop_star(B), B) - J;
  return sup_norm_circle(r, nsamples);
}

// Banded scalar Cholesky of the block Toeplitz R_{IJ} = J_{J-I} with M block
// rows; returns the trailing block row, adjointed: B_k = (L_{M-1,M-1-k})^†.
// Throws if a pivot fails (matrix not numerically positive definite).
std::vector<Matrix2> bauer_trailing_row(const MatrixLoop& J, int M, int KJ) {
  const int n = 2 * M;
  const int w = 2 * KJ + 1;  // scalar half-bandwidth
  std::vector<cplx> L(static_cast<size_t>(n) * (w + 1), 0.0);
  auto Lat = [&](int i, int j) -> cplx& { return L[static_cast<size_t>(i) * (w + 1) + (j - i + w)]; };
  auto entry = [&](int i, int j) -> cplx {
    int I = i / 2, a = i % 2, Jc = j / 2, b = j % 2;
    return J.coeff(Jc - I)(a, b);
  };
  for (int i = 0; i < n; ++i) {
    int j0 = std::max(0, i - w);
    for (int j = j0; j <= i; ++j) {
      cplx s = entry(i, j);
      int k0 = std::max(j0, j - w);
      for (int k = k0; k < j; ++k) s -= Lat(i, k) * std::conj(Lat(j, k));
      if (j < i) {
        Lat(i, j) = s / Lat(j, j).real();
      } else {
        double d = s.real();
        if (!(d > 0.0) || !std::isfinite(d))
          throw std::runtime_error("spectral_factorize: factorization-failure (lost positivity)");
        Lat(i, i) = std::sqrt(d);
      }
    }
  }
  std::vector<Matrix2> row(KJ + 1);
  for (int k = 0; k <= KJ; ++k) {
    Matrix2 blk;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        int i = 2 * (M - 1) + a, j = 2 * (M - 1 - k) + b;
        blk(a, b) = (j >= i - w && j <= i) ? Lat(i, j) : cplx(0.0);
      }
    row[k] = blk.adjoint();
  }
  return row;
}

void normalize_constant_term(MatrixLoop& B) {
  Matrix2 q, r;
  qr_pos(B.coeff(0), q, r);
  Matrix2 qh = q.adjoint();
  for (auto& c : B.coeffs) c = qh * c;
  // scrub rounding in the structural zeros of the constant term
  Matrix2& c0 = B.coeffs[0];
  c0(1, 0) = 0.0;
  c0(0, 0) = cplx(c0(0, 0).real(), 0.0);
  c0(1, 1) = cplx(c0(1, 1).real(), 0.0);
}

MatrixLoop plushalf(const MatrixLoop& a) {
  std::vector<Matrix2> c;
  int hi = a.hi();
  for (int m = 0; m <= hi; ++m) c.push_back(m == 0 ? a.coeff(0) * cplx(0.5) : a.coeff(m));
  return MatrixLoop{0, std::move(c)}.trimmed();
}

// One Newton-Wilson step: B <- (plushalf(star(B^-1) J B^-1) + I/2) * B,
// truncated back to degree KJ and renormalized.
MatrixLoop wilson_step(const MatrixLoop& B, const MatrixLoop& J, int KJ) {
  int D = 4 * KJ + 16;
  MatrixLoop Binv = inverse_plus(B, D);
  MatrixLoop phi = loop_mul_capped(loop_mul_capped(loop_star(Binv), J, D, nullptr), Binv, D, nullptr);
  MatrixLoop upd = plushalf(phi) + (cplx(0.5) * MatrixLoop::identity());
  MatrixLoop Bn = loop_mul_capped(upd, B, D, nullptr);
  // the true factor is a polynomial of degree <= KJ
  std::vector<Matrix2> c(KJ + 1);
  for (int k = 0; k <= KJ; ++k) c[k] = Bn.coeff(k);
  MatrixLoop out{0, std::move(c)};
  normalize_constant_term(out);
  return out;
}

}  // namespace

MatrixLoop spectral_factorize(const MatrixLoop& J, const SpectralOptions& opts,
                              FactorizationDiagnostics* diag) {
  MatrixLoop Jt = J.trimmed();
  if (Jt.is_zero()) throw std::invalid_argument("spectral_factorize: zero symbol");
  if (loop_norm(loop_star(Jt) - Jt) > 1e-8 * std::max(1.0, loop_norm(Jt)))
    throw std::invalid_argument("spectral_factorize: symbol is not hermitian (star(J) != J)");
  // Strictly negative samples are rejected; boundary (semidefinite) symbols
  // are admitted and simply converge at the slower boundary rate.
  double jscale = std::max(1.0, loop_norm(Jt));
  for (int k = 0; k < 128; ++k) {
    double th = 2.0 * std::numbers::pi * k / 128;
    Matrix2 v = loop_eval(Jt, std::polar(1.0, th));
    if (herm_min_eig((v + v.adjoint()) * cplx(0.5)) < -1e-12 * jscale)
      throw std::runtime_error("spectral_factorize: not-positive-definite on the unit circle");
  }
  const int KJ = std::max(std::abs(Jt.lo), Jt.hi());
  FactorizationDiagnostics d;

  auto run = [&](int M) {
    MatrixLoop B{0, bauer_trailing_row(Jt, M, KJ)};
    B = B.trimmed();
    if (B.is_zero() || B.lo != 0) throw std::runtime_error("spectral_factorize: degenerate factor");
    return B;
  };

  MatrixLoop best;
  double best_res = std::numeric_limits<double>::infinity();
  if (opts.forced_block > 0) {
    int M = std::max(opts.forced_block, KJ + 2);
    best = run(M);
    best_res = factor_residual(best, Jt, opts.residual_samples);
    d.residual_by_block.emplace_back(M, best_res);
    d.block_size = M;
  } else {
    int M = std::max(opts.initial_block, 2 * KJ + 2);
    double prev = std::numeric_limits<double>::infinity();
    bool stalled = false;
    while (true) {
      MatrixLoop B = run(M);
      double res = factor_residual(B, Jt, opts.residual_samples);
      d.residual_by_block.emplace_back(M, res);
      if (res < best_res) {
        best_res = res;
        best = B;
        d.block_size = M;
      }
      if (res < opts.tol) break;
      if (res > 0.6 * prev) {  // doubling no longer pays
        stalled = true;
        break;
      }
      prev = res;
      if (2 * M > opts.max_block) break;
      M *= 2;
    }
    if ((stalled || best_res >= opts.tol) && opts.allow_newton_fallback) {
      MatrixLoop B = best;
      for (int it = 0; it < 24 && best_res >= opts.tol; ++it) {
        B = wilson_step(B, Jt, KJ);
        double res = factor_residual(B, Jt, opts.residual_samples);
        ++d.newton_iterations;
        d.newton_fallback = true;
        if (res >= best_res) break;
        best_res = res;
        best = B;
      }
    }
  }
  d.residual = best_res;
  if (diag) *diag = d;
  if (best_res >= opts.tol && opts.forced_block == 0 && !(best_res < opts.tol)) {
    // keep the best factor but surface the failure when far off
    if (best_res > 1e4 * opts.tol)
      throw std::runtime_error("spectral_factorize: factorization-failure, best residual " +
                               std::to_string(best_res));
  }
  return best;
}

IwasawaResult iwasawa(const MatrixLoop& psi, const IwasawaOptions& opts) {
  MatrixLoop p = psi.trimmed();
  if (p.is_zero()) throw std::invalid_argument("iwasawa: zero loop is not invertible");
  MatrixLoop J = loop_mul(loop_star(p), p);
  SpectralOptions sopts = opts.spectral;
  sopts.tol = std::min(sopts.tol, opts.tol);
  IwasawaResult out;
  out.B = spectral_factorize(J, sopts, &out.diag);

  // F = Psi * B^{-1}; the series degree of B^{-1} adapts until the sampled
  // reconstruction residual stops improving or meets tol.
  int D = std::max(4 * out.B.hi() + 8, 32);
  double bnorm = std::max(1.0, loop_norm(p));
  MatrixLoop F;
  double recon = std::numeric_limits<double>::infinity();
  while (true) {
    double tail = 0.0;
    MatrixLoop Binv = inverse_plus(out.B, D, &tail);
    F = loop_mul(p, Binv);
    MatrixLoop r = p - loop_mul(F, out.B);
    double res = sup_norm_circle(r, opts.residual_samples);
    if (res < recon) {
      recon = res;
      out.F = F;
    }
    if (res < opts.tol || tail * bnorm < 0.01 * opts.tol || 2 * D > opts.inverse_degree_cap)
      break;
    D *= 2;
  }
  out.reconstruction = recon;
  MatrixLoop u = loop_mul(loop_star(out.F), out.F) - MatrixLoop::identity();
  out.unitarity = sup_norm_circle(u, opts.residual_samples);
  out.residual = std::max(out.reconstruction, out.unitarity);

  double mx = 0.0, mn = std::numeric_limits<double>::infinity();
  for (int k = 0; k < opts.residual_samples; ++k) {
    double th = 2.0 * std::numbers::pi * k / opts.residual_samples;
    Matrix2 b = loop_eval(out.B, std::polar(1.0, th));
    mx = std::max(mx, b.frobenius());
    mn = std::min(mn, smin(b));
  }
  out.cond_B = (mn > 0.0) ? mx / mn : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace dpw
