#pragma once

#include <utility>
#include <vector>
#include "dpw/loop.hpp"

namespace dpw {

struct SpectralOptions {
  double tol = 1e-10;
  int initial_block = 32;
  int max_block = 16384;
  int forced_block = 0;     // > 0: use exactly this block size, no doubling
  int residual_samples = 256;
  bool allow_newton_fallback = true;
};

struct FactorizationDiagnostics {
  std::vector<std::pair<int, double>> residual_by_block;  // (M, sup residual)
  int block_size = 0;
  double residual = 0.0;
  bool newton_fallback = false;
  int newton_iterations = 0;
};

// Matrix spectral factorization: given J = star(J) positive definite on the
// unit circle, returns the plus-class B with star(B)*B = J and B(0) upper
// triangular with positive real diagonal.  Bauer's method: Cholesky-factor
// the block Toeplitz matrix R_{IJ} = J_{J-I}; the trailing block row of the
// factor converges (adjointed, read right to left) to the coefficients of B.
// Block size doubles until the sampled residual meets tol; a Newton-Wilson
// iteration polishes the factor if doubling stalls.
MatrixLoop spectral_factorize(const MatrixLoop& J, const SpectralOptions& opts = {},
                              FactorizationDiagnostics* diag = nullptr);

struct IwasawaOptions {
  double tol = 1e-10;
  SpectralOptions spectral{};
  int inverse_degree_cap = 65536;
  int residual_samples = 64;
};

struct IwasawaResult {
  MatrixLoop F;  // unitary class
  MatrixLoop B;  // plus class
  double residual = 0.0;        // max of reconstruction and unitarity residual
  double reconstruction = 0.0;  // sup ||Psi - F B|| on the circle
  double unitarity = 0.0;       // sup ||star(F) F - I||
  double cond_B = 0.0;          // sampled condition estimate of B on the circle
  FactorizationDiagnostics diag{};
};

// Loop-group Iwasawa decomposition Psi = F * B via
// B = spectral_factorize(star(Psi) Psi), F = Psi * B^{-1}.
IwasawaResult iwasawa(const MatrixLoop& psi, const IwasawaOptions& opts = {});

}  // namespace dpw
