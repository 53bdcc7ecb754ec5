#include "dpw/chart.hpp"

#include <stdexcept>

namespace dpw {

MinimalChartData MinimalChartData::from_functions(const GridSpec& g,
                                                  std::function<double(cplx)> uf,
                                                  std::function<cplx(cplx)> qf) {
  MinimalChartData d;
  d.grid = g;
  d.u.resize(g.size());
  d.q.resize(g.size());
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      d.u[g.index(i, j)] = uf(g.point(i, j));
      d.q[g.index(i, j)] = qf(g.point(i, j));
    }
  d.u_fn = std::move(uf);
  d.q_fn = std::move(qf);
  return d;
}

MinimalChartData MinimalChartData::sphere(const GridSpec& g) {
  return from_functions(
      g, [](cplx z) { return std::log(1.0 / (1.0 + std::norm(z))); },
      [](cplx) { return cplx(0.0); });
}

MinimalChartData MinimalChartData::clifford(const GridSpec& g, cplx q0) {
  return from_functions(
      g, [](cplx) { return 0.0; }, [q0](cplx) { return q0; });
}

namespace {

struct Fields {
  // centered differences of u and the pointwise data, valid on the interior
  double u = 0.0;
  cplx uz{}, uzb{};
  cplx q{};
};

Fields fields_at(const MinimalChartData& d, int i, int j) {
  const double h = d.grid.h;
  Fields f;
  f.u = d.u_at(i, j);
  double ux = (d.u_at(i + 1, j) - d.u_at(i - 1, j)) / (2 * h);
  double uy = (d.u_at(i, j + 1) - d.u_at(i, j - 1)) / (2 * h);
  f.uz = cplx(ux, -uy) * 0.5;
  f.uzb = cplx(ux, uy) * 0.5;
  f.q = d.q_at(i, j);
  return f;
}

Matrix2 cz_of(const Fields& f, cplx zeta) {
  double eu = std::exp(f.u);
  return {f.uz * 0.5, eu / zeta, cplx(0.0, -0.5) * std::exp(-f.u) * f.q, -f.uz * 0.5};
}

Matrix2 czbar_of(const Fields& f, cplx zeta) {
  double eu = std::exp(f.u);
  return {-f.uzb * 0.5, cplx(0.0, -0.5) * std::exp(-f.u) * std::conj(f.q), -zeta * eu,
          f.uzb * 0.5};
}

}  // namespace

ConnectionFormPair associated_family_form(const MinimalChartData& data, cplx zeta) {
  if (zeta == cplx(0.0))
    throw std::domain_error("associated_family_form: pole-of-family at zeta = 0");
  const GridSpec& g = data.grid;
  if (g.nx < 3 || g.ny < 3)
    throw std::invalid_argument("associated_family_form: grid too small for interior points");
  ConnectionFormPair out;
  out.grid = g;
  out.zeta = zeta;
  out.margin = 1;
  out.Cz.resize(g.size());
  out.Czbar.resize(g.size());
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      Fields f = fields_at(data, i, j);
      out.Cz[g.index(i, j)] = cz_of(f, zeta);
      out.Czbar[g.index(i, j)] = czbar_of(f, zeta);
    }
  return out;
}

double flatness_residual(const MinimalChartData& data, cplx zeta) {
  ConnectionFormPair form = associated_family_form(data, zeta);
  const GridSpec& g = data.grid;
  const double h = g.h;
  if (g.nx < 5 || g.ny < 5)
    throw std::invalid_argument("flatness_residual: interior grid points required");
  double worst = 0.0;
  for (int j = 2; j < g.ny - 2; ++j)
    for (int i = 2; i < g.nx - 2; ++i) {
      auto dz = [&](const std::vector<Matrix2>& F) {
        Matrix2 fx = (F[g.index(i + 1, j)] - F[g.index(i - 1, j)]) * (1.0 / (2 * h));
        Matrix2 fy = (F[g.index(i, j + 1)] - F[g.index(i, j - 1)]) * (1.0 / (2 * h));
        return (fx - kI * fy) * 0.5;
      };
      auto dzb = [&](const std::vector<Matrix2>& F) {
        Matrix2 fx = (F[g.index(i + 1, j)] - F[g.index(i - 1, j)]) * (1.0 / (2 * h));
        Matrix2 fy = (F[g.index(i, j + 1)] - F[g.index(i, j - 1)]) * (1.0 / (2 * h));
        return (fx + kI * fy) * 0.5;
      };
      const Matrix2 &A = form.Cz[g.index(i, j)], &B = form.Czbar[g.index(i, j)];
      Matrix2 curv = dz(form.Czbar) - dzb(form.Cz) + (A * B - B * A);
      worst = std::max(worst, curv.frobenius());
    }
  return worst;
}

CoefficientResiduals coefficient_residuals(const MinimalChartData& data) {
  const GridSpec& g = data.grid;
  const double h = g.h;
  if (g.nx < 5 || g.ny < 5)
    throw std::invalid_argument("coefficient_residuals: interior grid points required");

  // base-connection dz/dzbar parts and the Higgs fields at each interior point
  std::vector<Matrix2> wz(g.size()), wzb(g.size()), P(g.size()), Ps(g.size());
  for (int j = 1; j < g.ny - 1; ++j)
    for (int i = 1; i < g.nx - 1; ++i) {
      Fields f = fields_at(data, i, j);
      double eu = std::exp(f.u);
      cplx qfac = cplx(0.0, -0.5) * std::exp(-f.u);
      wz[g.index(i, j)] = {f.uz * 0.5, 0.0, qfac * f.q, -f.uz * 0.5};
      wzb[g.index(i, j)] = {-f.uzb * 0.5, qfac * std::conj(f.q), 0.0, f.uzb * 0.5};
      P[g.index(i, j)] = {0.0, eu, 0.0, 0.0};
      Ps[g.index(i, j)] = {0.0, 0.0, eu, 0.0};
    }

  auto dz = [&](const std::vector<Matrix2>& F, int i, int j) {
    Matrix2 fx = (F[g.index(i + 1, j)] - F[g.index(i - 1, j)]) * (1.0 / (2 * h));
    Matrix2 fy = (F[g.index(i, j + 1)] - F[g.index(i, j - 1)]) * (1.0 / (2 * h));
    return (fx - kI * fy) * 0.5;
  };
  auto dzb = [&](const std::vector<Matrix2>& F, int i, int j) {
    Matrix2 fx = (F[g.index(i + 1, j)] - F[g.index(i - 1, j)]) * (1.0 / (2 * h));
    Matrix2 fy = (F[g.index(i, j + 1)] - F[g.index(i, j - 1)]) * (1.0 / (2 * h));
    return (fx + kI * fy) * 0.5;
  };
  auto comm = [](const Matrix2& a, const Matrix2& b) { return a * b - b * a; };

  CoefficientResiduals r;
  for (int j = 2; j < g.ny - 2; ++j)
    for (int i = 2; i < g.nx - 2; ++i) {
      int k = g.index(i, j);
      Matrix2 rm = dzb(P, i, j) + comm(wzb[k], P[k]);
      Matrix2 rp = dz(Ps, i, j) + comm(wz[k], Ps[k]);
      Matrix2 r0 = dz(wzb, i, j) - dzb(wz, i, j) + comm(wz[k], wzb[k]) - comm(P[k], Ps[k]);
      r.r_minus = std::max(r.r_minus, rm.frobenius());
      r.r_plus = std::max(r.r_plus, rp.frobenius());
      r.r_zero = std::max(r.r_zero, r0.frobenius());
    }
  return r;
}

double unitarity_check(const ConnectionFormPair& form) {
  const GridSpec& g = form.grid;
  double worst = 0.0;
  for (int j = form.margin; j < g.ny - form.margin; ++j)
    for (int i = form.margin; i < g.nx - form.margin; ++i) {
      const Matrix2 &A = form.Cz[g.index(i, j)], &B = form.Czbar[g.index(i, j)];
      Matrix2 ax = A + B;
      Matrix2 ay = kI * (A - B);
      worst = std::max(worst, (ax + ax.adjoint()).frobenius());
      worst = std::max(worst, (ay + ay.adjoint()).frobenius());
    }
  return worst;
}

}  // namespace dpw
