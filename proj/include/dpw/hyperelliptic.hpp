#pragma once

#include <optional>
#include <span>
#include <utility>

#include "dpw/potential.hpp"

namespace dpw {

// Point of y^2 = f(z), deg f = 6: affine (z, y) or one of the two points at
// infinity, tagged by the sheet sign of y/z^3 -> sheet * sqrt(lead).
struct CurvePoint {
  bool at_inf = false;
  int sheet = +1;
  cplx z{}, y{};
  static CurvePoint affine(cplx z, cplx y) { return {false, +1, z, y}; }
  static CurvePoint infinity(int sheet) { return {true, sheet, 0.0, 0.0}; }
};

CurvePoint hyperelliptic_involution(const CurvePoint& p);
bool same_point(const CurvePoint& a, const CurvePoint& b, double tol = 1e-7);

// formal sum of points with integer multiplicities
using Divisor = std::vector<std::pair<CurvePoint, int>>;
int divisor_degree(const Divisor& d);
Divisor operator+(const Divisor& a, const Divisor& b);
Divisor operator-(const Divisor& a, const Divisor& b);
Divisor operator*(int n, const Divisor& d);

// Genus-2 curve y^2 = f(z) with distinct roots and two points at infinity.
// Divisor-class arithmetic runs on an internal odd (degree-5) model obtained
// by the coordinate change w = 1/(z - rho), y' = y w^3 for a fixed root rho.
struct HyperCurve {
  Poly f;
  cplx lead{};
  std::vector<cplx> roots;  // six, sorted
  cplx rho{};               // root sent to infinity in the odd model
  Poly F;                   // odd-model quintic
  cplx sqrt_lead{};         // branch fixing the infinity sheets

  static HyperCurve from_poly(const Poly& f);
  static HyperCurve from_roots(std::span<const cplx> roots, cplx lead = 1.0);
  CurvePoint weierstrass(int label) const;  // labels 1..6 in root order
  bool on_curve(const CurvePoint& p, double tol = 1e-8) const;
  // a y-value over z (principal branch); the other is its negative
  cplx y_branch(cplx z) const { return std::sqrt(f.eval(z)); }
};

// Reduced Mumford representative (u monic, deg u <= 2, v^2 = F mod u) of a
// degree-0 class on the odd model.
struct JacElt {
  Poly u{std::vector<cplx>{1.0}};
  Poly v{};
  bool is_neutral(double tol = 1e-7) const { return u.degree() == 0; }
};

bool jac_equal(const JacElt& a, const JacElt& b, double tol = 1e-6);
JacElt cantor_neg(const JacElt& a);
// Cantor composition + reduction via chord interpolation; group law of the
// Jacobian.
JacElt cantor_add(const JacElt& a, const JacElt& b, const HyperCurve& c);

// class of D - deg(D) * (odd-model base point)
JacElt jac_class(const HyperCurve& c, const Divisor& d);
// the unique effective degree-`degree` divisor in the class (as even-model
// points); requires 0 <= degree - deg u slots at the base point
std::vector<CurvePoint> effective_rep(const HyperCurve& c, const JacElt& e, int degree);

bool is_linearly_equivalent(const HyperCurve& c, const Divisor& a, const Divisor& b,
                            double tol = 1e-6);

// ---- Riemann-Roch machinery (even model) ----

// function a(z) + b(z) y over den(z)
struct FnElement {
  Poly a, b, den{std::vector<cplx>{1.0}};
  cplx eval(const HyperCurve& c, const CurvePoint& p) const;  // affine points
};

// basis of L(D) = { h : (h) + D >= 0 }
std::vector<FnElement> rr_space(const HyperCurve& c, const Divisor& D);

// independent linear-equivalence oracle: a degree-0 divisor is principal
// iff L(D) is 1-dimensional (genus-2 fact); no Cantor arithmetic involved
bool is_principal_oracle(const HyperCurve& c, const Divisor& D);

// valuation of h at a point (positive: zero order; negative: pole order)
int order_at(const HyperCurve& c, const FnElement& h, const CurvePoint& p, int max_order = 12);

// ---- spin structures and the named bundles ----

struct SpinStructure {
  SpinPartition part;
  Divisor model;  // W_i + W_j - W_k
  JacElt cls;     // class of model - deg * base
};

// builds S = [W_i + W_j - W_k], verifying 2S ~ K and h^0(S) = 0
SpinStructure spin_structure(const SpinPartition& part, const HyperCurve& c);

// the unique pair (Ptilde, Phat) with P + Ptilde + Phat ~ KS
std::pair<CurvePoint, CurvePoint> complete_to_KS(const CurvePoint& p, const SpinStructure& S,
                                                 const HyperCurve& c);

enum class BundleTag { K, K2, K3, S, KS, K2S };

// model divisor of the bundle (multiples of infty_+ + infty_- twisted by the
// spin divisor); spin may be null for the pure canonical powers
Divisor bundle_model(BundleTag tag, const HyperCurve& c, const SpinStructure* spin);

struct RationalSection {
  BundleTag tag;
  FnElement h;  // section = h * (formal model frame)
};

// basis of H^0 of the bundle in the rational model; dimensions
// (K, K2, K3, S, KS, K2S) = (2, 3, 5, 0, 2, 4)
std::vector<RationalSection> rr_basis(BundleTag tag, const HyperCurve& c,
                                      const SpinStructure* spin = nullptr);

}  // namespace dpw
