#pragma once
// Branch-correct evaluation of the symbol family on the unit circle.
//
// Conventions: theta = arg(z) in (-pi, pi], and vartheta = arg(-z), so the
// singular point z = -1 sits at vartheta = 0.  For z = -e^{i vartheta},
//
//   1 + z      = -2i sin(vartheta/2) e^{i vartheta/2}
//   Log(1 + z) = ln(2|sin(vartheta/2)|) + i (vartheta - sgn(vartheta) pi)/2
//
// valid for vartheta in (-2pi, 2pi) \ {0}.  The split form is what every
// on-circle routine uses near the singular point: forming 1+z directly there
// cancels catastrophically.  Tiny angles must never be wrapped through pi
// first, since double-precision pi absorbs offsets below 2e-16 and lands
// exactly on the singular point.
//
//   a_plus(z)  = 1 - Log(1 + z)       analytic off the cut (-inf, -1]
//   a_minus(z) = 1 - Log(1 + 1/z)     analytic off the cut [-1, 0]
//   a          = a_plus / a_minus     unimodular on the circle
//   g          = (1+z)^{-1} a_plus^{-1} (Log a_plus + 2)^{-2}
//   Phi        = (Log a_plus + 2)^{-1}   exact primitive: dPhi/dz = g

#include <complex>

namespace htl {

using cplx = std::complex<double>;

// A point of the unit circle as an angle, normalized to (-pi, pi] on
// construction.
struct UnitAngle {
  double theta;
  explicit UnitAngle(double t);
  // arg(-z); the coordinate in which the singular point is 0
  double vartheta() const;
  cplx z() const;
};

// Which principal-branch cut applies to a returned value.
enum class BranchTag {
  none,
  log_one_plus_z,    // cut of Log(1+z): (-inf, -1]
  log_one_plus_inv,  // cut of Log(1+1/z): [-1, 0]
  quotient,          // a = a_plus/a_minus, both cuts meet only at z = -1
};

struct SymbolValue {
  cplx value;
  BranchTag branch_tag = BranchTag::none;
};

// --- general-argument operations -----------------------------------------

// Principal argument in (-pi, pi]; domain error at z = 0.
UnitAngle arg_principal(cplx z);

// a_plus(z) = 1 - Log(1+z); domain error on the cut (-inf, -1].
// On the closed disc minus {-1}: Re > 1 - ln 2.
SymbolValue eval_a_plus(cplx z);

// a_minus(z) = 1 - Log(1+1/z); domain error on the cut [-1, 0] (incl. 0).
// On the circle it equals conj(eval_a_plus(z)).
SymbolValue eval_a_minus(cplx z);

// a(e^{i theta}) = a_plus/a_minus; singular-point error at theta = pi.
SymbolValue eval_symbol(UnitAngle t);

// g on the closed disc; singular-point error at z = -1.
cplx eval_g(cplx z);

// d/dx Log a_plus(-e^{ix}) = -i (1-e^{-ix})^{-1} (1 - Log(1-e^{ix}))^{-1};
// singular-point error at x = 0, domain error for |x| > delta0.
cplx deriv_log_a_plus(double x, double delta0 = 0.049787068367863944 /* e^-3 */);

// --- on-circle workhorses (argument is vartheta in (-2pi, 2pi) \ {0}) ----

cplx one_plus_z_circle(double vt);  // 1 + z for z = -e^{i vt}, cancellation-free
cplx log1pz_circle(double vt);      // Log(1 + z), split form
cplx a_plus_circle(double vt);
cplx a_minus_circle(double vt);     // = conj(a_plus) on the circle
cplx symbol_circle(double vt);      // a = a_plus / conj(a_plus)
cplx g_circle(double vt);
cplx phi_circle(double vt);         // primitive of g along z

// Mean of the symbol over the circle, (1/2pi) int a(e^{i theta}) d theta.
// Real by the conjugate symmetry a(-vt) = conj(a(vt)); computed once, cached.
double symbol_mean();

// Exact-primitive-assisted integral of g(z(vartheta)) d vartheta over a bin
// [x1, x2] containing 0.  The identity
//   int g d vartheta = i (Phi(x2) - Phi(x1)) + int g(z) (1+z) d vartheta
// moves the singular mass into the primitive; the remaining integrand is
// bounded and is handled by a two-sided graded mesh.
cplx g_bin_primitive(double x1, double x2);

}  // namespace htl
