#include "htl/symbol.hpp"

#include <cmath>
#include <stdexcept>

#include "htl/quadrature.hpp"

namespace htl {

static const double PI = 3.14159265358979323846;

static double wrap_angle(double t) {
  double out = std::remainder(t, 2.0 * PI);  // (-pi, pi] up to the -pi tie
  if (out <= -PI) out = PI;
  return out;
}

UnitAngle::UnitAngle(double t) : theta(wrap_angle(t)) {}

double UnitAngle::vartheta() const {
  return theta > 0.0 ? theta - PI : theta + PI;
}

cplx UnitAngle::z() const { return std::polar(1.0, theta); }

UnitAngle arg_principal(cplx z) {
  if (z == cplx(0.0, 0.0))
    throw std::domain_error("arg_principal: argument of zero is undefined");
  double t = std::arg(z);
  if (t == -PI) t = PI;  // atan2 returns -pi for negative-zero imaginary parts
  return UnitAngle(t);
}

cplx one_plus_z_circle(double vt) {
  if (vt == 0.0)
    throw std::domain_error("one_plus_z_circle: singular point vartheta = 0");
  // 1 - e^{i vt} = -2i sin(vt/2) e^{i vt/2}
  return cplx(0.0, -2.0 * std::sin(0.5 * vt)) * std::polar(1.0, 0.5 * vt);
}

cplx log1pz_circle(double vt) {
  if (vt == 0.0)
    throw std::domain_error("log1pz_circle: singular point vartheta = 0");
  double re = std::log(2.0 * std::abs(std::sin(0.5 * vt)));
  double im = 0.5 * (vt - (vt > 0.0 ? PI : -PI));
  return cplx(re, im);
}

cplx a_plus_circle(double vt) { return 1.0 - log1pz_circle(vt); }

cplx a_minus_circle(double vt) { return std::conj(a_plus_circle(vt)); }

cplx symbol_circle(double vt) {
  cplx ap = a_plus_circle(vt);
  return ap / std::conj(ap);
}

cplx g_circle(double vt) {
  cplx ap = a_plus_circle(vt);
  cplx lg = std::log(ap);  // Re ap > 1 - ln 2 > 0, principal log is safe
  return 1.0 / (one_plus_z_circle(vt) * ap * (lg + 2.0) * (lg + 2.0));
}

cplx phi_circle(double vt) { return 1.0 / (std::log(a_plus_circle(vt)) + 2.0); }

// Crossover to the split form: only for points that are numerically on the
// circle and within |vartheta| < 1e-3 of the singular point, where the direct
// 1+z loses digits to cancellation.
static bool near_singular_on_circle(cplx z, double& vt_out) {
  if (std::abs(std::abs(z) - 1.0) > 1e-13) return false;
  cplx mz = -z;
  double vt = std::atan2(mz.imag(), mz.real());
  if (std::abs(vt) >= 1e-3) return false;
  vt_out = vt;
  return true;
}

SymbolValue eval_a_plus(cplx z) {
  if (z.imag() == 0.0 && z.real() <= -1.0)
    throw std::domain_error(
        "eval_a_plus: z on the branch cut (-inf, -1] of Log(1+z)");
  double vt;
  if (near_singular_on_circle(z, vt))
    return {a_plus_circle(vt), BranchTag::log_one_plus_z};
  return {1.0 - std::log(1.0 + z), BranchTag::log_one_plus_z};
}

SymbolValue eval_a_minus(cplx z) {
  if (z.imag() == 0.0 && z.real() >= -1.0 && z.real() <= 0.0)
    throw std::domain_error(
        "eval_a_minus: z on the branch cut [-1, 0] of Log(1+1/z)");
  double vt;
  if (near_singular_on_circle(z, vt))
    return {a_minus_circle(vt), BranchTag::log_one_plus_inv};
  return {1.0 - std::log(1.0 + 1.0 / z), BranchTag::log_one_plus_inv};
}

SymbolValue eval_symbol(UnitAngle t) {
  if (t.theta == PI)
    throw std::domain_error("eval_symbol: theta = pi is the singular point");
  return {symbol_circle(t.vartheta()), BranchTag::quotient};
}

cplx eval_g(cplx z) {
  if (std::abs(z) > 1.0 + 1e-12)
    throw std::domain_error("eval_g: z outside the closed unit disc");
  if (z == cplx(-1.0, 0.0))
    throw std::domain_error("eval_g: singular point z = -1");
  double vt;
  if (near_singular_on_circle(z, vt)) return g_circle(vt);
  cplx ap = 1.0 - std::log(1.0 + z);
  cplx lg = std::log(ap);
  return 1.0 / ((1.0 + z) * ap * (lg + 2.0) * (lg + 2.0));
}

cplx deriv_log_a_plus(double x, double delta0) {
  if (x == 0.0)
    throw std::domain_error("deriv_log_a_plus: singular point x = 0");
  if (std::abs(x) > delta0)
    throw std::domain_error("deriv_log_a_plus: |x| exceeds delta0");
  return cplx(0.0, -1.0) /
         (std::conj(one_plus_z_circle(x)) * a_plus_circle(x));
}

double symbol_mean() {
  static const double a0 = [] {
    // a(-x) = conj(a(x)), so the mean is (1/pi) int_0^pi Re a dx; the
    // integrand is bounded (|a| = 1), and grading toward x = 0 resolves the
    // slow oscillation of arg a there.
    auto panels = graded_mesh(0.0, PI, /*toward_a=*/true, 0.5, 1e-16, true);
    double acc = 0.0;
    for (const Panel& pl : panels) {
      NodeSet ns = panel_nodes(pl.lo, pl.hi, 16);
      for (std::size_t i = 0; i < ns.size(); ++i)
        acc += ns.w[i] * symbol_circle(ns.x[i]).real();
    }
    return acc / PI;
  }();
  return a0;
}

cplx g_bin_primitive(double x1, double x2) {
  if (!(x1 < 0.0 && 0.0 < x2))
    throw std::invalid_argument("g_bin_primitive: bin must contain 0");
  cplx acc = cplx(0.0, 1.0) * (phi_circle(x2) - phi_circle(x1));
  auto bounded = [](double x) { return g_circle(x) * one_plus_z_circle(x); };
  for (const Panel& pl : graded_mesh(0.0, x2, true, 0.5, 1e-14, true)) {
    NodeSet ns = panel_nodes(pl.lo, pl.hi, 16);
    for (std::size_t i = 0; i < ns.size(); ++i) acc += ns.w[i] * bounded(ns.x[i]);
  }
  for (const Panel& pl : graded_mesh(x1, 0.0, false, 0.5, 1e-14, true)) {
    NodeSet ns = panel_nodes(pl.lo, pl.hi, 16);
    for (std::size_t i = 0; i < ns.size(); ++i) acc += ns.w[i] * bounded(ns.x[i]);
  }
  return acc;
}

}  // namespace htl
