#include "htl/singular_integrals.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "htl/quadrature.hpp"
#include "htl/symbol.hpp"

namespace htl {

static const double PI = 3.14159265358979323846;
static const double E3 = std::exp(-3.0);

namespace {
// Node sets on the unit interval, graded toward the logarithmic endpoint
// u = 0, with the integrand-independent factors evaluated once.  The
// closed set keeps the terminal [0, floor] sliver (fine for bounded
// integrands); the open set drops it, and callers attach the sliver
// analytically when the integrand behaves like 1/u.
struct UnitNodes {
  std::vector<double> u, w;    // closed
  std::vector<double> uo, wo;  // open
  std::vector<double> fq;      // 1/(1 - ln u), closed nodes
  std::vector<double> fg;      // 1/((1 - ln u)(ln(1 - ln u) + 2)^2), closed
  std::vector<double> fdq;     // 1/(u (1 - ln u)^2), open nodes
  double floor = 0.0;
};
}  // namespace

static const UnitNodes& unit_nodes(double mesh_floor) {
  static std::mutex mu;
  static std::map<double, UnitNodes> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(mesh_floor);
  if (it != cache.end()) return it->second;

  UnitNodes un;
  std::vector<Panel> open_mesh =
      graded_mesh(0.0, 1.0, true, 0.5, mesh_floor, false);
  NodeSet closed =
      composite_nodes(graded_mesh(0.0, 1.0, true, 0.5, mesh_floor, true));
  NodeSet open = composite_nodes(open_mesh);
  // The sliver attached analytically by dq must start exactly where the
  // open mesh ends, which is the first power of the ratio at or below the
  // requested floor, not the requested floor itself.
  un.floor = open_mesh.back().lo;
  for (const Panel& pl : open_mesh) un.floor = std::min(un.floor, pl.lo);
  un.u = closed.x;
  un.w = closed.w;
  un.uo = open.x;
  un.wo = open.w;
  un.fq.resize(un.u.size());
  un.fg.resize(un.u.size());
  for (std::size_t i = 0; i < un.u.size(); ++i) {
    double s = 1.0 - std::log(un.u[i]);
    double t = std::log(s) + 2.0;
    un.fq[i] = 1.0 / s;
    un.fg[i] = 1.0 / (s * t * t);
  }
  un.fdq.resize(un.uo.size());
  for (std::size_t i = 0; i < un.uo.size(); ++i) {
    double s = 1.0 - std::log(un.uo[i]);
    un.fdq[i] = 1.0 / (un.uo[i] * s * s);
  }
  return cache.emplace(mesh_floor, std::move(un)).first->second;
}

static void check_cut(cplx z, const char* fn) {
  if (z.imag() == 0.0 && z.real() >= -1.0 && z.real() <= 0.0)
    throw std::domain_error(std::string(fn) +
                            ": z lies on the integration cut [-1, 0]");
}

// Everything is computed in w = 1 + z, which callers near the singular
// point can form without cancellation.
static cplx q_tilde_from_w(cplx w, double mesh_floor) {
  const UnitNodes& un = unit_nodes(mesh_floor);
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < un.u.size(); ++i)
    acc += un.fq[i] * un.w[i] / (un.u[i] - w);
  return acc;
}

static cplx dq_tilde_from_w(cplx w, double mesh_floor) {
  const UnitNodes& un = unit_nodes(mesh_floor);
  cplx acc = 1.0 / (w - 1.0);
  for (std::size_t i = 0; i < un.uo.size(); ++i)
    acc += un.fdq[i] * un.wo[i] / (un.uo[i] - w);
  // Sliver below the floor: 1/(u - w) ~ -1/w there, and the remaining
  // factor has the exact primitive -1/(1 - ln u).
  acc -= 1.0 / (w * (1.0 - std::log(un.floor)));
  return acc;
}

static cplx big_g_from_w(cplx w, double mesh_floor) {
  const UnitNodes& un = unit_nodes(mesh_floor);
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < un.u.size(); ++i)
    acc += un.fg[i] * un.w[i] / (un.u[i] - w);
  return acc;
}

// Limit value at w = 0: substituting tau = ln(1 - ln u) turns the
// integral into d tau / (tau + 2)^2 over [0, inf), integrated on
// geometric panels out to where the analytic remainder 1/(T + 2) drops
// below the mesh floor, then attached.
static double big_g_limit(double mesh_floor) {
  std::vector<Panel> panels{{0.0, 1.0}};
  double T = 1.0;
  while (1.0 / (T + 2.0) > mesh_floor) {
    panels.push_back({T, 2.0 * T});
    T *= 2.0;
  }
  double acc = integrate(panels, [](double tau) {
    return 1.0 / ((tau + 2.0) * (tau + 2.0));
  });
  return acc + 1.0 / (T + 2.0);
}

cplx q_tilde_a(cplx z, double mesh_floor) {
  check_cut(z, "q_tilde_a");
  return q_tilde_from_w(z + 1.0, mesh_floor);
}

cplx dq_tilde_a(cplx z, double mesh_floor) {
  check_cut(z, "dq_tilde_a");
  return dq_tilde_from_w(z + 1.0, mesh_floor);
}

cplx big_g(cplx z, double mesh_floor) {
  if (z == cplx(-1.0, 0.0)) return cplx(big_g_limit(mesh_floor), 0.0);
  check_cut(z, "big_g");
  return big_g_from_w(z + 1.0, mesh_floor);
}

cplx qa_circle(double vartheta) {
  static const double a0 = symbol_mean();
  // 1/z for z = -e^{i vartheta} is -e^{-i vartheta}, so the reflected
  // argument is reached by flipping the angle's sign.
  cplx w_reflected = one_plus_z_circle(-vartheta);
  return symbol_circle(vartheta) - q_tilde_from_w(w_reflected, 1e-14) - a0;
}

GridFunction qa_on_circle(int n, double window) {
  return sample_circle(
      [](const CirclePoint& p) { return qa_circle(p.vartheta); }, n, window);
}

namespace {
struct CheckPoint {
  cplx lhs;
  cplx model;
};
}  // namespace

// The i2 integral: (1/w) * integral over [theta, e^-3] of
// ((u - w)^-1 - u^-1) (1 - ln u)^-2, on panels doubling away from theta.
static cplx i2_integral(double theta, cplx w) {
  std::vector<Panel> panels;
  double lo = theta;
  while (lo < E3) {
    double hi = std::min(2.0 * lo, E3);
    panels.push_back({lo, hi});
    lo = hi;
  }
  cplx acc = integrate(panels, [w](double u) {
    double s = 1.0 - std::log(u);
    return (1.0 / (u - w) - 1.0 / u) / (s * s);
  });
  return acc / w;
}

static CheckPoint eval_check_point(const std::string& name, double theta) {
  const double L = std::log(theta);
  const cplx z = -std::polar(1.0, theta);
  const cplx w = one_plus_z_circle(theta);
  const cplx lw = log1pz_circle(theta);

  if (name == "d-lna")
    return {deriv_log_a_plus(theta), cplx(1.0 / (theta * L), 0.0)};
  if (name == "d-ilna")
    return {cplx(deriv_log_a_plus(theta).imag(), 0.0),
            cplx(0.5 * PI / (theta * L * L), 0.0)};
  if (name == "d-lnaa")
    return {cplx(deriv_log_a_plus(theta).real(), 0.0),
            cplx(1.0 / (theta * L), 0.0)};

  const cplx dq = dq_tilde_from_w(w, 1e-14);
  if (name == "I1") return {dq, 1.0 / (w * lw)};
  if (name == "i2") return {i2_integral(theta, w), 1.0 / (w * lw * lw)};
  if (name == "ddq")
    return {dq + 1.0 / (w * (1.0 - L)), cplx(1.0 / (theta * L * L), 0.0)};
  if (name == "dreq")
    return {cplx((cplx(0.0, 1.0) * z * dq).real() - 1.0 / (theta * L), 0.0),
            cplx(1.0 / (theta * L * L), 0.0)};
  if (name == "diq")
    return {cplx((cplx(0.0, 1.0) * z * dq).imag(), 0.0),
            cplx(1.0 / (theta * L * L), 0.0)};
  throw std::invalid_argument(
      "asym_check: unknown check \"" + name +
      "\" (expected one of d-lna, d-ilna, d-lnaa, I1, i2, ddq, dreq, diq)");
}

AsymptoticCheck asym_check(const std::string& name, double theta_min,
                           double theta_max, int points, double rho) {
  if (!(theta_min > 0.0) || !(theta_max <= E3 * (1.0 + 1e-12)))
    throw std::invalid_argument(
        "asym_check: theta range must sit inside (0, e^-3]");
  if (!(rho > 0.0)) throw std::invalid_argument("asym_check: rho must be > 0");
  double decades = std::log10(theta_max / theta_min);
  if (points < 2 || decades < 3.0 - 1e-9)
    throw std::invalid_argument(
        "asym_check: insufficient decades (need >= 3 spanned by >= 2 points)");

  AsymptoticCheck chk;
  chk.name = name;
  chk.rho = rho;

  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = theta_min * std::pow(theta_max / theta_min,
                                   double(i) / (points - 1));

  // Evaluate, tolerating failures at the extremes only: those shrink the
  // range, an interior failure propagates.
  int first = -1, last = -1;
  std::vector<CheckPoint> pts(points);
  std::vector<bool> ok(points, false);
  std::string err;
  for (int i = 0; i < points; ++i) {
    try {
      pts[i] = eval_check_point(name, grid[i]);
      ok[i] = true;
      if (first < 0) first = i;
      last = i;
    } catch (const std::invalid_argument&) {
      throw;  // misuse, not a numerical failure
    } catch (const std::exception& e) {
      if (err.empty()) err = e.what();
    }
  }
  if (first < 0)
    throw std::runtime_error("asym_check: every evaluation failed: " + err);
  for (int i = first; i <= last; ++i)
    if (!ok[i])
      throw std::runtime_error(
          "asym_check: evaluation failed inside the range: " + err);
  chk.range_shrunk = first > 0 || last < points - 1;
  chk.theta_min_used = grid[first];
  chk.theta_max_used = grid[last];

  chk.ratio_min = std::numeric_limits<double>::infinity();
  chk.ratio_max = 0.0;
  double sign_max = -std::numeric_limits<double>::infinity();
  for (int i = first; i <= last; ++i) {
    chk.theta_grid.push_back(grid[i]);
    chk.lhs.push_back(pts[i].lhs);
    chk.model.push_back(pts[i].model);
    double r = std::abs(pts[i].lhs) / std::abs(pts[i].model);
    chk.ratio.push_back(r);
    chk.ratio_min = std::min(chk.ratio_min, r);
    chk.ratio_max = std::max(chk.ratio_max, r);
    sign_max = std::max(sign_max, pts[i].lhs.real());
  }
  chk.log_variation = std::log(chk.ratio_max) - std::log(chk.ratio_min);
  chk.sign_ok = name == "diq" ? sign_max <= 0.0 : true;
  chk.calibrated_constant = 1.5 * chk.ratio_max;
  chk.pass = chk.ratio_min >= 1.0 / rho && chk.ratio_max <= rho &&
             chk.log_variation < std::log(rho) && chk.sign_ok;
  return chk;
}

TailModel make_tail_model(double window) {
  return {big_g(cplx(-1.0, 0.0)), window};
}

TailPair tail_model_h(double vartheta, const TailModel& model) {
  if (vartheta == 0.0)
    throw std::domain_error("tail_model_h: vartheta = 0 is the singular point");
  cplx w = one_plus_z_circle(vartheta);
  cplx denom = w * a_minus_circle(vartheta);
  TailPair pair;
  pair.h = (model.h_minus_one - big_g_from_w(w, 1e-14)) / denom;
  pair.model = 1.0 / ((std::log(1.0 - std::log(std::abs(vartheta))) + 2.0) *
                      denom);
  return pair;
}

double ggg_residual(double vartheta) {
  static const cplx g_at_minus_one = big_g(cplx(-1.0, 0.0));
  if (vartheta == 0.0)
    throw std::domain_error("ggg_residual: vartheta = 0 is the singular point");
  cplx w = one_plus_z_circle(vartheta);
  double x = std::abs(vartheta);
  double resid = std::abs(big_g_from_w(w, 1e-14) - g_at_minus_one +
                          1.0 / (std::log(1.0 - std::log(x)) + 2.0));
  double ll = std::abs(std::log(x));
  double lll = std::log(ll);
  return resid * ll * lll * lll;
}

}  // namespace htl
