#include "htl/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "htl/quadrature.hpp"
#include "htl/random.hpp"

namespace htl {

static const double PI = 3.14159265358979323846;

double log_weight(double length) { return std::log(4.0 * PI / length); }

double log_weight_raw(double length) {
  return std::abs(4.0 * PI / std::log(length));
}

// Panels graded toward the point of the arc nearest coordinate 0: both
// halves when 0 is interior, otherwise the closer endpoint.
static std::vector<Panel> arc_mesh(double a, double b, double floor_rel) {
  if (a < 0.0 && 0.0 < b) {
    std::vector<Panel> mesh = graded_mesh(a, 0.0, false, 0.5, floor_rel, true);
    std::vector<Panel> right = graded_mesh(0.0, b, true, 0.5, floor_rel, true);
    mesh.insert(mesh.end(), right.begin(), right.end());
    return mesh;
  }
  bool toward_a = std::abs(a) <= std::abs(b);
  return graded_mesh(a, b, toward_a, 0.5, floor_rel, true);
}

static void check_arc(const Arc& I) {
  double L = I.length();
  if (!(L >= 1e-10))
    throw std::invalid_argument("mean_oscillation: degenerate arc (length " +
                                std::to_string(L) + " < 1e-10)");
  if (L > 2.0 * PI + 1e-9)
    throw std::invalid_argument("mean_oscillation: arc longer than the circle");
}

namespace {
struct PanelValues {
  Panel panel;
  NodeSet nodes;
  std::vector<cplx> v;
  cplx integral;
};
}  // namespace

static cplx eval_checked(const ArcFn& f, double x) {
  cplx v = f(x);
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw std::runtime_error("mean_oscillation: non-integrable sample at x = " +
                             std::to_string(x));
  return v;
}

OscillationReport mean_oscillation(const ArcFn& f, Arc I, double floor_rel) {
  check_arc(I);
  const double L = I.length();

  // The sign scan below walks samples left to right, so sort the graded
  // panels (emitted refinement-first) into circle order.
  std::vector<Panel> mesh = arc_mesh(I.theta_left, I.theta_right, floor_rel);
  std::sort(mesh.begin(), mesh.end(),
            [](const Panel& x, const Panel& y) { return x.lo < y.lo; });

  std::vector<PanelValues> panels;
  cplx total(0.0, 0.0);
  double vmax = 0.0, imax = 0.0;
  for (const Panel& p : mesh) {
    PanelValues pv;
    pv.panel = p;
    pv.nodes = panel_nodes(p.lo, p.hi);
    pv.v.resize(pv.nodes.size());
    cplx acc(0.0, 0.0);
    for (std::size_t i = 0; i < pv.nodes.size(); ++i) {
      pv.v[i] = eval_checked(f, pv.nodes.x[i]);
      vmax = std::max(vmax, std::abs(pv.v[i]));
      imax = std::max(imax, std::abs(pv.v[i].imag()));
      acc += pv.nodes.w[i] * pv.v[i];
    }
    pv.integral = acc;
    total += acc;
    panels.push_back(std::move(pv));
  }
  const cplx mean = total / L;

  // Real-valued data admits an exact treatment: |f - mean| is smooth except
  // where f - mean changes sign, so locate those roots and integrate each
  // signed piece as |integral|.
  const bool real_valued = imax <= 1e-12 * std::max(1.0, vmax);
  double osc = 0.0;
  if (!real_valued) {
    for (const PanelValues& pv : panels)
      for (std::size_t i = 0; i < pv.nodes.size(); ++i)
        osc += pv.nodes.w[i] * std::abs(pv.v[i] - mean);
  } else {
    const double m = mean.real();
    auto q = [&f, m](double x) { return f(x).real() - m; };

    // Roots of f - mean from sign changes between consecutive samples,
    // across panel boundaries included.
    std::vector<double> roots;
    double px = 0.0, pq = 0.0;
    bool have_prev = false;
    for (const PanelValues& pv : panels) {
      for (std::size_t i = 0; i < pv.nodes.size(); ++i) {
        double x = pv.nodes.x[i];
        double qx = pv.v[i].real() - m;
        if (qx == 0.0) {
          roots.push_back(x);
        } else if (have_prev && pq * qx < 0.0) {
          double lo = px, hi = x, qlo = pq;
          for (int it = 0; it < 60; ++it) {
            double mid = 0.5 * (lo + hi);
            // The bracket may straddle an isolated singular point (e.g. the
            // arc coordinate 0 on a symmetric arc); step off it rather than
            // evaluating there.
            bool ok = true;
            double qm = 0.0;
            try {
              qm = q(mid);
              ok = std::isfinite(qm);
            } catch (const std::exception&) {
              ok = false;
            }
            if (!ok) {
              mid += 0.125 * (hi - lo);
              try {
                qm = q(mid);
                ok = std::isfinite(qm);
              } catch (const std::exception&) {
                ok = false;
              }
              if (!ok) break;
            }
            if (qm == 0.0) {
              lo = hi = mid;
              break;
            }
            if (qlo * qm < 0.0) {
              hi = mid;
            } else {
              lo = mid;
              qlo = qm;
            }
          }
          roots.push_back(0.5 * (lo + hi));
        }
        px = x;
        pq = qx;
        have_prev = pq != 0.0;
      }
    }

    std::size_t r = 0;
    for (const PanelValues& pv : panels) {
      std::vector<double> cuts;
      while (r < roots.size() && roots[r] < pv.panel.hi) {
        if (roots[r] > pv.panel.lo) cuts.push_back(roots[r]);
        ++r;
      }
      if (cuts.empty()) {
        osc += std::abs(pv.integral - mean * (pv.panel.hi - pv.panel.lo));
        continue;
      }
      double lo = pv.panel.lo;
      cuts.push_back(pv.panel.hi);
      for (double hi : cuts) {
        if (hi <= lo) continue;
        NodeSet ns = panel_nodes(lo, hi);
        cplx acc(0.0, 0.0);
        for (std::size_t i = 0; i < ns.size(); ++i)
          acc += ns.w[i] * (eval_checked(f, ns.x[i]) - mean);
        osc += std::abs(acc);
        lo = hi;
      }
    }
  }

  OscillationReport rep;
  rep.arc = I;
  rep.mean = mean;
  rep.mo = osc / L;
  rep.variation = std::numeric_limits<double>::quiet_NaN();
  rep.variation_unbounded = false;
  rep.weighted = log_weight(L) * rep.mo;
  return rep;
}

VariationResult total_variation(const ArcFn& f, Arc I, double rel_tol) {
  check_arc(I);
  // A sample that is non-finite or throws counts as unbounded variation.
  auto sample = [&f](double x, bool& ok) {
    try {
      cplx v = f(x);
      ok = std::isfinite(v.real()) && std::isfinite(v.imag());
      return v;
    } catch (const std::exception&) {
      ok = false;
      return cplx(0.0, 0.0);
    }
  };
  double prev = 0.0;
  bool have_prev = false;
  for (int n = 64; n <= (1 << 20); n *= 2) {
    double sum = 0.0;
    bool ok = true;
    cplx last = sample(I.theta_left, ok);
    if (!ok) return {std::numeric_limits<double>::infinity(), true};
    for (int i = 1; i <= n; ++i) {
      double x = I.theta_left + I.length() * i / n;
      cplx v = sample(x, ok);
      if (!ok) return {std::numeric_limits<double>::infinity(), true};
      sum += std::abs(v - last);
      last = v;
    }
    if (have_prev && std::abs(sum - prev) <= rel_tol * std::max(sum, 1e-30))
      return {sum, false};
    prev = sum;
    have_prev = true;
  }
  return {std::numeric_limits<double>::infinity(), true};
}

VariationBoundCheck check_variation_bound(const ArcFn& f, Arc I) {
  VariationBoundCheck chk;
  chk.report = mean_oscillation(f, I);
  VariationResult var = total_variation(f, I);
  chk.report.variation = var.value;
  chk.report.variation_unbounded = var.unbounded;
  if (var.unbounded) {
    chk.bound = var.value;
    chk.vacuous = true;
    chk.pass = true;
    return chk;
  }
  chk.bound = var.value / 2.0;
  chk.vacuous = false;
  chk.pass = chk.report.mo <= chk.bound + 1e-8;
  return chk;
}

static bool is_monotone(const std::vector<double>& v, double slack) {
  bool up = true, down = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1] - slack) up = false;
    if (v[i] > v[i - 1] + slack) down = false;
  }
  return up || down;
}

DominationCheck check_domination(const std::function<double(double)>& f,
                                 const std::function<double(double)>& g,
                                 Arc I, bool monotone_flag) {
  check_arc(I);
  DominationCheck chk;

  const int m = 513;
  std::vector<double> xs(m), fv(m), gv(m);
  double scale = 0.0;
  for (int i = 0; i < m; ++i) {
    xs[i] = I.theta_left + I.length() * i / (m - 1);
    fv[i] = f(xs[i]);
    gv[i] = g(xs[i]);
    scale = std::max({scale, std::abs(fv[i]), std::abs(gv[i])});
  }
  const double slack = 1e-9 * (1.0 + scale);
  for (int i = 0; i < m && chk.violation.empty(); ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::abs(fv[i] - fv[j]) > std::abs(gv[i] - gv[j]) + slack) {
        chk.violation = "increment bound fails between x = " +
                        std::to_string(xs[i]) + " and x = " +
                        std::to_string(xs[j]);
        break;
      }

  if (monotone_flag) {
    double ms = 1e-12 * (1.0 + scale);
    if (is_monotone(fv, ms) && is_monotone(gv, ms)) {
      chk.monotone_used = true;
    } else if (chk.violation.empty()) {
      chk.violation = "monotone factor requested but samples not monotone";
    }
  }
  chk.precondition_ok = chk.violation.empty();
  if (!chk.precondition_ok) return chk;

  auto wrap = [](const std::function<double(double)>& h) {
    return [&h](double x) { return cplx(h(x), 0.0); };
  };
  chk.mo_f = mean_oscillation(wrap(f), I).mo;
  chk.mo_g = mean_oscillation(wrap(g), I).mo;
  chk.factor = chk.monotone_used ? 1.0 : 2.0;
  chk.pass = chk.mo_f <= chk.factor * chk.mo_g + 1e-8;
  return chk;
}

// Shared precondition scaffolding for the two proposition checkers.
// Verifies the derivative envelope |f'(x)| <= envelope(x) by central
// differences at log-spaced points on both sides of 0.
static bool derivative_dominated(const ArcFn& f, double delta,
                                 const std::function<double(double)>& envelope,
                                 std::string* violation) {
  const int m = 40;
  for (int i = 0; i < m; ++i) {
    // Pulled in from delta so the central-difference stencil stays inside.
    double x = delta * (1.0 - 2e-6) * std::pow(1e-6, double(i) / (m - 1));
    for (double s : {x, -x}) {
      double h = std::abs(s) * 1e-6;
      double fd = std::abs(f(s + h) - f(s - h)) / (2.0 * h);
      if (!(fd <= (1.0 + 1e-4) * envelope(std::abs(s)))) {
        *violation = "derivative bound fails at x = " + std::to_string(s) +
                     " (|f'| ~ " + std::to_string(fd) + ")";
        return false;
      }
    }
  }
  return true;
}

static bool arcs_inside(const std::vector<Arc>& arcs, double delta,
                        std::string* violation) {
  for (const Arc& a : arcs)
    if (a.theta_left < -delta - 1e-15 || a.theta_right > delta + 1e-15) {
      *violation = "arc [" + std::to_string(a.theta_left) + ", " +
                   std::to_string(a.theta_right) + "] not inside [-delta, delta]";
      return false;
    }
  return true;
}

static void fill_rows(const ArcFn& f, const std::vector<Arc>& arcs,
                      const std::function<double(double)>& bound_of_length,
                      PropositionTable* table) {
  table->all_pass = true;
  table->worst_ratio = 0.0;
  for (const Arc& a : arcs) {
    PropositionRow row;
    row.arc = a;
    row.mo = mean_oscillation(f, a).mo;
    row.bound = bound_of_length(a.length());
    row.ratio = row.mo / row.bound;
    row.pass = row.mo <= row.bound;
    table->all_pass = table->all_pass && row.pass;
    table->worst_ratio = std::max(table->worst_ratio, row.ratio);
    table->rows.push_back(row);
  }
}

PropositionTable check_prop_log(const ArcFn& f, double delta,
                                const std::vector<Arc>& arcs) {
  if (!(delta > 0.0) || delta >= 1.0)
    throw std::invalid_argument("check_prop_log: delta must be in (0, 1)");
  PropositionTable table;
  table.delta_within_hypothesis = delta <= 0.25 * std::exp(-1.0) + 1e-15;

  // Evenness probe.
  for (int i = 0; i < 24; ++i) {
    double x = delta * std::pow(1e-6, double(i) / 23);
    if (std::abs(f(x) - f(-x)) > 1e-9 * (1.0 + std::abs(f(x)))) {
      table.violation = "f not even at x = " + std::to_string(x);
      return table;
    }
  }
  auto envelope = [](double x) { return -1.0 / (x * std::log(x)); };
  if (!derivative_dominated(f, delta, envelope, &table.violation)) return table;
  if (!arcs_inside(arcs, delta, &table.violation)) return table;
  table.preconditions_ok = true;

  // Monotone samples on (0, delta] sharpen the constant from 8 to 4.
  {
    std::vector<double> ys;
    bool realv = true;
    for (int i = 0; i < 200; ++i) {
      cplx v = f(delta * std::pow(1e-9, double(i) / 199));
      realv = realv && std::abs(v.imag()) <= 1e-12 * (1.0 + std::abs(v));
      ys.push_back(v.real());
    }
    table.monotone = realv && is_monotone(ys, 1e-12);
  }
  table.constant = table.monotone ? 4.0 : 8.0;

  double c = table.constant;
  fill_rows(f, arcs,
            [c](double L) { return -c * std::exp(-1.0) / std::log(L / 2.0); },
            &table);
  return table;
}

PropositionTable check_prop_loglog(const ArcFn& f, double delta,
                                   const std::vector<Arc>& arcs) {
  if (!(delta > 0.0) || delta >= 1.0)
    throw std::invalid_argument("check_prop_loglog: delta must be in (0, 1)");
  PropositionTable table;
  table.delta_within_hypothesis = delta <= std::exp(-2.0) + 1e-15;

  // Jump probe at 0, scaled to the modulus of continuity the derivative
  // envelope allows (|f(s) - f(0)| <= 1/|ln s| when the bound holds).
  {
    double s = std::min(1e-7, delta / 2.0);
    cplx jump = f(s) - f(-s);
    if (!(std::abs(jump) <= 4.0 / std::abs(std::log(s)))) {
      table.violation = "f looks discontinuous at 0 (jump " +
                        std::to_string(std::abs(jump)) + ")";
      return table;
    }
  }
  auto envelope = [](double x) {
    double l = std::log(x);
    return 1.0 / (x * l * l);
  };
  if (!derivative_dominated(f, delta, envelope, &table.violation)) return table;
  if (!arcs_inside(arcs, delta, &table.violation)) return table;
  table.preconditions_ok = true;
  table.constant = 1.0;

  fill_rows(f, arcs,
            [](double L) { return 1.0 / std::log(-std::log(L / 2.0)); },
            &table);
  return table;
}

BmoLogResult bmo_log_norm(const ArcFn& f, const std::vector<Arc>& arcs) {
  if (arcs.empty())
    throw std::invalid_argument("bmo_log_norm: empty arc family");
  BmoLogResult res;
  for (const Arc& a : arcs) {
    ArcRow row;
    row.arc = a;
    row.mo = mean_oscillation(f, a).mo;
    row.weight = log_weight(a.length());
    row.weighted = row.weight * row.mo;
    row.weight_raw = log_weight_raw(a.length());
    row.weighted_raw = row.weight_raw * row.mo;
    if (row.weighted > res.norm) {
      res.norm = row.weighted;
      res.arg_sup = a;
    }
    if (row.weighted_raw > res.norm_raw) {
      res.norm_raw = row.weighted_raw;
      res.arg_sup_raw = a;
    }
    res.rows.push_back(row);
  }
  return res;
}

std::vector<Arc> dyadic_arcs(int depth) {
  if (depth < 1) throw std::invalid_argument("dyadic_arcs: depth must be >= 1");
  std::vector<Arc> arcs;
  for (int k = 1; k <= depth; ++k) {
    double s = PI * std::pow(0.5, k);
    if (2.0 * s < 1e-10) break;
    arcs.push_back({-s, s});
  }
  return arcs;
}

std::vector<Arc> random_arcs(int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Arc> arcs;
  for (int i = 0; i < count; ++i) {
    double c = rng.uniform(-PI, PI);
    double L = rng.uniform(0.0, 2.0 * PI);
    if (L < 1e-10) continue;
    arcs.push_back({c - L / 2.0, c + L / 2.0});
  }
  return arcs;
}

std::vector<Arc> nested_arcs(double delta, int depth) {
  if (!(delta > 0.0)) throw std::invalid_argument("nested_arcs: delta <= 0");
  std::vector<Arc> arcs;
  for (int k = 0; k <= depth; ++k) {
    double s = delta * std::pow(0.5, k);
    if (2.0 * s < 1e-10) break;
    arcs.push_back({-s, s});
    arcs.push_back({s / 2.0, s});
    arcs.push_back({-s, -s / 2.0});
  }
  return arcs;
}

}  // namespace htl
