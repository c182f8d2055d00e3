#include "htl/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace htl {

static NodeSet compute_gauss_legendre(int p) {
  if (p < 2) throw std::invalid_argument("gauss_legendre: order must be >= 2");
  NodeSet ns;
  ns.x.assign(p, 0.0);
  ns.w.assign(p, 0.0);
  for (int i = 0; i < (p + 1) / 2; ++i) {
    // Newton on P_p with the standard cosine initial guess for the i-th root
    double t = std::cos(M_PI * (i + 0.75) / (p + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= p; ++k) {
        double p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = p * (t * p1 - p0) / (t * t - 1.0);
      double dt = p1 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    double w = 2.0 / ((1.0 - t * t) * dp * dp);
    // roots come out in descending order; store symmetrically
    ns.x[i] = -t;
    ns.x[p - 1 - i] = t;
    ns.w[i] = w;
    ns.w[p - 1 - i] = w;
  }
  return ns;
}

const NodeSet& gauss_legendre(int p) {
  static std::mutex mu;
  static std::map<int, NodeSet> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, compute_gauss_legendre(p)).first;
  return it->second;
}

NodeSet panel_nodes(double a, double b, int p) {
  const NodeSet& gl = gauss_legendre(p);
  NodeSet ns;
  ns.x.resize(gl.size());
  ns.w.resize(gl.size());
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (std::size_t i = 0; i < gl.size(); ++i) {
    ns.x[i] = mid + half * gl.x[i];
    ns.w[i] = half * gl.w[i];
  }
  return ns;
}

std::vector<Panel> graded_mesh(double a, double b, bool toward_a, double ratio,
                               double floor_rel, bool close) {
  if (!(b > a)) throw std::invalid_argument("graded_mesh: need b > a");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("graded_mesh: ratio must be in (0,1)");
  if (!(floor_rel > 0.0 && floor_rel < 1.0))
    throw std::invalid_argument("graded_mesh: floor_rel must be in (0,1)");
  double L = b - a;
  std::vector<double> bnds{L};
  double v = L;
  while (v > floor_rel * L) {
    v *= ratio;
    bnds.push_back(v);
  }
  // bnds: L, L*ratio, ..., floor; panels measured from the refined endpoint
  std::vector<Panel> panels;
  for (std::size_t i = 0; i + 1 < bnds.size(); ++i)
    panels.push_back({bnds[i + 1], bnds[i]});
  if (close) panels.push_back({0.0, bnds.back()});
  if (toward_a) {
    for (Panel& pl : panels) {
      pl.lo += a;
      pl.hi += a;
    }
  } else {
    for (Panel& pl : panels) {
      double lo = b - pl.hi, hi = b - pl.lo;
      pl.lo = lo;
      pl.hi = hi;
    }
  }
  return panels;
}

NodeSet composite_nodes(const std::vector<Panel>& panels, int p) {
  NodeSet out;
  for (const Panel& pl : panels) {
    NodeSet ns = panel_nodes(pl.lo, pl.hi, p);
    out.x.insert(out.x.end(), ns.x.begin(), ns.x.end());
    out.w.insert(out.w.end(), ns.w.begin(), ns.w.end());
  }
  return out;
}

}  // namespace htl
