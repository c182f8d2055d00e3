#pragma once
// Composite Gauss-Legendre quadrature on geometrically graded meshes.
//
// Every singular integrand in this project has an endpoint singularity of
// logarithmic type, which is slowly varying on geometric scales, so a mesh
// with panel ratio 1/2 down to a small relative floor plus a fixed 16-point
// rule per panel reaches near machine precision.

#include <cstddef>
#include <vector>

namespace htl {

struct Panel {
  double lo, hi;
};

struct NodeSet {
  std::vector<double> x, w;
  std::size_t size() const { return x.size(); }
};

// p-point Gauss-Legendre rule on [-1, 1], cached per order.
const NodeSet& gauss_legendre(int p = 16);

// The p-point rule mapped to [a, b].
NodeSet panel_nodes(double a, double b, int p = 16);

// Panel boundaries on [a, b], geometrically refined toward one endpoint with
// the given ratio, stopping at floor_rel*(b-a).  With close=true the final
// sliver [endpoint, floor] is kept as an ordinary panel (right for bounded
// integrands); with close=false it is dropped and the caller accounts for the
// sub-floor mass analytically (right for integrands ~ 1/u).
std::vector<Panel> graded_mesh(double a, double b, bool toward_a = true,
                               double ratio = 0.5, double floor_rel = 1e-14,
                               bool close = true);

// Concatenated mapped nodes over a panel list.
NodeSet composite_nodes(const std::vector<Panel>& panels, int p = 16);

// Integrate f over the panel list with the p-point rule per panel.
template <class F>
auto integrate(const std::vector<Panel>& panels, F&& f, int p = 16)
    -> decltype(f(0.0)) {
  decltype(f(0.0)) acc{};
  for (const Panel& pl : panels) {
    NodeSet ns = panel_nodes(pl.lo, pl.hi, p);
    for (std::size_t i = 0; i < ns.size(); ++i) acc += ns.w[i] * f(ns.x[i]);
  }
  return acc;
}

}  // namespace htl
