#pragma once

// Finite-section experiments on the Toeplitz operator f -> P(a f): the
// coefficient-space action itself, the explicit preimage construction for
// band-limited targets, and two probes that record how the truncations
// behave as the order grows (smallest singular value; least-squares
// preimage size for a fixed right-hand side).
//
// Finite sections cannot decide the infinite-dimensional questions these
// trends point at, so every report is labeled "evidence, not proof".

#include <complex>
#include <string>
#include <vector>

#include "htl/hardy.hpp"

namespace htl {

struct ProbeReport {
  std::vector<int> orders;
  std::vector<double> sigma_min;  // smallest singular value per order
  std::vector<double> residual;   // l2 residual of the least-squares solve
  std::vector<double> coeff_l1;   // l1 of the solution coefficients
  bool rank_deficient = false;    // some section hit the pseudo-inverse cutoff
  bool insufficient_data = false; // fewer than two orders: no trend
  std::string evidence_label;
  std::string norm_proxy;         // which norm coeff_l1 stands in for
  // Provenance of the inputs, filled by the caller that computed them.
  int grid_n = 0;
  double window = 0.0;
  double svd_cutoff_rel = 0.0;
};

// P(a f) in coefficient space for an analytic-side f.  The result carries
// indices 0..N of the symbol; it is exact when f's degree fits within the
// symbol's bandwidth, and errors out otherwise naming the bandwidth
// needed.  Falls back to an FFT convolution for large sizes.
FourierCoeffs apply_toeplitz(const FourierCoeffs& a, const FourierCoeffs& f);

// Preimage of a band-limited analytic target g under f -> P(a f) for the
// built-in symbol family: P(a_minus g) is assembled exactly from the
// symbol's Taylor tail, divided by a_plus on the circle, and projected
// back.  bounded_target records the caller's promise that g stands in for
// a bounded function; the construction refuses to run without it.
FourierCoeffs preimage_smooth(const FourierCoeffs& g_target,
                              bool bounded_target = true,
                              int grid_n = 1 << 18, double window = 1e-5);

// Smallest singular value of each truncation order.
ProbeReport kernel_probe(const FourierCoeffs& a_coeffs,
                         const std::vector<int>& orders);

// Least-squares solve of each truncation against the truncated target,
// recording residual and coefficient l1 growth.  Singular values below
// 1e-12 of the largest are dropped (pseudo-inverse), with a flag.
ProbeReport surjectivity_probe(const FourierCoeffs& a_coeffs,
                               const FourierCoeffs& g_coeffs,
                               const std::vector<int>& orders);

}  // namespace htl
