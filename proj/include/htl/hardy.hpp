#pragma once
// Discrete Hardy-space machinery: boundary sampling, Fourier coefficients,
// Riesz projections, Toeplitz truncations, winding number.
//
// Grid convention.  Sample j of an n-point grid sits at
//   theta_j = -pi + 2 pi j / n,
// so j = 0 is the singular point z = -1.  Its vartheta = arg(-z) coordinate
// is computed in index space (never by subtracting pi, which would absorb
// tiny offsets), and coefficients come out of the FFT as
//   c_k = (-1)^k FFT[values]_k / n,
// the phase being e^{-ik theta_0} for the grid's -pi origin.

#include <complex>
#include <functional>
#include <vector>

namespace htl {

using cplx = std::complex<double>;

struct CirclePoint {
  double theta;     // arg(z) in (-pi, pi]
  double vartheta;  // arg(-z); 0 at the singular point
};

CirclePoint circle_point_from_vartheta(double vt);

// A circle function receives both coordinates of the evaluation point and may
// use whichever is numerically convenient.
using CircleFn = std::function<cplx(const CirclePoint&)>;

struct GridFunction {
  int n = 0;           // number of samples, power of two >= 16
  double window = 0.0; // exclusion radius: |vartheta_j| < window is flagged
  std::vector<cplx> values;           // values[j] = f(e^{i theta_j})
  std::vector<unsigned char> flagged; // flagged samples never enter sums

  double theta(int j) const;
  double vartheta(int j) const;  // exact near the singular sample
  int unflagged_count() const;
};

// Uniform boundary samples; samples inside the window around z = -1 are
// flagged and not evaluated.  Evaluation failures at unflagged samples are
// rethrown with the sample index.
GridFunction sample_circle(const CircleFn& f, int n, double window);

struct FourierCoeffs {
  int N = 0;
  std::vector<cplx> c;  // size 2N+1, c[N + k] holds c_k for k in [-N, N]

  FourierCoeffs() = default;
  explicit FourierCoeffs(int max_index);
  cplx& at(int k);
  const cplx& at(int k) const;
  // largest index with |c_k| > 0 on the analytic side (0 for the zero vector)
  int analytic_degree() const;
};

// In-place radix-2 FFT; size must be a power of two.  Forward computes
// sum_j a_j e^{-2 pi i jk / n} (no normalization); inverse divides by n.
void fft_pow2(std::vector<cplx>& a, bool inverse);

// Plain transform: c_k for |k| <= N from the grid values; flagged samples
// contribute zero.  Exact to rounding for band-limited data on unflagged
// grids.  Requires 2N < n.
FourierCoeffs fourier_coeffs(const GridFunction& g, int N);

struct FourierRefineOpts {
  int near_bins = 256;          // bins with |vartheta_j| <= near_bins * step
  int panel_points = 16;        // Gauss order per bin panel
  double grade_floor_rel = 1e-12;  // grading floor for the central bin
  // optional exact integrator over the central bin (x1 < 0 < x2); used when
  // the integrand carries non-negligible mass below the grading floor
  std::function<cplx(double, double)> bin_primitive;
};

// Singularity-refined transform: like the plain one, but when the grid has an
// exclusion window (window > 0), every bin near the singular point -- flagged
// ones and those within near_bins grid steps -- is replaced by the bin mean
// of f computed by quadrature, the central bin on a two-sided graded mesh.
// With window == 0 the refinement is bypassed entirely so that band-limited
// exactness of the plain path is preserved.
FourierCoeffs fourier_coeffs(const GridFunction& g, int N, const CircleFn& f,
                             const FourierRefineOpts& opts = {});

// Riesz projections on coefficient vectors; index 0 belongs to P.
FourierCoeffs riesz_P(const FourierCoeffs& c);
FourierCoeffs riesz_Q(const FourierCoeffs& c);

struct ToeplitzTruncation {
  int n = 0;
  std::vector<cplx> a;  // row-major, entry(j,k) = c_{j-k}
  const cplx& entry(int j, int k) const { return a[std::size_t(j) * n + k]; }
};

// Finite section of the multiplication-then-project operator; needs N >= n-1.
ToeplitzTruncation toeplitz_truncation(const FourierCoeffs& c, int n);

// Total change of the continuously unwrapped argument over the unflagged
// samples (the flagged gap is bridged by continuity), divided by 2 pi.
// Requires n >= 4096; errors if any |value| < 1e-6 (degenerate symbol) or if
// an argument step exceeds pi/2 (insufficient resolution).
int winding_number(const GridFunction& g);

// Boundary L1 mean over unflagged samples: the H1-norm surrogate.  Reported
// together with the window so divergence can be observed as it shrinks; no
// claim of H1 membership is made.
double h1_surrogate(const GridFunction& g);

}  // namespace htl
