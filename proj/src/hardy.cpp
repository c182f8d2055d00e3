#include "htl/hardy.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "htl/quadrature.hpp"

namespace htl {

static const double PI = 3.14159265358979323846;

static bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

CirclePoint circle_point_from_vartheta(double vt) {
  return {vt > 0.0 ? vt - PI : vt + PI, vt};
}

double GridFunction::theta(int j) const { return -PI + 2.0 * PI * j / n; }

double GridFunction::vartheta(int j) const {
  // wrap(2 pi j / n) computed in index space: exact rounding near 0
  int jj = (j <= n / 2) ? j : j - n;
  return 2.0 * PI * jj / n;
}

int GridFunction::unflagged_count() const {
  int c = 0;
  for (unsigned char f : flagged) c += (f == 0);
  return c;
}

GridFunction sample_circle(const CircleFn& f, int n, double window) {
  if (!is_pow2(n) || n < 16)
    throw std::invalid_argument(
        "sample_circle: n must be a power of two >= 16");
  if (!(window >= 0.0))
    throw std::invalid_argument("sample_circle: window must be >= 0");
  GridFunction g;
  g.n = n;
  g.window = window;
  g.values.assign(n, cplx(0.0, 0.0));
  g.flagged.assign(n, 0);
  for (int j = 0; j < n; ++j) {
    double vt = g.vartheta(j);
    if (std::abs(vt) < window) {
      g.flagged[j] = 1;
      continue;
    }
    try {
      g.values[j] = f(CirclePoint{g.theta(j), vt});
    } catch (const std::exception& e) {
      throw std::runtime_error("sample_circle: evaluation failed at sample " +
                               std::to_string(j) + " (theta = " +
                               std::to_string(g.theta(j)) + "): " + e.what());
    }
  }
  return g;
}

FourierCoeffs::FourierCoeffs(int max_index) : N(max_index) {
  if (max_index < 0)
    throw std::invalid_argument("FourierCoeffs: negative max index");
  c.assign(2 * std::size_t(max_index) + 1, cplx(0.0, 0.0));
}

cplx& FourierCoeffs::at(int k) {
  if (k < -N || k > N) throw std::out_of_range("FourierCoeffs::at");
  return c[std::size_t(N + k)];
}

const cplx& FourierCoeffs::at(int k) const {
  if (k < -N || k > N) throw std::out_of_range("FourierCoeffs::at");
  return c[std::size_t(N + k)];
}

int FourierCoeffs::analytic_degree() const {
  for (int k = N; k > 0; --k)
    if (std::abs(at(k)) > 0.0) return k;
  return 0;
}

// Twiddle tables are cached per size; all arithmetic is sequential, so the
// transform is deterministic.
static const std::vector<cplx>& twiddles(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<cplx>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    std::vector<cplx> tw(n / 2);
    for (int i = 0; i < n / 2; ++i)
      tw[i] = std::polar(1.0, -2.0 * PI * i / n);
    it = cache.emplace(n, std::move(tw)).first;
  }
  return it->second;
}

void fft_pow2(std::vector<cplx>& a, bool inverse) {
  int n = static_cast<int>(a.size());
  if (!is_pow2(n)) throw std::invalid_argument("fft_pow2: size not a power of two");
  // bit-reversal permutation
  for (int i = 1, j = 0; i < n; ++i) {
    int bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  const std::vector<cplx>& tw = twiddles(n);
  for (int len = 2; len <= n; len <<= 1) {
    int stride = n / len;
    for (int i = 0; i < n; i += len) {
      for (int k = 0; k < len / 2; ++k) {
        cplx w = tw[std::size_t(k) * stride];
        if (inverse) w = std::conj(w);
        cplx u = a[i + k];
        cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
  if (inverse)
    for (cplx& x : a) x /= static_cast<double>(n);
}

static FourierCoeffs coeffs_from_grid_values(std::vector<cplx> vals, int N) {
  int n = static_cast<int>(vals.size());
  fft_pow2(vals, false);
  FourierCoeffs out(N);
  for (int k = -N; k <= N; ++k) {
    cplx v = vals[std::size_t((k % n + n) % n)] / static_cast<double>(n);
    out.at(k) = (k & 1) ? -v : v;  // e^{-ik theta_0} phase for the -pi origin
  }
  return out;
}

FourierCoeffs fourier_coeffs(const GridFunction& g, int N) {
  if (2 * N >= g.n)
    throw std::invalid_argument(
        "fourier_coeffs: resolution error, need 2N < n (n = " +
        std::to_string(g.n) + ")");
  std::vector<cplx> vals(g.values);
  for (int j = 0; j < g.n; ++j)
    if (g.flagged[j]) vals[j] = cplx(0.0, 0.0);
  return coeffs_from_grid_values(std::move(vals), N);
}

FourierCoeffs fourier_coeffs(const GridFunction& g, int N, const CircleFn& f,
                             const FourierRefineOpts& opts) {
  if (2 * N >= g.n)
    throw std::invalid_argument(
        "fourier_coeffs: resolution error, need 2N < n (n = " +
        std::to_string(g.n) + ")");
  // No exclusion window: the plain path is already exact for band-limited
  // data, and bin-averaging would only blunt it.
  if (g.window == 0.0) return fourier_coeffs(g, N);

  const int n = g.n;
  const double d = 2.0 * PI / n;
  std::vector<cplx> vals(g.values);
  auto eval = [&f](double x) { return f(circle_point_from_vartheta(x)); };
  for (int j = 0; j < n; ++j) {
    double vt = g.vartheta(j);
    bool fill = g.flagged[j] || std::abs(vt) <= opts.near_bins * d;
    if (!fill) continue;
    cplx acc(0.0, 0.0);
    if (j == 0) {
      // the bin containing the singular point: integrate both halves on a
      // graded mesh, or defer to the caller's exact bin integrator
      double lo = vt - 0.5 * d, hi = vt + 0.5 * d;
      if (opts.bin_primitive) {
        acc = opts.bin_primitive(lo, hi);
      } else {
        for (const Panel& pl :
             graded_mesh(0.0, hi, true, 0.5, opts.grade_floor_rel, true)) {
          NodeSet ns = panel_nodes(pl.lo, pl.hi, opts.panel_points);
          for (std::size_t i = 0; i < ns.size(); ++i)
            acc += ns.w[i] * eval(ns.x[i]);
        }
        for (const Panel& pl :
             graded_mesh(lo, 0.0, false, 0.5, opts.grade_floor_rel, true)) {
          NodeSet ns = panel_nodes(pl.lo, pl.hi, opts.panel_points);
          for (std::size_t i = 0; i < ns.size(); ++i)
            acc += ns.w[i] * eval(ns.x[i]);
        }
      }
    } else {
      NodeSet ns = panel_nodes(vt - 0.5 * d, vt + 0.5 * d, opts.panel_points);
      for (std::size_t i = 0; i < ns.size(); ++i)
        acc += ns.w[i] * eval(ns.x[i]);
    }
    vals[j] = acc / d;
  }
  return coeffs_from_grid_values(std::move(vals), N);
}

FourierCoeffs riesz_P(const FourierCoeffs& c) {
  FourierCoeffs out(c.N);
  for (int k = 0; k <= c.N; ++k) out.at(k) = c.at(k);
  return out;
}

FourierCoeffs riesz_Q(const FourierCoeffs& c) {
  FourierCoeffs out(c.N);
  for (int k = -c.N; k < 0; ++k) out.at(k) = c.at(k);
  return out;
}

ToeplitzTruncation toeplitz_truncation(const FourierCoeffs& c, int n) {
  if (n < 1) throw std::invalid_argument("toeplitz_truncation: order must be >= 1");
  if (c.N < n - 1)
    throw std::invalid_argument(
        "toeplitz_truncation: insufficient coefficients, need N >= " +
        std::to_string(n - 1) + ", have " + std::to_string(c.N));
  ToeplitzTruncation t;
  t.n = n;
  t.a.resize(std::size_t(n) * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) t.a[std::size_t(j) * n + k] = c.at(j - k);
  return t;
}

int winding_number(const GridFunction& g) {
  if (g.n < 4096)
    throw std::invalid_argument(
        "winding_number: grid too coarse, need n >= 4096");
  std::vector<cplx> v;
  v.reserve(g.n);
  for (int j = 0; j < g.n; ++j)
    if (!g.flagged[j]) v.push_back(g.values[j]);
  if (v.size() < 2)
    throw std::invalid_argument("winding_number: not enough unflagged samples");
  for (const cplx& x : v)
    if (std::abs(x) < 1e-6)
      throw std::domain_error(
          "winding_number: degenerate symbol, |value| < 1e-6");
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    cplx ratio = v[(i + 1) % v.size()] / v[i];
    double step = std::atan2(ratio.imag(), ratio.real());
    if (std::abs(step) > 0.5 * PI)
      throw std::runtime_error(
          "winding_number: argument step exceeds pi/2; grid under-resolves "
          "the symbol");
    total += step;
  }
  return static_cast<int>(std::llround(total / (2.0 * PI)));
}

double h1_surrogate(const GridFunction& g) {
  double acc = 0.0;
  int cnt = 0;
  for (int j = 0; j < g.n; ++j) {
    if (g.flagged[j]) continue;
    acc += std::abs(g.values[j]);
    ++cnt;
  }
  if (cnt == 0)
    throw std::domain_error("h1_surrogate: every sample is flagged");
  return acc / cnt;
}

}  // namespace htl
