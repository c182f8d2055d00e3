#include "htl/fredholm.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "htl/symbol.hpp"

#define LAPACK_COMPLEX_CUSTOM
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace htl {

namespace {

void require_analytic(const FourierCoeffs& f, const char* who) {
  for (int k = -f.N; k < 0; ++k) {
    if (f.at(k) != cplx(0.0, 0.0)) {
      throw std::invalid_argument(std::string(who) +
                                  ": input has a co-analytic coefficient at "
                                  "index " +
                                  std::to_string(k));
    }
  }
}

void require_increasing_orders(const std::vector<int>& orders,
                               const char* who) {
  if (orders.empty()) {
    throw std::invalid_argument(std::string(who) + ": no truncation orders");
  }
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (orders[i] < 1) {
      throw std::invalid_argument(std::string(who) +
                                  ": truncation order must be >= 1");
    }
    if (i > 0 && orders[i] <= orders[i - 1]) {
      throw std::invalid_argument(
          std::string(who) + ": truncation orders must strictly increase");
    }
  }
}

// Singular values only ('N'): enough for the kernel probe.
std::vector<double> singular_values(std::vector<cplx> a, int n) {
  std::vector<double> s(static_cast<std::size_t>(n));
  lapack_int info = LAPACKE_zgesdd(LAPACK_ROW_MAJOR, 'N', n, n, a.data(), n,
                                   s.data(), nullptr, n, nullptr, n);
  if (info != 0) {
    throw std::runtime_error(
        "singular value factorization failed (zgesdd info = " +
        std::to_string(info) + ")");
  }
  return s;
}

}  // namespace

FourierCoeffs apply_toeplitz(const FourierCoeffs& a, const FourierCoeffs& f) {
  require_analytic(f, "apply_toeplitz");
  const int d = f.analytic_degree();
  const int N = a.N;
  if (d > N) {
    throw std::invalid_argument(
        "apply_toeplitz: symbol bandwidth too small for the input; need "
        "coefficients through index " +
        std::to_string(d));
  }

  FourierCoeffs out(N);
  // Direct sums are exact and fast enough until the work area gets large;
  // past that, one linear convolution via the FFT.
  const double work =
      (2.0 * static_cast<double>(N) + 1.0) * (static_cast<double>(d) + 1.0);
  if (work <= 4e7) {
    for (int k = 0; k <= N; ++k) {
      cplx acc(0.0, 0.0);
      for (int j = 0; j <= d; ++j) {
        acc += a.at(k - j) * f.at(j);
      }
      out.at(k) = acc;
    }
    return out;
  }

  const std::size_t la = static_cast<std::size_t>(2 * N + 1);
  const std::size_t lf = static_cast<std::size_t>(d + 1);
  std::size_t L = 1;
  while (L < la + lf - 1) L <<= 1;
  std::vector<cplx> av(L, cplx(0.0, 0.0)), fv(L, cplx(0.0, 0.0));
  for (int k = -N; k <= N; ++k) av[static_cast<std::size_t>(k + N)] = a.at(k);
  for (int j = 0; j <= d; ++j) fv[static_cast<std::size_t>(j)] = f.at(j);
  fft_pow2(av, false);
  fft_pow2(fv, false);
  for (std::size_t i = 0; i < L; ++i) av[i] *= fv[i];
  fft_pow2(av, true);
  // conv[m] = sum_j a_{m - N - j} f_j, so coefficient k sits at m = N + k.
  for (int k = 0; k <= N; ++k) {
    out.at(k) = av[static_cast<std::size_t>(N + k)];
  }
  return out;
}

FourierCoeffs preimage_smooth(const FourierCoeffs& g_target,
                              bool bounded_target, int grid_n, double window) {
  if (!bounded_target) {
    throw std::invalid_argument(
        "preimage_smooth: the construction is only valid for bounded "
        "(band-limited) targets");
  }
  double co_energy = 0.0;
  for (int k = -g_target.N; k < 0; ++k) {
    co_energy += std::norm(g_target.at(k));
  }
  if (co_energy > 1e-10) {
    throw std::invalid_argument(
        "preimage_smooth: target has co-analytic energy " +
        std::to_string(co_energy) + " (must be <= 1e-10)");
  }

  const int d = g_target.analytic_degree();
  // Analytic projection of a_minus * g, exactly: a_plus has Taylor
  // coefficients c_0 = 1, c_m = (-1)^m / m, conjugation mirrors them onto
  // the co-analytic side for a_minus, so
  //   B_k = g_k + sum_{j > k} (-1)^(j-k) / (j-k) * g_j.
  std::vector<cplx> B(static_cast<std::size_t>(d) + 1);
  for (int k = 0; k <= d; ++k) {
    cplx acc = g_target.at(k);
    for (int j = k + 1; j <= d; ++j) {
      const double c = ((j - k) % 2 == 0 ? 1.0 : -1.0) / (j - k);
      acc += c * g_target.at(j);
    }
    B[static_cast<std::size_t>(k)] = acc;
  }

  // eta = B(z) / a_plus(z) on the circle.  The polynomial part is tame;
  // the division is evaluated through the cancellation-free circle form.
  auto eta = [&B, d](const CirclePoint& p) {
    const cplx z = -std::polar(1.0, p.vartheta);
    cplx acc = B[static_cast<std::size_t>(d)];
    for (int k = d - 1; k >= 0; --k) {
      acc = acc * z + B[static_cast<std::size_t>(k)];
    }
    return acc / a_plus_circle(p.vartheta);
  };

  GridFunction grid = sample_circle(eta, grid_n, window);
  const int N = grid_n / 2 - 1;
  FourierCoeffs full = fourier_coeffs(grid, N, eta, FourierRefineOpts{});
  return riesz_P(full);
}

ProbeReport kernel_probe(const FourierCoeffs& a_coeffs,
                         const std::vector<int>& orders) {
  require_increasing_orders(orders, "kernel_probe");
  ProbeReport rep;
  rep.orders = orders;
  rep.insufficient_data = orders.size() < 2;
  rep.evidence_label = "evidence, not proof";
  rep.svd_cutoff_rel = 1e-12;
  for (int n : orders) {
    ToeplitzTruncation t = toeplitz_truncation(a_coeffs, n);
    std::vector<double> s = singular_values(std::move(t.a), n);
    rep.sigma_min.push_back(s[static_cast<std::size_t>(n - 1)]);
    rep.residual.push_back(0.0);
    rep.coeff_l1.push_back(0.0);
  }
  return rep;
}

ProbeReport surjectivity_probe(const FourierCoeffs& a_coeffs,
                               const FourierCoeffs& g_coeffs,
                               const std::vector<int>& orders) {
  require_increasing_orders(orders, "surjectivity_probe");
  const int n_max = orders.back();
  if (n_max > a_coeffs.N / 2) {
    throw std::invalid_argument(
        "surjectivity_probe: order " + std::to_string(n_max) +
        " exceeds half the symbol bandwidth (max order " +
        std::to_string(a_coeffs.N / 2) +
        "); section entries would fall outside the known coefficients' "
        "accurate range");
  }

  ProbeReport rep;
  rep.orders = orders;
  rep.insufficient_data = orders.size() < 2;
  rep.evidence_label = "evidence, not proof";
  rep.norm_proxy = "coefficient l1 (stand-in for the Hardy space norm)";
  rep.svd_cutoff_rel = 1e-12;

  for (int n : orders) {
    const std::size_t un = static_cast<std::size_t>(n);
    ToeplitzTruncation t = toeplitz_truncation(a_coeffs, n);
    std::vector<cplx> A = t.a;  // zgesdd destroys its input
    std::vector<double> s(un);
    std::vector<cplx> U(un * un), VT(un * un);
    lapack_int info =
        LAPACKE_zgesdd(LAPACK_ROW_MAJOR, 'S', n, n, A.data(), n, s.data(),
                       U.data(), n, VT.data(), n);
    if (info != 0) {
      throw std::runtime_error(
          "surjectivity_probe: factorization failed at order " +
          std::to_string(n) + " (zgesdd info = " + std::to_string(info) + ")");
    }

    std::vector<cplx> g(un, cplx(0.0, 0.0));
    for (int k = 0; k < n && k <= g_coeffs.N; ++k) {
      g[static_cast<std::size_t>(k)] = g_coeffs.at(k);
    }

    // Pseudo-inverse solve: f = sum_i v_i (u_i^* g) / sigma_i over the
    // singular values above the cutoff.
    const double cutoff = rep.svd_cutoff_rel * s[0];
    std::vector<cplx> coef(un, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < un; ++i) {
      if (s[i] <= cutoff) {
        rep.rank_deficient = true;
        continue;
      }
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < un; ++k) {
        acc += std::conj(U[k * un + i]) * g[k];
      }
      coef[i] = acc / s[i];
    }
    std::vector<cplx> f(un, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < un; ++i) {
      if (coef[i] == cplx(0.0, 0.0)) continue;
      for (std::size_t j = 0; j < un; ++j) {
        f[j] += std::conj(VT[i * un + j]) * coef[i];
      }
    }

    double resid2 = 0.0;
    for (std::size_t j = 0; j < un; ++j) {
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < un; ++k) {
        acc += t.a[j * un + k] * f[k];
      }
      resid2 += std::norm(acc - g[j]);
    }
    double l1 = 0.0;
    for (const cplx& v : f) l1 += std::abs(v);

    rep.sigma_min.push_back(s[un - 1]);
    rep.residual.push_back(std::sqrt(resid2));
    rep.coeff_l1.push_back(l1);
  }
  return rep;
}

}  // namespace htl
