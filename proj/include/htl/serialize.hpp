#pragma once

// Report serialization: JSON documents (schema_version "1") and the CSV
// layouts documented in the README.  Doubles go through %.17g in CSV so a
// round-trip preserves the value; JSON numbers use the library's
// shortest-round-trip encoding.  All writers are deterministic: same
// inputs, byte-identical output.

#include <cstdio>
#include <string>
#include <vector>

#include "json.hpp"

#include "htl/fredholm.hpp"
#include "htl/hardy.hpp"
#include "htl/oscillation.hpp"
#include "htl/singular_integrals.hpp"

namespace htl {

using ordered_json = nlohmann::ordered_json;

inline std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// ---- Fourier coefficients -------------------------------------------------

// {"schema_version":"1","max_index":N,"coefficients":[[re,im],...]} with the
// pairs running over indices -N..N.
inline ordered_json coeffs_to_json(const FourierCoeffs& c) {
  ordered_json j;
  j["schema_version"] = "1";
  j["max_index"] = c.N;
  ordered_json arr = ordered_json::array();
  for (int k = -c.N; k <= c.N; ++k) {
    arr.push_back({c.at(k).real(), c.at(k).imag()});
  }
  j["coefficients"] = std::move(arr);
  return j;
}

inline FourierCoeffs coeffs_from_json(const ordered_json& j) {
  const int N = j.at("max_index").get<int>();
  FourierCoeffs c(N);
  const auto& arr = j.at("coefficients");
  if (static_cast<int>(arr.size()) != 2 * N + 1) {
    throw std::invalid_argument(
        "coeffs_from_json: coefficient array size does not match max_index");
  }
  for (int k = -N; k <= N; ++k) {
    const auto& p = arr.at(static_cast<std::size_t>(k + N));
    c.at(k) = cplx(p.at(0).get<double>(), p.at(1).get<double>());
  }
  return c;
}

// ---- arc tables -----------------------------------------------------------

inline ordered_json arc_row_to_json(const ArcRow& r) {
  ordered_json j;
  j["theta_left"] = r.arc.theta_left;
  j["theta_right"] = r.arc.theta_right;
  j["length"] = r.arc.length();
  j["mo"] = r.mo;
  j["weight"] = r.weight;
  j["weighted"] = r.weighted;
  j["weight_raw"] = r.weight_raw;
  j["weighted_raw"] = r.weighted_raw;
  return j;
}

inline std::string arc_rows_to_csv(const std::vector<ArcRow>& rows) {
  std::string out = "theta_left,theta_right,length,mo,weight,weighted\n";
  for (const ArcRow& r : rows) {
    out += fmt_g17(r.arc.theta_left) + "," + fmt_g17(r.arc.theta_right) +
           "," + fmt_g17(r.arc.length()) + "," + fmt_g17(r.mo) + "," +
           fmt_g17(r.weight) + "," + fmt_g17(r.weighted) + "\n";
  }
  return out;
}

inline ordered_json bmo_log_to_json(const BmoLogResult& r) {
  ordered_json j;
  j["schema_version"] = "1";
  j["norm"] = r.norm;
  j["arg_sup"] = ordered_json{{"theta_left", r.arg_sup.theta_left},
                              {"theta_right", r.arg_sup.theta_right}};
  j["norm_raw"] = r.norm_raw;
  j["arg_sup_raw"] = ordered_json{{"theta_left", r.arg_sup_raw.theta_left},
                                  {"theta_right", r.arg_sup_raw.theta_right}};
  ordered_json rows = ordered_json::array();
  for (const ArcRow& row : r.rows) rows.push_back(arc_row_to_json(row));
  j["rows"] = std::move(rows);
  return j;
}

// ---- asymptotic checks ----------------------------------------------------

inline std::string asym_to_csv(const AsymptoticCheck& c) {
  std::string out = "theta,abs_lhs,abs_model,ratio\n";
  for (std::size_t i = 0; i < c.theta_grid.size(); ++i) {
    out += fmt_g17(c.theta_grid[i]) + "," + fmt_g17(std::abs(c.lhs[i])) +
           "," + fmt_g17(std::abs(c.model[i])) + "," + fmt_g17(c.ratio[i]) +
           "\n";
  }
  return out;
}

inline ordered_json asym_to_json(const AsymptoticCheck& c) {
  ordered_json j;
  j["schema_version"] = "1";
  j["name"] = c.name;
  j["rho"] = c.rho;
  j["theta_min"] = c.theta_min_used;
  j["theta_max"] = c.theta_max_used;
  j["range_shrunk"] = c.range_shrunk;
  j["points"] = c.theta_grid.size();
  j["ratio_min"] = c.ratio_min;
  j["ratio_max"] = c.ratio_max;
  j["log_variation"] = c.log_variation;
  j["sign_ok"] = c.sign_ok;
  j["calibrated_constant"] = c.calibrated_constant;
  j["pass"] = c.pass;
  return j;
}

// ---- Fredholm probes ------------------------------------------------------

inline std::string probe_to_csv(const ProbeReport& r) {
  std::string out = "n,sigma_min,residual,coeff_l1\n";
  for (std::size_t i = 0; i < r.orders.size(); ++i) {
    out += std::to_string(r.orders[i]) + "," + fmt_g17(r.sigma_min[i]) + "," +
           fmt_g17(r.residual[i]) + "," + fmt_g17(r.coeff_l1[i]) + "\n";
  }
  return out;
}

inline ordered_json probe_to_json(const ProbeReport& r) {
  ordered_json j;
  j["schema_version"] = "1";
  j["orders"] = r.orders;
  j["sigma_min"] = r.sigma_min;
  j["residual"] = r.residual;
  j["coeff_l1"] = r.coeff_l1;
  j["rank_deficient"] = r.rank_deficient;
  j["insufficient_data"] = r.insufficient_data;
  j["evidence_label"] = r.evidence_label;
  j["norm_proxy"] = r.norm_proxy;
  ordered_json meta;
  meta["grid_n"] = r.grid_n;
  meta["window"] = r.window;
  meta["svd_cutoff_rel"] = r.svd_cutoff_rel;
  j["metadata"] = std::move(meta);
  return j;
}

}  // namespace htl
