// htl: command-line front end for the verification suites.
//
// Subcommands: symbol, bmolog, asym, fredholm.  Each runs one suite, emits a
// JSON or CSV report (stdout or --out), and exits 0 when every check in the
// suite passes.  A failing suite exits with its index: symbol 1, bmolog 2,
// asym 3, fredholm 4.  Configuration errors exit 64, unexpected internal
// errors 70.
//
// Config precedence: command-line flags > config file named by HTL_CONFIG >
// built-in defaults.  Reports never contain timestamps or machine state: the
// same config and seed produce byte-identical output.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "htl/fredholm.hpp"
#include "htl/hardy.hpp"
#include "htl/oscillation.hpp"
#include "htl/serialize.hpp"
#include "htl/singular_integrals.hpp"
#include "htl/symbol.hpp"

using htl::cplx;
using htl::ordered_json;

namespace {

constexpr int kExitConfig = 64;
constexpr int kExitInternal = 70;

struct RunConfig {
  long grid_size = 1 << 16;
  double window = 1e-5;
  int arc_depth = 20;
  double theta_decades = 3.0;  // config-file only; asym range [1e-3-decades, 1e-3]
  std::vector<int> orders = {64, 256, 1024, 4096};
  double rho = 4.0;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::string out;  // empty = stdout
};

[[noreturn]] void config_fail(const std::string& field, const std::string& why) {
  std::fprintf(stderr, "config error: %s: %s\n", field.c_str(), why.c_str());
  std::exit(kExitConfig);
}

bool is_pow2(long v) { return v > 0 && (v & (v - 1)) == 0; }

void validate(const RunConfig& c) {
  if (!is_pow2(c.grid_size) || c.grid_size < 1024)
    config_fail("grid_size", "must be a power of two >= 1024");
  if (!(c.window > 0.0) || c.window > 0.1)
    config_fail("window", "must lie in (0, 0.1]");
  if (c.arc_depth < 1) config_fail("arc_depth", "must be >= 1");
  if (!(c.theta_decades >= 3.0))
    config_fail("theta_decades", "need at least 3 decades");
  if (c.theta_decades > 10.0)
    config_fail("theta_decades", "more than 10 decades underflows the range");
  if (c.orders.empty()) config_fail("orders", "must not be empty");
  for (std::size_t i = 0; i < c.orders.size(); ++i) {
    if (c.orders[i] < 1) config_fail("orders", "orders must be >= 1");
    if (i > 0 && c.orders[i] <= c.orders[i - 1])
      config_fail("orders", "orders must strictly increase");
  }
  if (!(c.rho > 0.0)) config_fail("rho", "must be > 0");
  if (c.format != "csv" && c.format != "json")
    config_fail("format", "must be csv or json");
}

void load_config_file(RunConfig& c) {
  const char* path = std::getenv("HTL_CONFIG");
  if (path == nullptr || *path == '\0') return;
  std::ifstream in(path);
  if (!in) config_fail("HTL_CONFIG", std::string("cannot open ") + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    config_fail("HTL_CONFIG", std::string("parse failure: ") + e.what());
  }
  if (!j.is_object()) config_fail("HTL_CONFIG", "top level must be an object");
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    try {
      if (k == "grid_size") {
        c.grid_size = item.value().get<long>();
      } else if (k == "window") {
        c.window = item.value().get<double>();
      } else if (k == "arc_depth") {
        c.arc_depth = item.value().get<int>();
      } else if (k == "theta_decades") {
        c.theta_decades = item.value().get<double>();
      } else if (k == "orders") {
        c.orders = item.value().get<std::vector<int>>();
      } else if (k == "rho") {
        c.rho = item.value().get<double>();
      } else if (k == "seed") {
        c.seed = item.value().get<std::uint64_t>();
      } else if (k == "format") {
        c.format = item.value().get<std::string>();
      } else if (k == "out") {
        c.out = item.value().get<std::string>();
      } else {
        config_fail("HTL_CONFIG", "unknown key \"" + k + "\"");
      }
    } catch (const nlohmann::json::exception& e) {
      config_fail(k, std::string("bad value in config file: ") + e.what());
    }
  }
}

ordered_json config_json(const RunConfig& c) {
  ordered_json j;
  j["grid_size"] = c.grid_size;
  j["window"] = c.window;
  j["arc_depth"] = c.arc_depth;
  j["theta_decades"] = c.theta_decades;
  j["orders"] = c.orders;
  j["rho"] = c.rho;
  j["seed"] = c.seed;
  j["format"] = c.format;
  return j;
}

std::string config_comment(const RunConfig& c) {
  return "# config " + config_json(c).dump() + "\n";
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(c.out, std::ios::binary);
  if (!out) config_fail("out", "cannot open " + c.out + " for writing");
  out << text;
}

std::string json_doc(const ordered_json& j) { return j.dump(2) + "\n"; }

// ---- symbol suite ----------------------------------------------------------

int cmd_symbol(const RunConfig& cfg) {
  if (cfg.grid_size < 4096)
    config_fail("grid_size", "the winding check needs at least 4096 samples");
  const int n = static_cast<int>(cfg.grid_size);

  auto sym = [](const htl::CirclePoint& p) {
    return htl::symbol_circle(p.vartheta);
  };
  htl::GridFunction grid = htl::sample_circle(sym, n, cfg.window);

  double mod_err = 0.0;
  for (int j = 0; j < n; ++j) {
    if (grid.flagged[j]) continue;
    mod_err = std::max(mod_err, std::abs(std::abs(grid.values[j]) - 1.0));
  }
  const int winding = htl::winding_number(grid);

  auto ap = [](const htl::CirclePoint& p) {
    return htl::a_plus_circle(p.vartheta);
  };
  htl::GridFunction apg = htl::sample_circle(ap, n, cfg.window);
  const int kmax = 32;
  htl::FourierCoeffs c =
      htl::fourier_coeffs(apg, kmax, ap, htl::FourierRefineOpts{});

  double coeff_err = 0.0, coanalytic = 0.0;
  ordered_json coeff_rows = ordered_json::array();
  std::string coeff_csv = "k,measured_re,measured_im,oracle_re,oracle_im,abs_err\n";
  for (int k = 0; k <= kmax; ++k) {
    const cplx oracle =
        k == 0 ? cplx(1.0, 0.0) : cplx((k % 2 == 0 ? 1.0 : -1.0) / k, 0.0);
    const double err = std::abs(c.at(k) - oracle);
    coeff_err = std::max(coeff_err, err);
    ordered_json row;
    row["k"] = k;
    row["measured"] = {c.at(k).real(), c.at(k).imag()};
    row["oracle"] = {oracle.real(), oracle.imag()};
    row["abs_err"] = err;
    coeff_rows.push_back(std::move(row));
    coeff_csv += std::to_string(k) + "," + htl::fmt_g17(c.at(k).real()) + "," +
                 htl::fmt_g17(c.at(k).imag()) + "," +
                 htl::fmt_g17(oracle.real()) + "," +
                 htl::fmt_g17(oracle.imag()) + "," + htl::fmt_g17(err) + "\n";
  }
  for (int k = -kmax; k < 0; ++k)
    coanalytic = std::max(coanalytic, std::abs(c.at(k)));

  ordered_json samples = ordered_json::array();
  std::string samples_csv = "theta,re,im\n";
  const int stride = n / 64;
  for (int i = 0; i < 64; ++i) {
    const int j = i * stride;
    if (grid.flagged[j]) continue;
    ordered_json row;
    row["theta"] = grid.theta(j);
    row["re"] = grid.values[j].real();
    row["im"] = grid.values[j].imag();
    samples.push_back(std::move(row));
    samples_csv += htl::fmt_g17(grid.theta(j)) + "," +
                   htl::fmt_g17(grid.values[j].real()) + "," +
                   htl::fmt_g17(grid.values[j].imag()) + "\n";
  }

  const double coeff_tol = 1e-6, mod_tol = 1e-10;
  const bool coeff_ok = coeff_err <= coeff_tol && coanalytic <= coeff_tol;
  const bool mod_ok = mod_err <= mod_tol;
  const bool winding_ok = winding == 0;
  const bool pass = coeff_ok && mod_ok && winding_ok;

  if (cfg.format == "json") {
    ordered_json j;
    j["schema_version"] = "1";
    j["command"] = "symbol";
    j["config"] = config_json(cfg);
    j["coefficients"] = std::move(coeff_rows);
    j["coeff_max_err"] = coeff_err;
    j["coanalytic_max"] = coanalytic;
    j["coeff_tol"] = coeff_tol;
    j["modulus_max_err"] = mod_err;
    j["modulus_tol"] = mod_tol;
    j["winding"] = winding;
    j["samples"] = std::move(samples);
    j["pass"] = pass;
    emit(cfg, json_doc(j));
  } else {
    std::string out = "# htl symbol schema_version=1\n" + config_comment(cfg);
    out += "# coefficients\n" + coeff_csv;
    out += "# samples\n" + samples_csv;
    out += "# summary\nname,value,pass\n";
    out += "coeff_max_err," + htl::fmt_g17(coeff_err) + "," +
           (coeff_ok ? "1" : "0") + "\n";
    out += "modulus_max_err," + htl::fmt_g17(mod_err) + "," +
           (mod_ok ? "1" : "0") + "\n";
    out += "winding," + std::to_string(winding) + "," +
           (winding_ok ? "1" : "0") + "\n";
    out += std::string("pass,") + (pass ? "1" : "0") + "," +
           (pass ? "1" : "0") + "\n";
    emit(cfg, out);
  }
  return pass ? 0 : 1;
}

// ---- bmolog suite ----------------------------------------------------------

struct SupScan {
  double norm = 0.0;
  htl::Arc arg_sup;
  double norm_raw = 0.0;
  htl::Arc arg_sup_raw;
};

void scan_row(SupScan& s, const htl::ArcRow& r) {
  if (r.weighted > s.norm) {
    s.norm = r.weighted;
    s.arg_sup = r.arc;
  }
  if (r.weighted_raw > s.norm_raw) {
    s.norm_raw = r.weighted_raw;
    s.arg_sup_raw = r.arc;
  }
}

int cmd_bmolog(const RunConfig& cfg) {
  const int depth = cfg.arc_depth;
  std::vector<htl::Arc> dyad = htl::dyadic_arcs(2 * depth);
  const std::size_t n_dyad_base =
      std::min<std::size_t>(dyad.size(), static_cast<std::size_t>(depth));
  std::vector<htl::Arc> family = dyad;
  std::vector<htl::Arc> rnd = htl::random_arcs(200, cfg.seed);
  family.insert(family.end(), rnd.begin(), rnd.end());

  struct Fn {
    const char* name;
    htl::ArcFn f;
  };
  const std::vector<Fn> fns = {
      {"re_log_a_plus",
       [](double vt) {
         return cplx(std::log(std::abs(htl::a_plus_circle(vt))), 0.0);
       }},
      {"im_log_a",
       [](double vt) { return cplx(std::arg(htl::symbol_circle(vt)), 0.0); }},
      {"re_qa", [](double vt) { return cplx(htl::qa_circle(vt).real(), 0.0); }},
      {"im_qa", [](double vt) { return cplx(htl::qa_circle(vt).imag(), 0.0); }},
  };

  bool pass = true;
  ordered_json jfns;
  std::string csv = "# htl bmolog schema_version=1\n" + config_comment(cfg);
  std::string sup_csv =
      "function,norm,norm_doubled,rel_change,stable,norm_raw\n";

  for (const Fn& fn : fns) {
    htl::BmoLogResult full = htl::bmo_log_norm(fn.f, family);
    // The base-depth family is a sub-family: its sups come from the same rows.
    SupScan base;
    for (std::size_t i = 0; i < n_dyad_base; ++i) scan_row(base, full.rows[i]);
    for (std::size_t i = dyad.size(); i < full.rows.size(); ++i)
      scan_row(base, full.rows[i]);

    const bool finite = std::isfinite(base.norm) && std::isfinite(full.norm);
    const double rel_change =
        base.norm > 0.0 ? (full.norm - base.norm) / base.norm : 0.0;
    const bool stable = finite && std::abs(rel_change) <= 0.05;
    pass = pass && stable;

    if (cfg.format == "json") {
      ordered_json jf;
      jf["norm"] = base.norm;
      jf["arg_sup"] = {{"theta_left", base.arg_sup.theta_left},
                       {"theta_right", base.arg_sup.theta_right}};
      jf["norm_raw"] = base.norm_raw;
      jf["arg_sup_raw"] = {{"theta_left", base.arg_sup_raw.theta_left},
                           {"theta_right", base.arg_sup_raw.theta_right}};
      jf["norm_doubled"] = full.norm;
      jf["rel_change"] = rel_change;
      jf["stable"] = stable;
      ordered_json rows = ordered_json::array();
      for (const htl::ArcRow& r : full.rows) rows.push_back(htl::arc_row_to_json(r));
      jf["rows"] = std::move(rows);
      jfns[fn.name] = std::move(jf);
    } else {
      csv += std::string("# function ") + fn.name + "\n";
      csv += htl::arc_rows_to_csv(full.rows);
      sup_csv += std::string(fn.name) + "," + htl::fmt_g17(base.norm) + "," +
                 htl::fmt_g17(full.norm) + "," + htl::fmt_g17(rel_change) +
                 "," + (stable ? "1" : "0") + "," + htl::fmt_g17(base.norm_raw) +
                 "\n";
    }
  }

  if (cfg.format == "json") {
    ordered_json j;
    j["schema_version"] = "1";
    j["command"] = "bmolog";
    j["config"] = config_json(cfg);
    j["stability_tol"] = 0.05;
    j["functions"] = std::move(jfns);
    j["pass"] = pass;
    emit(cfg, json_doc(j));
  } else {
    csv += "# sups\n" + sup_csv;
    csv += std::string("# pass ") + (pass ? "1" : "0") + "\n";
    emit(cfg, csv);
  }
  return pass ? 0 : 2;
}

// ---- asym suite ------------------------------------------------------------

int cmd_asym(const RunConfig& cfg) {
  const double theta_max = 1e-3;
  const double theta_min = theta_max * std::pow(10.0, -cfg.theta_decades);
  const int points = static_cast<int>(std::lround(cfg.theta_decades * 8)) + 1;
  const std::vector<std::string> names = {"d-lna", "d-ilna", "I1",  "i2",
                                          "ddq",   "dreq",   "diq"};

  bool pass = true;
  ordered_json checks = ordered_json::array();
  std::string csv = "# htl asym schema_version=1\n" + config_comment(cfg);
  for (const std::string& name : names) {
    htl::AsymptoticCheck c =
        htl::asym_check(name, theta_min, theta_max, points, cfg.rho);
    pass = pass && c.pass;
    if (cfg.format == "json") {
      ordered_json jc = htl::asym_to_json(c);
      ordered_json rows = ordered_json::array();
      for (std::size_t i = 0; i < c.theta_grid.size(); ++i) {
        rows.push_back({{"theta", c.theta_grid[i]},
                        {"abs_lhs", std::abs(c.lhs[i])},
                        {"abs_model", std::abs(c.model[i])},
                        {"ratio", c.ratio[i]}});
      }
      jc["rows"] = std::move(rows);
      checks.push_back(std::move(jc));
    } else {
      char head[256];
      std::snprintf(head, sizeof head,
                    "# check %s rho=%g ratio_min=%.17g ratio_max=%.17g "
                    "log_variation=%.17g sign_ok=%d calibrated=%.17g pass=%d\n",
                    c.name.c_str(), c.rho, c.ratio_min, c.ratio_max,
                    c.log_variation, int(c.sign_ok), c.calibrated_constant,
                    int(c.pass));
      csv += head;
      csv += htl::asym_to_csv(c);
    }
  }

  if (cfg.format == "json") {
    ordered_json j;
    j["schema_version"] = "1";
    j["command"] = "asym";
    j["config"] = config_json(cfg);
    j["theta_min"] = theta_min;
    j["theta_max"] = theta_max;
    j["checks"] = std::move(checks);
    j["pass"] = pass;
    emit(cfg, json_doc(j));
  } else {
    csv += std::string("# pass ") + (pass ? "1" : "0") + "\n";
    emit(cfg, csv);
  }
  return pass ? 0 : 3;
}

// ---- fredholm suite --------------------------------------------------------

int cmd_fredholm(const RunConfig& cfg) {
  const int n = static_cast<int>(cfg.grid_size);
  const int N = n / 2 - 1;
  if (cfg.orders.back() > N / 2)
    config_fail("orders",
                "largest order exceeds half the symbol bandwidth for this "
                "grid_size (max " +
                    std::to_string(N / 2) + ")");

  auto sym = [](const htl::CirclePoint& p) {
    return htl::symbol_circle(p.vartheta);
  };
  htl::GridFunction sg = htl::sample_circle(sym, n, cfg.window);
  htl::FourierCoeffs a =
      htl::fourier_coeffs(sg, N, sym, htl::FourierRefineOpts{});

  auto gfn = [](const htl::CirclePoint& p) {
    return htl::g_circle(p.vartheta);
  };
  htl::FourierRefineOpts gopts;
  gopts.bin_primitive = [](double x1, double x2) {
    return htl::g_bin_primitive(x1, x2);
  };
  htl::GridFunction gg = htl::sample_circle(gfn, n, cfg.window);
  htl::FourierCoeffs gc = htl::fourier_coeffs(gg, N, gfn, gopts);

  // In-range control target: the image of z^2, coefficients a_{k-2}.
  htl::FourierCoeffs ctrl(N);
  for (int k = 0; k <= N; ++k) ctrl.at(k) = a.at(k - 2);

  htl::ProbeReport target = htl::surjectivity_probe(a, gc, cfg.orders);
  htl::ProbeReport control = htl::surjectivity_probe(a, ctrl, cfg.orders);
  target.grid_n = n;
  target.window = cfg.window;
  control.grid_n = n;
  control.window = cfg.window;

  const double resid_tol = 1e-4;
  bool resid_ok = true;
  for (double r : target.residual) resid_ok = resid_ok && r <= resid_tol;
  for (double r : control.residual) resid_ok = resid_ok && r <= resid_tol;

  bool l1_growing = true, ratio_dominates = true, sigma_decreasing = true;
  ordered_json steps = ordered_json::array();
  std::string steps_csv = "from,to,target_ratio,control_ratio,margin\n";
  for (std::size_t i = 0; i + 1 < cfg.orders.size(); ++i) {
    const double tr = target.coeff_l1[i + 1] / target.coeff_l1[i];
    const double cr = control.coeff_l1[i + 1] / control.coeff_l1[i];
    l1_growing = l1_growing && target.coeff_l1[i + 1] > target.coeff_l1[i];
    ratio_dominates = ratio_dominates && tr > cr;
    sigma_decreasing =
        sigma_decreasing && target.sigma_min[i + 1] < target.sigma_min[i];
    steps.push_back({{"from", cfg.orders[i]},
                     {"to", cfg.orders[i + 1]},
                     {"target_ratio", tr},
                     {"control_ratio", cr},
                     {"margin", tr - cr}});
    steps_csv += std::to_string(cfg.orders[i]) + "," +
                 std::to_string(cfg.orders[i + 1]) + "," + htl::fmt_g17(tr) +
                 "," + htl::fmt_g17(cr) + "," + htl::fmt_g17(tr - cr) + "\n";
  }
  const bool pass =
      resid_ok && l1_growing && ratio_dominates && sigma_decreasing;

  if (cfg.format == "json") {
    ordered_json j;
    j["schema_version"] = "1";
    j["command"] = "fredholm";
    j["config"] = config_json(cfg);
    j["target"] = htl::probe_to_json(target);
    j["control"] = htl::probe_to_json(control);
    j["steps"] = std::move(steps);
    j["residual_tol"] = resid_tol;
    j["residual_ok"] = resid_ok;
    j["l1_strictly_growing"] = l1_growing;
    j["ratio_dominates_control"] = ratio_dominates;
    j["sigma_strictly_decreasing"] = sigma_decreasing;
    j["insufficient_data"] = target.insufficient_data;
    j["evidence_label"] = target.evidence_label;
    j["pass"] = pass;
    emit(cfg, json_doc(j));
  } else {
    std::string csv = "# htl fredholm schema_version=1\n" + config_comment(cfg);
    csv += "# target\n" + htl::probe_to_csv(target);
    csv += "# control\n" + htl::probe_to_csv(control);
    csv += "# steps\n" + steps_csv;
    char line[256];
    std::snprintf(line, sizeof line,
                  "# residual_ok=%d l1_strictly_growing=%d "
                  "ratio_dominates_control=%d sigma_strictly_decreasing=%d "
                  "insufficient_data=%d pass=%d\n",
                  int(resid_ok), int(l1_growing), int(ratio_dominates),
                  int(sigma_decreasing), int(target.insufficient_data),
                  int(pass));
    csv += line;
    csv += "# " + target.evidence_label + "\n";
    emit(cfg, csv);
  }
  return pass ? 0 : 4;
}

void add_common_flags(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--grid-size", cfg.grid_size,
                  "circle grid size (power of two >= 1024)");
  sub->add_option("--window", cfg.window,
                  "exclusion window around the singular point, radians");
  sub->add_option("--arc-depth", cfg.arc_depth, "dyadic arc family depth");
  sub->add_option("--orders", cfg.orders,
                  "truncation orders, strictly increasing")
      ->delimiter(',');
  sub->add_option("--rho", cfg.rho, "asymptotic-check tolerance factor");
  sub->add_option("--seed", cfg.seed, "random-arc seed");
  sub->add_option("--format", cfg.format, "report format: csv or json");
  sub->add_option("--out", cfg.out, "output path (default: stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  load_config_file(cfg);

  CLI::App app{"Hardy-space Toeplitz verification suites"};
  app.require_subcommand(1);
  CLI::App* sub_symbol = app.add_subcommand(
      "symbol", "symbol samples, Fourier coefficients, modulus, winding");
  CLI::App* sub_bmolog = app.add_subcommand(
      "bmolog", "logarithmic BMO sups over dyadic and random arc families");
  CLI::App* sub_asym =
      app.add_subcommand("asym", "small-angle asymptotic ratio checks");
  CLI::App* sub_fredholm = app.add_subcommand(
      "fredholm", "finite-section kernel and surjectivity probes");
  for (CLI::App* s : {sub_symbol, sub_bmolog, sub_asym, sub_fredholm})
    add_common_flags(s, cfg);

  CLI11_PARSE(app, argc, argv);
  validate(cfg);

  try {
    if (sub_symbol->parsed()) return cmd_symbol(cfg);
    if (sub_bmolog->parsed()) return cmd_bmolog(cfg);
    if (sub_asym->parsed()) return cmd_asym(cfg);
    return cmd_fredholm(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInternal;
  }
}
