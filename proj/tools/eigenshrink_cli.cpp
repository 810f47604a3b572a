// Command-line surface for the shrinkage library: shrink eigenvalue lists,
// tabulate shrinker curves, report slopes/shifts/PPI, run Monte Carlo
// studies, and self-check the closed forms. Emits plot-ready CSV (default)
// or JSON. Exit status: 0 success, 1 usage error, 2 numeric/capacity error.

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eigenshrink/csvfmt.hpp"
#include "eigenshrink/errors.hpp"
#include "eigenshrink/loss.hpp"
#include "eigenshrink/loss_kernel.hpp"
#include "eigenshrink/mat2.hpp"
#include "eigenshrink/rng.hpp"
#include "eigenshrink/shrinker.hpp"
#include "eigenshrink/simulation.hpp"
#include "eigenshrink/spectral.hpp"

namespace es = eigenshrink;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError("cannot parse number '" + s + "' for " + what);
  }
}

std::vector<double> parse_double_list(const std::string& s,
                                      const std::string& what) {
  std::vector<double> out;
  for (const std::string& tok : split(s, ',')) {
    const std::string t = trim(tok);
    if (t.empty()) continue;
    out.push_back(parse_double(t, what));
  }
  return out;
}

// Loss lists use the paper-faithful ids, which contain commas ("F,1").
// Tokens F/O/N re-join with the following digit: "F,1,st,O,2" parses to
// {F,1}, {st}, {O,2}.
std::vector<es::LossId> parse_losses(const std::string& spec) {
  if (trim(spec) == "all") {
    return {es::LossId::all().begin(), es::LossId::all().end()};
  }
  std::vector<es::LossId> out;
  const std::vector<std::string> toks = split(spec, ',');
  for (std::size_t i = 0; i < toks.size(); ++i) {
    std::string t = trim(toks[i]);
    if (t.empty()) continue;
    if ((t == "F" || t == "O" || t == "N") && i + 1 < toks.size()) {
      t += "," + trim(toks[++i]);
    }
    const auto id = es::LossId::parse(t);
    if (!id) throw UsageError("unknown loss id '" + t + "'");
    out.push_back(*id);
  }
  if (out.empty()) throw UsageError("no losses selected");
  return out;
}

es::LossId parse_single_loss(const std::string& s) {
  const auto id = es::LossId::parse(trim(s));
  if (!id) throw UsageError("unknown loss id '" + s + "'");
  return *id;
}

std::vector<double> read_value_column(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open values file '" + path + "'");
  std::vector<double> out;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (!t.empty() && t.back() == ',') t.pop_back();
    if (t.empty()) continue;
    try {
      std::size_t pos = 0;
      const double v = std::stod(t, &pos);
      if (pos != t.size()) throw std::invalid_argument(t);
      out.push_back(v);
    } catch (const std::exception&) {
      if (first) {  // tolerate a header row
        first = false;
        continue;
      }
      throw UsageError("malformed CSV line '" + line + "' in " + path);
    }
    first = false;
  }
  if (out.empty()) throw UsageError("no values found in " + path);
  return out;
}

es::TableShrinker read_shrinker_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open shrinker table '" + path + "'");
  std::vector<double> lam, eta;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto cols = split(t, ',');
    if (cols.size() < 2) throw UsageError("shrinker table needs two columns");
    try {
      lam.push_back(std::stod(trim(cols[0])));
      eta.push_back(std::stod(trim(cols[1])));
    } catch (const std::exception&) {
      if (first) {
        first = false;
        continue;
      }
      throw UsageError("malformed shrinker table line '" + line + "'");
    }
    first = false;
  }
  try {
    return es::TableShrinker(std::move(lam), std::move(eta));
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad shrinker table: ") + e.what());
  }
}

// --- output --------------------------------------------------------------

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;  // null = empty field

  void add_row(std::vector<json> r) { rows.push_back(std::move(r)); }
};

std::string field_to_csv(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return es::format_double(v.get<double>());
}

void write_table(const Table& t, const std::string& format,
                 const std::string& out_path) {
  std::ostringstream buf;
  if (format == "csv") {
    es::CsvWriter w(buf);
    w.row(t.columns);
    for (const auto& row : t.rows) {
      std::vector<std::string> fields;
      fields.reserve(row.size());
      for (const auto& v : row) fields.push_back(field_to_csv(v));
      w.row(fields);
    }
  } else {
    json arr = json::array();
    for (const auto& row : t.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) {
        obj[t.columns[i]] = row[i];
      }
      arr.push_back(std::move(obj));
    }
    buf << arr.dump(2) << '\n';
  }
  if (out_path.empty() || out_path == "-") {
    std::cout << buf.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw UsageError("cannot open output file '" + out_path + "'");
    out << buf.str();
  }
}

// --- json config ----------------------------------------------------------

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  try {
    json j;
    in >> j;
    if (!j.is_object()) throw UsageError("config must be a JSON object");
    return j;
  } catch (const json::exception& e) {
    throw UsageError("malformed JSON config: " + std::string(e.what()));
  }
}

std::string config_string(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  if (v.is_array()) {
    std::string out;
    for (const auto& e : v) {
      if (!out.empty()) out += ",";
      out += config_string(e);
    }
    return out;
  }
  throw UsageError("unsupported config value " + v.dump());
}

// Config file entries override flags; flags override defaults.
void apply_config(const json& cfg,
                  const std::map<std::string, std::function<void(
                      const std::string&)>>& setters) {
  for (const auto& [key, value] : cfg.items()) {
    const auto it = setters.find(key);
    if (it == setters.end()) {
      throw UsageError("unknown config key '" + key + "'");
    }
    it->second(config_string(value));
  }
}

// --- subcommands ----------------------------------------------------------

const char* method_label(const es::ShrinkerResult& r) {
  if (r.in_bulk) return "bulk";
  return r.method_used == es::ShrinkerMethod::closed_form ? "closed"
                                                          : "numeric";
}

es::ShrinkerMethod parse_method(const std::string& m) {
  if (m == "auto") return es::ShrinkerMethod::automatic;
  if (m == "closed") return es::ShrinkerMethod::closed_form;
  if (m == "numeric") return es::ShrinkerMethod::numeric;
  throw UsageError("unknown method '" + m + "' (auto|closed|numeric)");
}

int cmd_shrink(const std::string& loss_s, double gamma,
               const std::string& values_s, const std::string& values_file,
               const std::string& method_s, const std::string& format,
               const std::string& out_path) {
  const es::LossId loss = parse_single_loss(loss_s);
  const es::ShrinkerMethod method = parse_method(method_s);
  std::vector<double> values;
  if (!values_file.empty()) {
    values = read_value_column(values_file);
  }
  if (!values_s.empty()) {
    const auto more = parse_double_list(values_s, "--values");
    values.insert(values.end(), more.begin(), more.end());
  }
  if (values.empty()) throw UsageError("no eigenvalues given (--values or "
                                       "--values-file)");
  Table t;
  t.columns = {"lambda", "ell", "cos2", "eta", "method"};
  for (double lam : values) {
    const es::ShrinkerResult r = es::shrink(lam, gamma, loss, method);
    if (r.in_bulk) {
      t.add_row({lam, nullptr, nullptr, r.eta, "bulk"});
    } else {
      const double ell = es::ell_of_lambda(lam, gamma);
      t.add_row({lam, ell, es::cos2_of_ell(ell, gamma), r.eta,
                 method_label(r)});
    }
  }
  write_table(t, format, out_path);
  return 0;
}

int cmd_tabulate(const std::string& losses_s, double gamma, double grid_min,
                 double grid_max, int grid_count, const std::string& scale,
                 const std::string& format, const std::string& out_path) {
  const std::vector<es::LossId> losses = parse_losses(losses_s);
  if (!(grid_min > 0.0)) throw UsageError("--grid-min must be positive");
  if (grid_count < 1) throw UsageError("--grid-count must be >= 1");
  if (grid_count > 1 && !(grid_max > grid_min)) {
    throw UsageError("--grid-max must exceed --grid-min");
  }
  std::vector<double> grid(grid_count);
  for (int i = 0; i < grid_count; ++i) {
    const double t =
        grid_count == 1 ? 0.0 : static_cast<double>(i) / (grid_count - 1);
    if (scale == "log") {
      grid[i] = std::exp(std::log(grid_min) +
                         t * (std::log(grid_max) - std::log(grid_min)));
    } else if (scale == "linear") {
      grid[i] = grid_min + t * (grid_max - grid_min);
    } else {
      throw UsageError("--grid-scale must be linear or log");
    }
  }
  Table t;
  t.columns = {"lambda"};
  for (const auto& l : losses) t.columns.push_back(l.name());
  std::vector<std::vector<es::ShrinkPoint>> cols;
  cols.reserve(losses.size());
  for (const auto& l : losses) cols.push_back(es::tabulate(l, gamma, grid));
  for (int i = 0; i < grid_count; ++i) {
    std::vector<json> row{grid[i]};
    for (const auto& c : cols) row.push_back(c[i].result.eta);
    t.add_row(std::move(row));
  }
  write_table(t, format, out_path);
  return 0;
}

int cmd_report(const std::string& what, const std::string& losses_s,
               double gamma, double at_lambda, double ell,
               const std::string& format, const std::string& out_path) {
  const std::vector<es::LossId> losses = parse_losses(losses_s);
  Table t;
  if (what == "slopes") {
    t.columns = {"loss", "slope", "slope_kind", "slope_hat"};
    for (const auto& l : losses) {
      const es::Approx s = es::asy_slope(l, gamma);
      t.add_row({l.name(), s.value, s.approximate ? "approx" : "exact",
                 es::asy_slope_hat(l, gamma, at_lambda)});
    }
  } else if (what == "shifts") {
    t.columns = {"loss", "shift", "shift_kind"};
    for (const auto& l : losses) {
      try {
        const es::Approx s = es::asy_shift(l, gamma, at_lambda);
        t.add_row({l.name(), s.value, s.approximate ? "approx" : "closed"});
      } catch (const es::shift_undefined_error&) {
        t.add_row({l.name(), nullptr, "undefined"});
      }
    }
  } else if (what == "ppi") {
    t.columns = {"loss", "ppi"};
    for (const auto& l : losses) {
      t.add_row({l.name(), es::ppi(l, ell, gamma)});
    }
  } else {
    throw UsageError("--what must be slopes, shifts or ppi");
  }
  write_table(t, format, out_path);
  return 0;
}

int cmd_simulate(es::SimConfig config, const std::string& losses_s,
                 const std::string& spikes_s, const std::string& shrinker_s,
                 const std::string& table_path, const std::string& format,
                 const std::string& out_path) {
  config.losses = losses_s.empty()
                      ? std::vector<es::LossId>{}
                      : parse_losses(losses_s);
  config.spikes = parse_double_list(spikes_s, "--spikes");
  if (shrinker_s == "optimal") {
    config.shrinker = es::ShrinkerKind::optimal;
  } else if (shrinker_s == "hard") {
    config.shrinker = es::ShrinkerKind::hard_threshold;
  } else if (shrinker_s == "custom") {
    config.shrinker = es::ShrinkerKind::custom;
    if (table_path.empty()) {
      throw UsageError("--shrinker custom needs --shrinker-table");
    }
    config.custom = read_shrinker_table(table_path);
  } else {
    throw UsageError("--shrinker must be optimal, hard or custom");
  }
  try {
    config.validate();
  } catch (const es::numeric_error&) {
    throw;  // capacity: exit 2
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const es::SimSummary s = es::run_study(config);
  Table t;
  t.columns = {"metric", "name", "mean", "se", "predicted", "rel_dev"};
  const auto push = [&](const std::string& metric, const std::string& name,
                        const es::MetricSummary& m) {
    t.add_row({metric, name, m.mean, m.se,
               std::isfinite(m.predicted) ? json(m.predicted) : json(),
               std::isfinite(m.rel_dev) ? json(m.rel_dev) : json()});
  };
  for (std::size_t i = 0; i < s.top_eigenvalues.size(); ++i) {
    push("lambda", std::to_string(i + 1), s.top_eigenvalues[i]);
  }
  for (std::size_t i = 0; i < s.cos2.size(); ++i) {
    push("cos2", std::to_string(i + 1), s.cos2[i]);
  }
  for (const auto& [loss, m] : s.losses) push("loss", loss.name(), m);
  push("oracle", "frobenius", s.oracle_frobenius);
  push("oracle", "stein", s.oracle_stein);
  write_table(t, format, out_path);
  return 0;
}

int cmd_selfcheck(bool inject_fault) {
  int failures = 0;
  const auto report = [&](const std::string& name, bool ok,
                          const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " " << name;
    if (!detail.empty()) std::cout << ": " << detail;
    std::cout << "\n";
    if (!ok) ++failures;
  };

  // Closed-form vs numeric optimizer, the 17 analytic formulas.
  {
    bool ok = true;
    std::string detail;
    for (const auto& loss : es::LossId::all()) {
      if (!es::has_closed_form(loss)) continue;
      for (double gamma : {0.1, 0.25, 0.5, 1.0}) {
        const double lo = es::bulk_edge_upper(gamma) + 0.01;
        for (int i = 0; i < 50 && ok; ++i) {
          const double lam =
              std::exp(std::log(lo) +
                       (std::log(100.0) - std::log(lo)) * i / 49.0);
          const double ell = es::ell_of_lambda(lam, gamma);
          double closed = es::shrink_closed_ell(ell, gamma, loss);
          if (inject_fault &&
              loss == es::LossId::norm_pivot(es::Norm::frobenius, 1)) {
            closed += 1e-3;  // test-only perturbation to prove detection
          }
          const double numeric = es::shrink_numeric_ell(ell, gamma, loss);
          const double tol = 1e-6 * std::max(1.0, closed);
          if (!(std::abs(closed - numeric) <= tol)) {
            ok = false;
            detail = "loss=" + loss.name() + " gamma=" +
                     es::format_double(gamma) + " lambda=" +
                     es::format_double(lam) + " closed=" +
                     es::format_double(closed) + " numeric=" +
                     es::format_double(numeric);
          }
        }
      }
    }
    report("closed-form agreement (17 formulas)", ok, detail);
  }

  // Bulk collapse: every loss returns exactly 1 below the bulk edge.
  {
    bool ok = true;
    std::string detail;
    es::SplitMix64 rng(7);
    for (int i = 0; i < 200 && ok; ++i) {
      const double gamma = 0.05 + 0.95 * rng.uniform01();
      const double lam = es::bulk_edge_upper(gamma) * rng.uniform01();
      for (const auto& loss : es::LossId::all()) {
        const es::ShrinkerResult r = es::shrink(lam, gamma, loss);
        if (r.eta != 1.0 || !r.in_bulk) {
          ok = false;
          detail = "loss=" + loss.name() + " lambda=" + es::format_double(lam);
          break;
        }
      }
    }
    report("bulk collapse", ok, detail);
  }

  // Shared formulas: eta*(F,1) == eta*(ent), eta*(F,2) == eta*(st).
  {
    bool ok = true;
    std::string detail;
    for (double gamma : {0.25, 1.0}) {
      for (double lam = es::bulk_edge_upper(gamma) + 0.1; lam < 50.0;
           lam *= 1.7) {
        const double f1 =
            es::shrink(lam, gamma, es::LossId::norm_pivot(es::Norm::frobenius, 1))
                .eta;
        const double ent =
            es::shrink(lam, gamma,
                       es::LossId::statistical(es::Statistical::entropy))
                .eta;
        const double f2 =
            es::shrink(lam, gamma, es::LossId::norm_pivot(es::Norm::frobenius, 2))
                .eta;
        const double st =
            es::shrink(lam, gamma,
                       es::LossId::statistical(es::Statistical::stein))
                .eta;
        if (std::abs(f1 - ent) > 1e-9 || std::abs(f2 - st) > 1e-9) {
          ok = false;
          detail = "lambda=" + es::format_double(lam);
        }
      }
    }
    report("shared-formula coincidences", ok, detail);
  }

  // Operator-loss debiasing: shrink(lambda(ell)) recovers ell.
  {
    bool ok = true;
    std::string detail;
    for (double gamma : {0.25, 1.0}) {
      for (double ell = es::phase_transition(gamma) + 0.05; ell < 100.0;
           ell *= 1.4) {
        const double lam = es::lambda_of_ell(ell, gamma);
        const double eta =
            es::shrink(lam, gamma, es::LossId::norm_pivot(es::Norm::op, 1)).eta;
        if (std::abs(eta - ell) > 1e-8 * std::max(1.0, ell)) {
          ok = false;
          detail = "ell=" + es::format_double(ell);
        }
      }
    }
    report("operator-loss debiasing", ok, detail);
  }

  std::cout << (failures == 0 ? "selfcheck OK" : "selfcheck FAILED") << "\n";
  return failures == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"eigenshrink: optimal eigenvalue shrinkage for spiked "
               "covariance estimation"};
  app.require_subcommand(0, 1);

  bool list_losses = false;
  app.add_flag("--list-losses", list_losses,
               "print the 26 loss ids and exit");

  // Common knobs, repeated per subcommand so each parses independently.
  struct Common {
    std::string format = "csv";
    std::string out;
    std::string config;
  };

  const auto add_common = [](CLI::App* cmd, Common& c) {
    cmd->add_option("--format", c.format, "output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", c.out, "output path (default stdout)");
    cmd->add_option("--config", c.config,
                    "JSON config file; its entries override flags");
  };

  // shrink
  auto* sh = app.add_subcommand("shrink", "shrink sample eigenvalues");
  Common sh_c;
  std::string sh_loss = "F,1", sh_values, sh_values_file, sh_method = "auto";
  double sh_gamma = 1.0;
  sh->add_option("--loss", sh_loss, "loss id (see --list-losses)");
  sh->add_option("--gamma", sh_gamma, "aspect ratio p/n in (0,1]");
  sh->add_option("--values", sh_values, "comma list of eigenvalues");
  sh->add_option("--values-file", sh_values_file, "one-column CSV of "
                 "eigenvalues");
  sh->add_option("--method", sh_method, "auto|closed|numeric");
  add_common(sh, sh_c);

  // tabulate
  auto* tb = app.add_subcommand("tabulate", "tabulate shrinker curves over a "
                                "lambda grid");
  Common tb_c;
  std::string tb_losses = "all", tb_scale = "linear";
  double tb_gamma = 1.0, tb_min = 4.0, tb_max = 10.0;
  int tb_count = 61;
  tb->add_option("--losses", tb_losses, "loss ids or 'all'");
  tb->add_option("--gamma", tb_gamma, "aspect ratio");
  tb->add_option("--grid-min", tb_min, "first lambda");
  tb->add_option("--grid-max", tb_max, "last lambda");
  tb->add_option("--grid-count", tb_count, "number of grid points");
  tb->add_option("--grid-scale", tb_scale, "linear|log");
  add_common(tb, tb_c);

  // report
  auto* rp = app.add_subcommand("report", "slopes, shifts and PPI tables");
  Common rp_c;
  std::string rp_what = "slopes", rp_losses = "all";
  double rp_gamma = 1.0, rp_at_lambda = 100.0, rp_ell = 1e4;
  rp->add_option("--what", rp_what, "slopes|shifts|ppi");
  rp->add_option("--losses", rp_losses, "loss ids or 'all'");
  rp->add_option("--gamma", rp_gamma, "aspect ratio");
  rp->add_option("--at-lambda", rp_at_lambda,
                 "evaluation point for finite-lambda slopes/shifts");
  rp->add_option("--ell", rp_ell, "spike strength for PPI");
  add_common(rp, rp_c);

  // simulate
  auto* sm = app.add_subcommand("simulate", "Monte Carlo validation study");
  Common sm_c;
  es::SimConfig sim;
  std::string sm_losses = "all", sm_spikes = "5", sm_shrinker = "optimal",
              sm_table;
  sm->add_option("--n", sim.n, "samples per replicate");
  sm->add_option("--p", sim.p, "dimension");
  sm->add_option("--spikes", sm_spikes, "comma list of population spikes "
                 "(may be empty)");
  sm->add_option("--reps", sim.replications, "replicate count");
  sm->add_option("--seed", sim.seed, "RNG seed");
  sm->add_option("--losses", sm_losses, "loss ids or 'all'");
  sm->add_option("--shrinker", sm_shrinker, "optimal|hard|custom");
  sm->add_option("--shrinker-table", sm_table,
                 "lambda,eta CSV for --shrinker custom");
  sm->add_option("--threads", sim.threads,
                 "worker threads (0: EIGENSHRINK_THREADS or all cores)");
  sm->add_flag("--allow-large", sim.allow_large,
               "lift the p<=2000 desk-scale ceiling");
  add_common(sm, sm_c);

  // selfcheck
  auto* sc = app.add_subcommand("selfcheck", "verify the 17 analytic "
                                "shrinkers against the numeric optimizer");
  bool sc_fault = false;
  sc->add_flag("--inject-fault", sc_fault,
               "perturb one formula to prove the check detects faults")
      ->group("");  // hidden: test-only

  try {
    app.parse(argc, argv);

    if (list_losses) {
      for (const auto& l : es::LossId::all()) std::cout << l.name() << "\n";
      return 0;
    }

    if (sh->parsed()) {
      if (!sh_c.config.empty()) {
        apply_config(load_config(sh_c.config),
                     {{"loss", [&](const std::string& v) { sh_loss = v; }},
                      {"gamma",
                       [&](const std::string& v) {
                         sh_gamma = parse_double(v, "gamma");
                       }},
                      {"values", [&](const std::string& v) { sh_values = v; }},
                      {"values-file",
                       [&](const std::string& v) { sh_values_file = v; }},
                      {"method", [&](const std::string& v) { sh_method = v; }},
                      {"format", [&](const std::string& v) { sh_c.format = v; }},
                      {"out", [&](const std::string& v) { sh_c.out = v; }}});
      }
      return cmd_shrink(sh_loss, sh_gamma, sh_values, sh_values_file,
                        sh_method, sh_c.format, sh_c.out);
    }
    if (tb->parsed()) {
      if (!tb_c.config.empty()) {
        apply_config(
            load_config(tb_c.config),
            {{"losses", [&](const std::string& v) { tb_losses = v; }},
             {"gamma",
              [&](const std::string& v) { tb_gamma = parse_double(v, "gamma"); }},
             {"grid-min",
              [&](const std::string& v) { tb_min = parse_double(v, "grid-min"); }},
             {"grid-max",
              [&](const std::string& v) { tb_max = parse_double(v, "grid-max"); }},
             {"grid-count",
              [&](const std::string& v) {
                tb_count = static_cast<int>(parse_double(v, "grid-count"));
              }},
             {"grid-scale", [&](const std::string& v) { tb_scale = v; }},
             {"format", [&](const std::string& v) { tb_c.format = v; }},
             {"out", [&](const std::string& v) { tb_c.out = v; }}});
      }
      return cmd_tabulate(tb_losses, tb_gamma, tb_min, tb_max, tb_count,
                          tb_scale, tb_c.format, tb_c.out);
    }
    if (rp->parsed()) {
      if (!rp_c.config.empty()) {
        apply_config(
            load_config(rp_c.config),
            {{"what", [&](const std::string& v) { rp_what = v; }},
             {"losses", [&](const std::string& v) { rp_losses = v; }},
             {"gamma",
              [&](const std::string& v) { rp_gamma = parse_double(v, "gamma"); }},
             {"at-lambda",
              [&](const std::string& v) {
                rp_at_lambda = parse_double(v, "at-lambda");
              }},
             {"ell",
              [&](const std::string& v) { rp_ell = parse_double(v, "ell"); }},
             {"format", [&](const std::string& v) { rp_c.format = v; }},
             {"out", [&](const std::string& v) { rp_c.out = v; }}});
      }
      return cmd_report(rp_what, rp_losses, rp_gamma, rp_at_lambda, rp_ell,
                        rp_c.format, rp_c.out);
    }
    if (sm->parsed()) {
      if (!sm_c.config.empty()) {
        apply_config(
            load_config(sm_c.config),
            {{"n",
              [&](const std::string& v) {
                sim.n = static_cast<int>(parse_double(v, "n"));
              }},
             {"p",
              [&](const std::string& v) {
                sim.p = static_cast<int>(parse_double(v, "p"));
              }},
             {"spikes", [&](const std::string& v) { sm_spikes = v; }},
             {"reps",
              [&](const std::string& v) {
                sim.replications = static_cast<int>(parse_double(v, "reps"));
              }},
             {"seed",
              [&](const std::string& v) {
                sim.seed = static_cast<std::uint64_t>(parse_double(v, "seed"));
              }},
             {"losses", [&](const std::string& v) { sm_losses = v; }},
             {"shrinker", [&](const std::string& v) { sm_shrinker = v; }},
             {"shrinker-table", [&](const std::string& v) { sm_table = v; }},
             {"threads",
              [&](const std::string& v) {
                sim.threads = static_cast<int>(parse_double(v, "threads"));
              }},
             {"allow-large",
              [&](const std::string& v) { sim.allow_large = v == "true"; }},
             {"format", [&](const std::string& v) { sm_c.format = v; }},
             {"out", [&](const std::string& v) { sm_c.out = v; }}});
      }
      return cmd_simulate(sim, sm_losses, sm_spikes, sm_shrinker, sm_table,
                          sm_c.format, sm_c.out);
    }
    if (sc->parsed()) {
      return cmd_selfcheck(sc_fault);
    }
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);  // --help and friends
    }
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const es::numeric_error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const es::unsupported_method_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const es::shift_undefined_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 2;
  }
}
