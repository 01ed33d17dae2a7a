#pragma once

// Command-line front end: simulate | exact | verify | density | fit.
// run_cli() is the whole program minus process plumbing, so it can be
// driven from tests.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hirelab/error.hpp"
#include "hirelab/exact.hpp"
#include "hirelab/report.hpp"
#include "hirelab/sim.hpp"
#include "hirelab/stats.hpp"
#include "hirelab/symbolic.hpp"

namespace hirelab {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

namespace cli {

/// key=value lines; blank lines and '#' comments are skipped.
inline std::vector<std::string> read_config_tokens(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file '" + path + "'");
  std::vector<std::string> tokens;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(f, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key=value");
    std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    while (!key.empty() && key[0] == '-') key.erase(0, 1);
    if (key.empty()) throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    tokens.push_back("--" + key + "=" + value);
  }
  return tokens;
}

/// Splice config-file tokens in right after the subcommand so that flags
/// given on the command line (which come later) win.
inline std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::optional<std::string> path;
  std::vector<std::string> rest;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (!path) return rest;
  const auto tokens = read_config_tokens(*path);
  auto it = std::find_if(rest.begin(), rest.end(), [](const std::string& a) { return a.empty() || a[0] != '-'; });
  if (it == rest.end()) throw ConfigError("--config needs a subcommand");
  rest.insert(it + 1, tokens.begin(), tokens.end());
  return rest;
}

struct Output {
  std::string format = "csv";
  std::string path;
  std::string manifest_path;
  unsigned threads = 0;
  std::uint64_t seed = kDefaultSeed;
};

inline void add_output_options(CLI::App* cmd, Output& o) {
  cmd->add_option("--format", o.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out", o.path, "output file (default: stdout)");
  cmd->add_option("--manifest", o.manifest_path, "sidecar manifest (default: <out>.manifest.json)");
  cmd->add_option("--threads", o.threads, "worker threads (default: HIRELAB_THREADS or all cores)");
  cmd->add_option("--seed", o.seed, "master seed");
}

inline std::string digits_of(const Rational& r, int digits) {
  const HighFloat v = HighFloat(r.get_num().get_str()) / HighFloat(r.get_den().get_str());
  return v.str(std::clamp(digits, 1, 45));
}

inline std::string digits_of(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(std::clamp(digits, 1, 17)) << v;
  return os.str();
}

/// Writes the artifact and, when it goes to a file, the sidecar manifest.
inline void emit(const Output& o, RunManifest& m, const std::string& content, std::ostream& out,
                 std::chrono::steady_clock::time_point started) {
  m.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  m.content_hash = git_blob_sha1(content);
  if (o.path.empty()) {
    out << content;
  } else {
    write_file(o.path, content);
    write_file(o.manifest_path.empty() ? o.path + ".manifest.json" : o.manifest_path,
               m.to_json().dump(2) + "\n");
    return;
  }
  if (!o.manifest_path.empty()) write_file(o.manifest_path, m.to_json().dump(2) + "\n");
}

inline std::string render(const Output& o, const RunManifest& m, const CsvTable& t, Json j) {
  return o.format == "json" ? json_artifact(m, std::move(j)) : to_csv(t, &m);
}

inline Json table_json(const CsvTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row;
    for (std::size_t i = 0; i < r.size(); ++i) row[t.header[i]] = r[i];
    rows.push_back(row);
  }
  return rows;
}

// ---------------------------------------------------------------------------
// verify

struct CheckLine {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerifyOptions {
  int max_n = 8;
  int exp_max_n = 7;
  std::uint64_t trials = 10000000;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
};

inline std::vector<CheckLine> verify_conjecture(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  for (int n = 1; n <= opt.max_n; ++n) {
    const auto sym = mis_uniform_superior_exact_traced(n, std::max(opt.max_n, kDefaultSymbolicMaxN));
    const DnEntry rec = dn_recurrence(n);
    const bool ok = sym.count == rec.count && sym.probability == rec.probability;
    out.push_back({"conjecture", "n=" + std::to_string(n), ok,
                   "P=" + to_string(sym.probability) + " D=" + to_string(sym.count) +
                       " recurrence D=" + to_string(rec.count)});
  }
  return out;
}

inline std::vector<CheckLine> verify_exp_dn(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  const int published = static_cast<int>(published_exp_dn().size());
  for (int n = 1; n <= opt.exp_max_n; ++n) {
    const MisExpExact r = mis_exp_superior_exact(n, std::max(opt.exp_max_n, kExpSymbolicMaxN));
    if (n <= published) {
      const PublishedComparison c = compare_with_published(r);
      std::string detail = "D=" + r.numerator.to_string();
      for (const auto& e : c.errata_applied) detail += " [erratum " + e + "]";
      for (const auto& m : c.mismatches) detail += " [mismatch " + m + "]";
      out.push_back({"exp-dn", "n=" + std::to_string(n) + " published", c.match, detail});
    }
    const StructureReport rep = dn_exp_structure_checks(r);
    std::string failed;
    for (const auto& c : rep.checks)
      if (!c.pass) failed += " " + c.name + " (" + c.detail + ")";
    out.push_back({"exp-dn", "n=" + std::to_string(n) + " patterns", rep.all_pass(),
                   failed.empty() ? std::to_string(rep.checks.size()) + " checks" : failed});
  }
  return out;
}

inline std::vector<CheckLine> verify_tables(const VerifyOptions& opt) {
  std::vector<CheckLine> out;
  for (const auto& [N, text] : published_ais_uniform_F()) {
    if (N < 2) continue;
    const Rational want = parse_rational(text);
    const Rational amp = ais_uniform_F_exact(N);
    const Rational prod = ais_uniform_F_product(N);
    out.push_back({"tables", "F_" + std::to_string(N) + " AIS uniform", amp == want && prod == want,
                   "amplitudes " + to_string(amp) + ", product " + to_string(prod) + ", published " +
                       text});
  }
  for (int n = 1; n <= 5; ++n) {
    const Rational want = ais_uniform_superior_table(n);
    SimConfig cfg;
    cfg.strategy = StrategySpec::ais();
    cfg.dist = ScoreDistribution(ScoreLaw::Uniform);
    cfg.trials = opt.trials;
    cfg.master_seed = opt.seed;
    cfg.workers = opt.threads;
    const SuperiorEstimate e = estimate_superior(cfg, n);
    const double z = e.fraction.z_score(to_double(want));
    out.push_back({"tables", "P_" + std::to_string(n) + " AIS uniform (MC)", z <= 3.0,
                   format_double(e.fraction.mean) + " +- " + format_double(e.fraction.std_error) +
                       " vs " + to_string(want) + " (z=" + digits_of(z, 3) + ")"});
  }
  for (int n = 1; n <= 5; ++n) {
    const Rational sym = mis_uniform_superior_exact(n);
    const Rational rec = dn_recurrence(n).probability;
    out.push_back({"tables", "P_" + std::to_string(n) + " MIS uniform (exact)", sym == rec,
                   to_string(sym)});
  }
  return out;
}

inline std::vector<CheckLine> verify_constants(const VerifyOptions&) {
  const double lambda = compute_lambda();
  const double c = compute_age_amplitude();
  const double lambda_tail = -ais_uniform_log_F(4000) / 4000.0;
  return {
      {"constants", "Lambda", std::abs(lambda - kPublishedLambda) <= kPublishedLambdaTol,
       digits_of(lambda, 15) + " vs " + digits_of(kPublishedLambda, 11)},
      {"constants", "C_age", std::abs(c - kPublishedAgeAmplitude) <= kPublishedAgeAmplitudeTol,
       digits_of(c, 15) + " vs " + digits_of(kPublishedAgeAmplitude, 7)},
      {"constants", "Lambda from F_N", std::abs(lambda_tail - lambda) < 0.01,
       "-log(F_4000)/4000 = " + digits_of(lambda_tail, 8)},
  };
}

// ---------------------------------------------------------------------------
// fit

inline Json fit_json(const PowerLawFit& f) {
  return Json{{"exponent", f.exponent},
              {"amplitude", f.amplitude},
              {"window", {f.window.first, f.window.second}},
              {"points", f.points},
              {"r_squared", f.r_squared}};
}

}  // namespace cli

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  const auto started = std::chrono::steady_clock::now();
  try {
    args = cli::expand_config(std::move(args));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  CLI::App app{"Monte Carlo and exact results for hiring strategies", "hirelab"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  // simulate
  cli::Output sim_out;
  std::string sim_strategy = "mis", sim_dist = "uniform", sim_kernel, sim_thresholds = "none";
  int grow_to = 0, all_hired = 0, superior = 0;
  std::uint64_t sim_trials = 100000;
  auto* simulate = app.add_subcommand("simulate", "grow companies or estimate F_N / P_n");
  simulate->add_option("--strategy", sim_strategy, "mis | ais | lis:<c> | mlis1");
  simulate->add_option("--dist", sim_dist, "uniform | tent | exp");
  auto* g_opt = simulate->add_option("--grow-to", grow_to, "grow each company to size n");
  auto* a_opt = simulate->add_option("--all-hired", all_hired, "estimate F_N");
  auto* s_opt = simulate->add_option("--superior", superior, "estimate P_n");
  g_opt->excludes(a_opt)->excludes(s_opt);
  a_opt->excludes(s_opt);
  simulate->add_option("--trials", sim_trials, "number of trials");
  simulate->add_option("--kernel", sim_kernel, "naive | rejection-free");
  simulate->add_option("--thresholds", sim_thresholds, "none | analytic | calibrate")
      ->check(CLI::IsMember({"none", "analytic", "calibrate"}));
  cli::add_output_options(simulate, sim_out);

  // exact
  cli::Output ex_out;
  std::string ex_name, ex_strategy = "mis", ex_dist = "uniform";
  int ex_N = 0, ex_n = 0, ex_digits = 17;
  double ex_x = 0.5;
  bool ex_heuristic = false;
  auto* exact = app.add_subcommand("exact", "closed forms, recurrences and constants");
  exact->add_option("name", ex_name,
                    "F | P | dn | exp-dn | xi | mu | density | constants | reference | ais-superior | ais-all-hired")
      ->required();
  exact->add_option("--strategy", ex_strategy, "mis | ais | lis:<c> | mlis1");
  exact->add_option("--dist", ex_dist, "uniform | tent | exp");
  exact->add_option("--N", ex_N, "company size for F");
  exact->add_option("--n", ex_n, "company size (or largest size for tables)");
  exact->add_option("--x", ex_x, "score for density");
  exact->add_option("--digits", ex_digits, "significant digits");
  exact->add_flag("--heuristic", ex_heuristic, "allow heuristic density forms");
  cli::add_output_options(exact, ex_out);

  // verify
  cli::VerifyOptions vopt;
  std::string v_suite = "all";
  auto* verify = app.add_subcommand("verify", "exact cross-checks; exit 0 iff all pass");
  verify->add_option("suite", v_suite, "conjecture | exp-dn | tables | constants | all")
      ->check(CLI::IsMember({"conjecture", "exp-dn", "tables", "constants", "all"}));
  verify->add_option("--max-n", vopt.max_n, "largest n for conjecture / exp-dn");
  verify->add_option("--trials", vopt.trials, "Monte Carlo trials for table checks");
  verify->add_option("--seed", vopt.seed, "master seed for Monte Carlo checks");
  verify->add_option("--threads", vopt.threads, "worker threads");
  std::string v_format = "text";
  verify->add_option("--format", v_format, "text | json")->check(CLI::IsMember({"text", "json"}));

  // density
  cli::Output d_out;
  std::string d_strategy = "mis", d_dist = "uniform", d_kernel = "rejection-free";
  int d_n = 3, d_bins = 50;
  std::uint64_t d_trials = 1000000;
  double d_cap = 0.0;
  bool d_heuristic = false;
  auto* density = app.add_subcommand("density", "score density histogram vs closed form");
  density->add_option("--strategy", d_strategy, "mis | ais | lis:<c> | mlis1");
  density->add_option("--dist", d_dist, "uniform | tent | exp");
  density->add_option("--n", d_n, "company size");
  density->add_option("--bins", d_bins, "number of equal-width bins");
  density->add_option("--trials", d_trials, "number of companies");
  density->add_option("--cap", d_cap, "upper histogram edge for the exponential law");
  density->add_option("--kernel", d_kernel, "naive | rejection-free");
  density->add_flag("--heuristic", d_heuristic, "compare with heuristic forms where no exact one exists");
  cli::add_output_options(density, d_out);

  // fit
  cli::Output f_out;
  f_out.format = "json";
  std::string f_metric = "best-gap", f_strategy = "ais", f_dist = "uniform";
  int f_max_n = 4096, f_lo = 0, f_hi = 0;
  std::uint64_t f_trials = 100000;
  auto* fit = app.add_subcommand("fit", "power-law fits of growth observables");
  fit->add_option("--metric", f_metric, "best-gap | mean-gap | last-gap | age | mis-exp-pm")
      ->check(CLI::IsMember({"best-gap", "mean-gap", "last-gap", "age", "mis-exp-pm"}));
  fit->add_option("--strategy", f_strategy, "mis | ais | lis:<c> | mlis1");
  fit->add_option("--dist", f_dist, "uniform | tent | exp");
  fit->add_option("--max-n", f_max_n, "largest company size");
  fit->add_option("--window-lo", f_lo, "smallest size in the fit (default: max-n / 16)");
  fit->add_option("--window-hi", f_hi, "largest size in the fit (default: max-n)");
  fit->add_option("--trials", f_trials, "number of companies");
  cli::add_output_options(fit, f_out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (e.get_name() == "CallForVersion" ? std::string(kToolVersion) + "\n" : app.help());
      return kExitOk;
    }
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      RunManifest m;
      m.command = "simulate";
      m.master_seed = sim_out.seed;
      m.workers = resolve_workers(sim_out.threads);
      SimConfig cfg;
      cfg.strategy = StrategySpec::parse(sim_strategy);
      cfg.dist = ScoreDistribution::parse(sim_dist);
      cfg.trials = sim_trials;
      cfg.master_seed = sim_out.seed;
      cfg.workers = sim_out.threads;
      cfg.thresholds = sim_thresholds == "analytic"    ? ThresholdMode::Analytic
                       : sim_thresholds == "calibrate" ? ThresholdMode::Calibrate
                                                       : ThresholdMode::None;
      const int modes = (grow_to > 0) + (all_hired > 0) + (superior > 0);
      if (modes != 1) throw ConfigError("choose exactly one of --grow-to, --all-hired, --superior");
      m.set("strategy", cfg.strategy.name());
      m.set("dist", cfg.dist.name());
      m.set("trials", std::to_string(cfg.trials));
      CsvTable t;
      Json j;
      if (grow_to > 0) {
        cfg.mode = GrowToSize{grow_to};
        cfg.kernel = sim_kernel.empty() ? Kernel::RejectionFree : parse_kernel(sim_kernel);
        m.set("grow_to", std::to_string(grow_to));
        m.set("kernel", kernel_name(cfg.kernel));
        m.set("thresholds", sim_thresholds);
        const GrowthStats g = run_growth(cfg);
        t = growth_table(g);
        j = growth_json(g);
      } else if (all_hired > 0) {
        cfg.mode = InterviewBudget{all_hired};
        cfg.kernel = sim_kernel.empty() ? Kernel::Naive : parse_kernel(sim_kernel);
        cfg.validate();
        m.set("all_hired", std::to_string(all_hired));
        m.set("kernel", kernel_name(cfg.kernel));
        const Estimate e = estimate_all_hired(cfg, all_hired);
        std::string exact_text;
        try {
          exact_text = to_string(F_exact(cfg.strategy, cfg.dist.law(), all_hired));
        } catch (const UnsupportedError&) {
        }
        t.header = {"N", "F", "F_se", "trials", "exact"};
        t.add_row({std::to_string(all_hired), format_double(e.mean), format_double(e.std_error),
                   std::to_string(e.count), exact_text});
        j = Json{{"N", all_hired}, {"F", estimate_json(e)}, {"exact", exact_text}};
      } else {
        if (!sim_kernel.empty() && parse_kernel(sim_kernel) != Kernel::Naive)
          throw ConfigError("superior fractions are conditioned on no rejection; they need the naive kernel");
        if (cfg.thresholds == ThresholdMode::None) cfg.thresholds = ThresholdMode::Analytic;
        m.set("superior", std::to_string(superior));
        m.set("thresholds", cfg.thresholds == ThresholdMode::Calibrate ? "calibrate" : "analytic");
        const SuperiorEstimate e = estimate_superior(cfg, superior);
        if (!e.feasible) err << "warning: " << e.warning << "\n";
        t.header = {"n", "P", "P_se", "all_hired", "reference"};
        t.add_row({std::to_string(superior), format_double(e.fraction.mean),
                   format_double(e.fraction.std_error), std::to_string(e.all_hired),
                   e.reference ? format_double(*e.reference) : ""});
        j = Json{{"n", superior}, {"P", estimate_json(e.fraction)}, {"all_hired", e.all_hired}};
        if (e.reference) j["reference"] = *e.reference;
        if (!e.feasible) j["warning"] = e.warning;
      }
      cli::emit(sim_out, m, cli::render(sim_out, m, t, j), out, started);
      return kExitOk;
    }

    if (exact->parsed()) {
      RunManifest m;
      m.command = "exact " + ex_name;
      m.master_seed = ex_out.seed;
      m.set("strategy", ex_strategy);
      m.set("dist", ex_dist);
      m.set("digits", std::to_string(ex_digits));
      const StrategySpec strategy = StrategySpec::parse(ex_strategy);
      const ScoreDistribution dist = ScoreDistribution::parse(ex_dist);
      CsvTable t;
      t.header = {"quantity", "index", "value", "exact"};
      auto row_r = [&](const std::string& q, int idx, const Rational& r) {
        t.add_row({q, std::to_string(idx), cli::digits_of(r, ex_digits), to_string(r)});
      };
      auto row_d = [&](const std::string& q, int idx, double v, const std::string& form = "") {
        t.add_row({q, std::to_string(idx), cli::digits_of(v, ex_digits), form});
      };
      auto need = [](int v, const char* flag) {
        if (v < 1) throw ConfigError(std::string("exact: ") + flag + " must be >= 1");
        return v;
      };
      if (ex_name == "F") {
        const int N = need(ex_N, "--N");
        m.set("N", std::to_string(N));
        row_r("F", N, F_exact(strategy, dist.law(), N));
      } else if (ex_name == "P") {
        const int n = need(ex_n, "--n");
        m.set("n", std::to_string(n));
        const bool mis_like = strategy.kind == StrategyKind::MIS ||
                              (strategy.kind == StrategyKind::LIS && n <= strategy.committee + 1) ||
                              (strategy.kind == StrategyKind::AIS && n <= 2);
        if (dist.law() == ScoreLaw::Uniform && mis_like) {
          row_r("P", n, dn_recurrence(n).probability);
        } else if (dist.law() == ScoreLaw::Uniform && strategy.kind == StrategyKind::AIS) {
          row_r("P", n, ais_uniform_superior_table(n));
        } else if (dist.law() == ScoreLaw::Exponential && mis_like && n <= kExpSymbolicMaxN) {
          const MisExpExact r = mis_exp_superior_exact(n);
          row_d("P", n, r.probability.evaluate(), "(" + r.numerator.to_string() + ")/e^" + std::to_string(n * n));
        } else if (auto v = reference_superior_fraction(strategy, dist.law(), n)) {
          row_d("P", n, *v);
        } else {
          throw UnsupportedError("no exact P_n for " + strategy.name() + "/" + dist.name() +
                                 " at n = " + std::to_string(n));
        }
      } else if (ex_name == "dn") {
        const int n = need(ex_n, "--n");
        m.set("n", std::to_string(n));
        for (int k = 0; k <= n; ++k) {
          const DnEntry e = dn_recurrence(k);
          t.add_row({"D", std::to_string(k), to_string(e.count), to_string(e.probability)});
        }
      } else if (ex_name == "exp-dn") {
        const int n = need(ex_n, "--n");
        m.set("n", std::to_string(n));
        for (int k = 1; k <= n; ++k) {
          const MisExpExact r = mis_exp_superior_exact(k, std::max(n, kExpSymbolicMaxN));
          t.add_row({"D", std::to_string(k), cli::digits_of(r.probability.evaluate(), ex_digits),
                     r.numerator.to_string()});
        }
      } else if (ex_name == "xi" || ex_name == "mu") {
        const int n = need(ex_n, "--n");
        m.set("n", std::to_string(n));
        for (int k = 1; k <= n; ++k) {
          if (strategy.kind == StrategyKind::MIS && dist.law() == ScoreLaw::Uniform) {
            row_r(ex_name, k, ex_name == "xi" ? mis_xi(k) : mis_mu(k));
          } else if (strategy.kind == StrategyKind::AIS && dist.law() == ScoreLaw::Uniform) {
            if (ex_name == "mu") row_r("mu", k, ais_mu_exact(k));
            else row_d("xi", k, ais_xi(k));
          } else if (strategy.kind == StrategyKind::AIS && dist.law() == ScoreLaw::Tent &&
                     ex_name == "mu") {
            row_d("mu", k, tent_mu(k));
          } else {
            throw UnsupportedError("no closed-form " + ex_name + " for " + strategy.name() + "/" +
                                   dist.name());
          }
        }
      } else if (ex_name == "density") {
        const int n = need(ex_n, "--n");
        m.set("n", std::to_string(n));
        m.set("x", format_double(ex_x));
        const DensityValue v = density_closed_form(
            strategy, dist.law(), n, ex_x,
            ex_heuristic ? DensityForm::AllowHeuristic : DensityForm::Exact);
        row_d("rho", n, v.value, v.heuristic ? "heuristic" : "");
      } else if (ex_name == "constants") {
        for (const auto& c : constants())
          t.add_row({c.name, "", cli::digits_of(c.value, ex_digits),
                     c.provenance + (c.heuristic ? " (heuristic)" : "")});
      } else if (ex_name == "reference") {
        for (const auto& r : reference_values())
          t.add_row({r.key, std::to_string(r.n), r.digits, r.closed_form});
      } else if (ex_name == "ais-superior") {
        for (int n = 1; n <= 5; ++n) row_r("P_ais_uniform", n, ais_uniform_superior_table(n));
      } else if (ex_name == "ais-all-hired") {
        for (int N = 1; N <= 9; ++N) row_r("F_ais_uniform", N, ais_uniform_F_product(N));
      } else {
        throw ConfigError("unknown exact quantity '" + ex_name + "'");
      }
      cli::emit(ex_out, m, cli::render(ex_out, m, t, cli::table_json(t)), out, started);
      return kExitOk;
    }

    if (verify->parsed()) {
      vopt.exp_max_n = std::min(vopt.max_n, 7);
      if (v_suite == "exp-dn") vopt.exp_max_n = vopt.max_n;
      std::vector<cli::CheckLine> lines;
      auto run = [&](const std::string& name,
                     const std::function<std::vector<cli::CheckLine>(const cli::VerifyOptions&)>& f) {
        if (v_suite != "all" && v_suite != name) return;
        auto part = f(vopt);
        lines.insert(lines.end(), part.begin(), part.end());
      };
      run("conjecture", cli::verify_conjecture);
      run("exp-dn", cli::verify_exp_dn);
      run("constants", cli::verify_constants);
      run("tables", cli::verify_tables);
      bool all = true;
      Json j = Json::array();
      for (const auto& l : lines) {
        all = all && l.pass;
        if (v_format == "json")
          j.push_back(Json{{"suite", l.suite}, {"check", l.name}, {"pass", l.pass}, {"detail", l.detail}});
        else
          out << (l.pass ? "PASS " : "FAIL ") << l.suite << ' ' << l.name << ": " << l.detail << "\n";
      }
      if (v_format == "json") out << j.dump(2) << "\n";
      else out << (all ? "all checks passed" : "some checks FAILED") << "\n";
      return all ? kExitOk : kExitCheckFailed;
    }

    if (density->parsed()) {
      RunManifest m;
      m.command = "density";
      m.master_seed = d_out.seed;
      m.workers = resolve_workers(d_out.threads);
      SimConfig cfg;
      cfg.strategy = StrategySpec::parse(d_strategy);
      cfg.dist = ScoreDistribution::parse(d_dist);
      cfg.trials = d_trials;
      cfg.master_seed = d_out.seed;
      cfg.workers = d_out.threads;
      cfg.kernel = parse_kernel(d_kernel);
      m.set("strategy", cfg.strategy.name());
      m.set("dist", cfg.dist.name());
      m.set("n", std::to_string(d_n));
      m.set("bins", std::to_string(d_bins));
      m.set("trials", std::to_string(d_trials));
      m.set("kernel", kernel_name(cfg.kernel));
      std::optional<double> cap;
      if (d_cap > 0.0) {
        cap = d_cap;
        m.set("cap", format_double(d_cap));
      }
      const DensityHistogram h = density_histogram(cfg, d_n, d_bins, cap);
      CsvTable t;
      t.header = {"x_lo", "x_hi", "x_mid", "empirical", "stderr", "analytic", "heuristic"};
      const DensityForm form = d_heuristic ? DensityForm::AllowHeuristic : DensityForm::Exact;
      for (std::size_t b = 0; b < h.density.size(); ++b) {
        std::string analytic, heuristic;
        try {
          const DensityValue v =
              density_bin_average(cfg.strategy, cfg.dist.law(), d_n, h.bin_lo(b), h.bin_hi(b), form);
          analytic = format_double(v.value);
          heuristic = v.heuristic ? "1" : "0";
        } catch (const UnsupportedError&) {
        } catch (const DomainError&) {
        }
        t.add_row({format_double(h.bin_lo(b)), format_double(h.bin_hi(b)),
                   format_double(0.5 * (h.bin_lo(b) + h.bin_hi(b))), format_double(h.density[b]),
                   format_double(h.std_error[b]), analytic, heuristic});
      }
      Json j;
      j["bins"] = cli::table_json(t);
      j["in_range_mass"] = estimate_json(h.in_range_mass);
      j["overflow_mass"] = estimate_json(h.overflow_mass);
      if (cfg.dist.compact()) j["gap_moment"] = estimate_json(h.gap_moment);
      j["first_moment"] = estimate_json(h.first_moment);
      cli::emit(d_out, m, cli::render(d_out, m, t, j), out, started);
      return kExitOk;
    }

    if (fit->parsed()) {
      RunManifest m;
      m.command = "fit";
      m.master_seed = f_out.seed;
      m.workers = resolve_workers(f_out.threads);
      m.set("metric", f_metric);
      Json j;
      CsvTable t;
      if (f_metric == "mis-exp-pm") {
        const ExpAsymptoticFit r = fit_exp_asymptotic(3, std::min(std::max(f_max_n, 4), kExpSymbolicMaxN));
        j = Json{{"p", r.p}, {"M", r.M}, {"n_range", {r.n_lo, r.n_hi}}, {"heuristic", true}};
        t.header = {"p", "M", "n_lo", "n_hi"};
        t.add_row({format_double(r.p), format_double(r.M), std::to_string(r.n_lo), std::to_string(r.n_hi)});
      } else {
        SimConfig cfg;
        cfg.strategy = StrategySpec::parse(f_strategy);
        cfg.dist = ScoreDistribution::parse(f_dist);
        cfg.trials = f_trials;
        cfg.master_seed = f_out.seed;
        cfg.workers = f_out.threads;
        cfg.mode = GrowToSize{f_max_n};
        const int hi = f_hi > 0 ? f_hi : f_max_n;
        const int lo = f_lo > 0 ? f_lo : std::max(1, hi / 16);
        m.set("strategy", cfg.strategy.name());
        m.set("dist", cfg.dist.name());
        m.set("max_n", std::to_string(f_max_n));
        m.set("window", std::to_string(lo) + ".." + std::to_string(hi));
        m.set("trials", std::to_string(f_trials));
        const GrowthStats g = run_growth(cfg);
        std::vector<std::pair<double, double>> series;
        for (int k = lo; k <= std::min(hi, f_max_n); ++k) {
          double v = 0.0;
          if (f_metric == "best-gap") v = g.best_gap(k).mean;
          else if (f_metric == "mean-gap") v = g.mean_gap(k).mean;
          else if (f_metric == "last-gap") v = g.last_gap(k).mean;
          else v = g.mean_age(k).mean;
          series.emplace_back(k, v);
        }
        const PowerLawFit r = fit_power_law(
            series, lo, hi, f_metric == "age" ? PowerLawSense::Growing : PowerLawSense::Decaying);
        j = cli::fit_json(r);
        if (f_metric == "best-gap" && cfg.strategy.kind == StrategyKind::AIS) {
          j["reference_exponent"] = 1.5;
          j["reference_amplitude"] = best_gap_amplitude();
          j["heuristic"] = true;
        } else if (f_metric == "age" && cfg.strategy.kind == StrategyKind::AIS) {
          j["reference_exponent"] = 1.0;
          j["reference_amplitude"] = compute_age_amplitude();
          j["heuristic"] = true;
        } else if (f_metric == "mean-gap" && cfg.strategy.kind == StrategyKind::AIS) {
          j["reference_exponent"] = cfg.dist.law() == ScoreLaw::Tent ? 1.0 / 3.0 : 0.5;
        }
        t.header = {"exponent", "amplitude", "window_lo", "window_hi", "points", "r_squared"};
        t.add_row({format_double(r.exponent), format_double(r.amplitude), std::to_string(lo),
                   std::to_string(hi), std::to_string(r.points), format_double(r.r_squared)});
      }
      cli::emit(f_out, m, cli::render(f_out, m, t, j), out, started);
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UnsupportedError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace hirelab
