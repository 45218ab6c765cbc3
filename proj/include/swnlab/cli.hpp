#pragma once

// Command-line front end. Exit status: 0 when every check passes, 1 when
// some check fails (failures are listed), 2 for usage or configuration
// errors.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "swnlab/config.hpp"
#include "swnlab/crosscheck.hpp"
#include "swnlab/distributions.hpp"
#include "swnlab/report.hpp"
#include "swnlab/wick/corpus.hpp"

namespace swnlab::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitConfig = 2;

struct Flags {
  std::string config;
  std::string beta;
  std::string grid;
  std::string phi;
  std::optional<int> kmax;
  std::optional<double> tol;
  std::string out;
  std::string format;
  std::optional<double> marginal;
  std::optional<std::size_t> points;
  std::string corpus;
  std::optional<std::size_t> workers;
};

/// defaults < config file < flags
inline RunConfig build_config(const Flags& f) {
  RunConfig cfg;
  if (!f.config.empty()) cfg = load_config(f.config, cfg);
  auto& s = cfg.checks;
  if (!f.beta.empty()) set_betas(s, config_detail::doubles("--beta", f.beta));
  if (!f.grid.empty()) {
    GridCase g = parse_grid_spec("--grid", f.grid);
    g.name = "cli";
    g.phi = f.phi.empty() ? std::vector<double>(g.atoms, 1.0) : config_detail::doubles("--phi", f.phi);
    if (g.phi.size() != g.atoms) throw ConfigError("--phi: expected " + std::to_string(g.atoms) + " values");
    s.moment_grids = {g};
    s.commutator_atoms = {g.atoms};
    s.commutator_cell_mass = g.cell_mass;
  } else if (!f.phi.empty()) {
    throw ConfigError("--phi: needs --grid");
  }
  if (f.kmax) {
    if (*f.kmax < 0) throw ConfigError("--kmax: must be >= 0");
    s.kmax = *f.kmax;
  }
  if (f.tol) s.tol.set_all(config_detail::positive("--tol", *f.tol));
  if (!f.out.empty()) cfg.out = f.out;
  if (!f.format.empty()) cfg.format = parse_format(f.format);
  if (f.marginal) cfg.dist_marginal = config_detail::positive("--marginal", *f.marginal);
  if (f.points) cfg.dist_points = config_detail::at_least_one("--points", *f.points);
  if (!f.corpus.empty()) s.corpus = f.corpus;
  if (f.workers) s.workers = *f.workers;
  if (!f.beta.empty() && s.betas.size() == 1) cfg.dist_beta = s.betas.front();
  validate(cfg);
  return cfg;
}

inline std::vector<wick::CorpusEntry> load_corpus_setting(const std::string& corpus) {
  try {
    return corpus == "builtin" ? wick::builtin_corpus() : wick::load_corpus(corpus);
  } catch (const wick::CorpusError& e) {
    throw ConfigError(e.what());
  }
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ConfigError("cannot write '" + path.string() + "'");
  os << text;
}

inline void write_reports(const RunConfig& cfg, const std::string& stem, const std::vector<CheckReport>& reports,
                          std::ostream& out) {
  if (!cfg.out) return;
  const std::filesystem::path dir(*cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  if (cfg.format != OutputFormat::Csv) {
    write_file(dir / (stem + ".json"), to_json_text(reports));
    out << "wrote " << (dir / (stem + ".json")).string() << "\n";
  }
  if (cfg.format != OutputFormat::Json) {
    write_file(dir / (stem + ".csv"), to_csv_text(reports));
    out << "wrote " << (dir / (stem + ".csv")).string() << "\n";
  }
}

/// One line per suite, then every failing check.
inline int summarize(const std::vector<CheckReport>& reports, std::ostream& out) {
  std::vector<std::string> order;
  for (const auto& r : reports)
    if (std::find(order.begin(), order.end(), r.suite) == order.end()) order.push_back(r.suite);
  for (const auto& suite : order) {
    std::size_t total = 0, passed = 0;
    double worst = 0.0;
    for (const auto& r : reports) {
      if (r.suite != suite) continue;
      ++total;
      passed += r.pass ? 1 : 0;
      worst = std::max(worst, r.rel_error);
    }
    out << std::left << std::setw(12) << suite << " " << passed << "/" << total << " passed, max error "
        << format_double(worst) << "\n";
  }
  std::size_t failures = 0;
  for (const auto& r : reports) {
    if (r.pass) continue;
    ++failures;
    out << "FAIL " << r.suite << "/" << r.name << " " << r.params.dump() << " error=" << format_double(r.rel_error)
        << " tol=" << format_double(r.tolerance);
    if (!r.note.empty()) out << " (" << r.note << ")";
    out << "\n";
  }
  out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << "\n";
  return failures == 0 ? kExitPass : kExitFail;
}

inline std::vector<CheckReport> run_suites(const std::string& which, const RunConfig& cfg) {
  const auto& s = cfg.checks;
  std::vector<CheckReport> all;
  auto add = [&](std::vector<CheckReport> more) { all.insert(all.end(), more.begin(), more.end()); };
  if (which == "commutators" || which == "all") {
    add(commutator_suite(s));
    add(adjointness_suite(s));
  }
  if (which == "wick" || which == "all") add(wick_suite(load_corpus_setting(s.corpus), s.worker_count()));
  if (which == "moments" || which == "all") add(theorem1_suite(s));
  if (which == "proofchain" || which == "all") add(proofchain_suite(s));
  return all;
}

inline int run_distributions(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const double tol = cfg.checks.tol.marginal;
  const DistributionTable t = cfg.dist_marginal
                                  ? marginal_table(cfg.dist_beta, *cfg.dist_marginal, cfg.dist_points, tol)
                                  : levy_table(cfg.dist_beta, cfg.dist_points, tol);
  const std::vector<CheckReport> reports{t.normalization};
  if (cfg.out) {
    std::filesystem::create_directories(*cfg.out);
    const auto path = std::filesystem::path(*cfg.out) / "distribution.csv";
    write_file(path, t.csv());
    out << "wrote " << path.string() << "\n";
    write_reports(cfg, "distributions", reports, out);
    return summarize(reports, out);
  }
  out << t.csv();
  const auto& n = t.normalization;
  err << "normalization: " << format_double(n.lhs.is_number() ? n.lhs.get<double>() : NAN);
  if (n.params.contains("table_integral")) err << " (table trapezoid " << format_double(n.params["table_integral"].get<double>()) << ")";
  err << "\n";
  return summarize(reports, err);
}

inline int run_wick_verify(const std::string& lhs, const std::string& rhs, const std::string& c_text,
                           std::ostream& out, std::ostream& err) {
  wick::VerifyOptions opt;
  if (!c_text.empty() && c_text != "sym") {
    try {
      opt.c = wick::detail::parse_rational(c_text);
    } catch (const wick::ParseError& e) {
      err << "--c: " << e.what() << "\n";
      return kExitConfig;
    }
  }
  std::string stage = "lhs";
  try {
    wick::parse(lhs);
    stage = "rhs";
    wick::parse(rhs);
    const auto v = wick::verify_identity(lhs, rhs, opt);
    out << "lhs: " << v.lhs << "\nrhs: " << v.rhs << "\n";
    if (v.pass) {
      out << "PASS\n";
      return kExitPass;
    }
    out << "difference: " << v.diff << "\nFAIL\n";
    return kExitFail;
  } catch (const wick::ParseError& e) {
    const std::string& text = stage == "lhs" ? lhs : rhs;
    err << stage << ": " << e.what() << "\n  " << text << "\n  " << std::string(e.position(), ' ') << "^\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    err << e.what() << "\n";
    return kExitConfig;
  }
}

/// Entry point; `args` excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"swnlab: square-of-white-noise and Meixner Jacobi field checks"};
  app.require_subcommand(1);
  Flags f;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", f.config, "key = value configuration file");
    sub->add_option("--beta", f.beta, "comma-separated beta values");
    sub->add_option("--grid", f.grid, "moment/commutator grid G:v[:d]");
    sub->add_option("--phi", f.phi, "test function values for --grid");
    sub->add_option("--kmax", f.kmax, "highest moment order (<= 8)");
    sub->add_option("--tol", f.tol, "override every tolerance");
    sub->add_option("--out", f.out, "directory for report files");
    sub->add_option("--format", f.format, "json, csv or both");
    sub->add_option("--workers", f.workers, "worker threads (0 = hardware)");
  };
  std::vector<CLI::App*> subs;
  const std::vector<std::pair<const char*, const char*>> suites{
      {"commutators", "relation and adjointness checks in both representations"},
      {"moments", "vacuum moments against the cumulant formula"},
      {"proofchain", "spectral, marginal, Gram and single-atom checks"},
      {"all", "every suite, including the identity corpus"}};
  for (const auto& [name, help] : suites) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub);
    subs.push_back(sub);
  }
  auto* dist = app.add_subcommand("distributions", "density/mass tables with a normalization check");
  add_common(dist);
  dist->add_option("--marginal", f.marginal, "area |D| of the marginal law; omit for the Levy measure");
  dist->add_option("--points", f.points, "table rows for continuous laws");

  auto* wick_cmd = app.add_subcommand("wick", "symbolic identity corpus");
  add_common(wick_cmd);
  wick_cmd->add_option("--corpus", f.corpus, "builtin or a corpus file");
  auto* verify = wick_cmd->add_subcommand("verify", "check one identity");
  std::string lhs, rhs, c_text = "sym";
  verify->add_option("lhs", lhs, "left side")->required();
  verify->add_option("rhs", rhs, "right side")->required();
  verify->add_option("--c", c_text, "value of c (rational) or sym");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitConfig;
  }

  if (verify->parsed()) return run_wick_verify(lhs, rhs, c_text, out, err);

  try {
    const RunConfig cfg = build_config(f);
    const auto start = std::chrono::steady_clock::now();
    if (dist->parsed()) return run_distributions(cfg, out, err);
    std::string which = wick_cmd->parsed() ? "wick" : "";
    for (auto* sub : subs)
      if (sub->parsed()) which = sub->get_name();
    const auto reports = run_suites(which, cfg);
    write_reports(cfg, which, reports, out);
    const int code = summarize(reports, out);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    err << which << " finished in " << std::fixed << std::setprecision(2) << secs << " s\n";
    return code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace swnlab::cli
