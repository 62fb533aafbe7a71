// bullen: evaluate Bullen functionals and verify the related quadrature
// inequalities from the command line.
//
//   bullen verify --corpus all --props all --out report.json
//   bullen bullen --corpus square,exp --n 1,2,4
//   bullen modulus --corpus hat --order 2 --m 64
//   bullen majorant --corpus signed_square --derivative
//   bullen kfun --corpus hat --t 0.05,0.1
//   bullen partition-opt --n 8
//
// Exit codes: 0 success, 1 failed verdicts (or runtime failure), 2 bad
// configuration.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bullen/bounds.hpp"
#include "bullen/errors.hpp"
#include "bullen/harness.hpp"

namespace {

using bullen::ConfigError;

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double parse_real(const std::string& token) {
  if (token == "pi") return std::numbers::pi;
  if (token == "-pi") return -std::numbers::pi;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != token.size()) throw ConfigError("not a number: '" + token + "'");
  return v;
}

bullen::Interval parse_interval(const std::string& text) {
  const auto parts = split(text);
  if (parts.size() != 2) throw ConfigError("--interval expects A,B");
  try {
    return bullen::Interval(parse_real(parts[0]), parse_real(parts[1]));
  } catch (const bullen::DomainError& e) {
    throw ConfigError(std::string("--interval: ") + e.what());
  }
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* flag) {
  std::vector<T> out;
  for (const auto& tok : split(text)) {
    const double v = parse_real(tok);
    if constexpr (std::is_integral_v<T>) {
      if (v != std::floor(v) || v < 0) {
        throw ConfigError(std::string(flag) + " expects nonnegative integers, got " + tok);
      }
    }
    out.push_back(static_cast<T>(v));
  }
  if (out.empty()) throw ConfigError(std::string(flag) + " expects a nonempty list");
  return out;
}

// Shared options; every subcommand reads what it needs.
struct Options {
  std::string interval = "0,1";
  std::string corpus = "all";
  std::string corpus_file;
  std::string props = "all";
  std::string k = "2,4,8,16";
  std::string n = "1,2,4,8";
  std::size_t grid = bullen::kDefaultGrid;
  double tol = 1e-8;
  std::uint64_t seed = 0;
  std::size_t random_partitions = 20;
  std::string out;
  std::string format = "json";
  int order = 1;
  std::size_t m = 256;
  bool derivative = false;
  std::string t = "0.05,0.1,0.25";
  std::size_t iters = bullen::kDefaultDescentSweeps;
  bool composite = false;
};

std::vector<bullen::CorpusFunction> pick_corpus(const Options& o) {
  bullen::RunConfig cfg;
  cfg.interval = parse_interval(o.interval);
  cfg.corpus_filter = split(o.corpus);
  cfg.corpus_file = o.corpus_file;
  return bullen::resolve_corpus(cfg);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

int run_verify(const Options& o) {
  bullen::RunConfig cfg;
  cfg.interval = parse_interval(o.interval);
  cfg.corpus_filter = split(o.corpus);
  cfg.corpus_file = o.corpus_file;
  cfg.props = split(o.props);
  cfg.k_values = parse_list<int>(o.k, "--k");
  cfg.n_values = parse_list<std::size_t>(o.n, "--n");
  cfg.grid_n = o.grid;
  cfg.tol = o.tol;
  cfg.seed = o.seed;
  cfg.random_partitions = o.random_partitions;
  cfg.output_path = o.out;
  cfg.format = bullen::parse_format(o.format);

  const bullen::Report report = bullen::run_suite(cfg);
  bullen::emit_report(report, cfg.format, cfg.output_path);
  const auto& s = report.summary;
  std::cerr << "verdicts: " << s.total << "  holds: " << s.holds << "  fails: " << s.fails
            << "  low-confidence: " << s.low_confidence << "  skipped: " << s.skipped << '\n';
  return bullen::exit_code(report);
}

int run_bullen(const Options& o) {
  const auto corpus = pick_corpus(o);
  const auto ns = parse_list<std::size_t>(o.n, "--n");
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : corpus) {
    for (std::size_t n : ns) {
      if (n == 0) throw ConfigError("--n values must be >= 1");
      const bullen::Partition p = bullen::uniform(f.domain(), n);
      out.push_back({{"function_id", f.id()},
                     {"n", n},
                     {"value", bullen::composite_bullen(f, p, bullen::kIntegrationTol)}});
    }
  }
  write_text(o.out, out.dump(2) + "\n");
  return 0;
}

bullen::ModulusCurve curve_for(const Options& o) {
  const auto corpus = pick_corpus(o);
  if (corpus.size() != 1) throw ConfigError("--corpus must name exactly one function here");
  const bullen::CorpusFunction f = o.derivative ? bullen::derivative_of(corpus.front())
                                                : corpus.front();
  if (o.order != 1 && o.order != 2) throw ConfigError("--order must be 1 or 2");
  if (o.m < 2) throw ConfigError("--m must be >= 2");
  return bullen::modulus_curve(f, o.order, o.m, o.grid);
}

int run_modulus(const Options& o, bool majorant) {
  bullen::ModulusCurve curve = curve_for(o);
  if (majorant) curve = bullen::least_concave_majorant(curve);
  std::ostringstream text;
  curve.write_csv(text);
  write_text(o.out, text.str());
  return 0;
}

int run_kfun(const Options& o) {
  const auto corpus = pick_corpus(o);
  const auto ts = parse_list<double>(o.t, "--t");
  nlohmann::json out = nlohmann::json::array();
  for (const auto& f : corpus) {
    for (double t : ts) {
      if (!(t > 0.0) || t > 0.5 * f.domain().length()) {
        throw ConfigError("--t values must lie in (0, (b-a)/2]");
      }
      const auto windows = bullen::default_windows(f.domain(), t);
      const bullen::KEstimate k = bullen::k_second(f, t * t, windows, o.grid);
      nlohmann::json row = {{"function_id", f.id()},
                            {"t", t},
                            {"k_upper", k.upper},
                            {"k_lower", k.lower},
                            {"argmin_window", k.argmin_window},
                            {"zhuk_bound", bullen::zhuk_bound(f, t, o.grid)}};
      if (f.smoothness().c1) {
        row["k_c1"] = bullen::k_c1(f, t, windows, o.grid);
        row["identity_residual"] = bullen::paltanea_identity_residual(f, t, o.grid);
      }
      out.push_back(std::move(row));
    }
  }
  write_text(o.out, out.dump(2) + "\n");
  return 0;
}

int run_partition_opt(const Options& o) {
  const bullen::Interval domain = parse_interval(o.interval);
  const auto ns = parse_list<std::size_t>(o.n, "--n");
  if (ns.size() != 1 || ns.front() == 0) throw ConfigError("--n expects a single value >= 1");
  const bullen::Partition p = bullen::minimize_cubic_sum(domain, ns.front(), o.iters);
  write_text(o.out, bullen::partition_to_json(p).dump() + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bullen functional evaluation and inequality verification"};
  app.require_subcommand(1);
  Options o;

  auto common = [&o](CLI::App* sub) {
    sub->add_option("--interval", o.interval, "Interval A,B (pi accepted)");
    sub->add_option("--corpus", o.corpus, "Corpus ids, comma separated, or all");
    sub->add_option("--corpus-file", o.corpus_file, "JSON corpus file");
    sub->add_option("--grid", o.grid, "Grid steps for sups and moduli");
    sub->add_option("--out", o.out, "Output path (stdout when omitted)");
  };

  auto* verify = app.add_subcommand("verify", "Run the inequality suite");
  common(verify);
  verify->add_option("--props", o.props, "Proposition ids, comma separated, or all");
  verify->add_option("--k", o.k, "k values (>= 2)");
  verify->add_option("--n", o.n, "Partition sizes (>= 1)");
  verify->add_option("--tol", o.tol, "Verdict tolerance factor");
  verify->add_option("--seed", o.seed, "Seed for random partitions");
  verify->add_option("--random-partitions", o.random_partitions, "Random partitions per n");
  verify->add_option("--format", o.format, "json or csv");

  auto* bul = app.add_subcommand("bullen", "Evaluate B (n = 1) or B_c on uniform partitions");
  common(bul);
  bul->add_option("--n", o.n, "Partition sizes");

  auto* mod = app.add_subcommand("modulus", "Export a modulus curve as CSV");
  auto* maj = app.add_subcommand("majorant", "Export the least concave majorant as CSV");
  for (auto* sub : {mod, maj}) {
    common(sub);
    sub->add_option("--order", o.order, "1 or 2");
    sub->add_option("--m", o.m, "Number of windows");
    sub->add_flag("--derivative", o.derivative, "Use f' instead of f");
  }

  auto* kfun = app.add_subcommand("kfun", "K-functional estimates");
  common(kfun);
  kfun->add_option("--t", o.t, "t values");

  auto* popt = app.add_subcommand("partition-opt", "Minimise the cubic sum of a partition");
  common(popt);
  popt->add_option("--n", o.n, "Number of pieces");
  popt->add_option("--iters", o.iters, "Sweep budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return run_verify(o);
    if (bul->parsed()) return run_bullen(o);
    if (mod->parsed()) return run_modulus(o, false);
    if (maj->parsed()) return run_modulus(o, true);
    if (kfun->parsed()) return run_kfun(o);
    if (popt->parsed()) return run_partition_opt(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {  // UsageError, ClassError
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const bullen::DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
