#include "bullen/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <tuple>

#include "bullen/errors.hpp"

namespace bullen {

namespace {

enum class Needs { continuity, convexity, c1, c2 };

struct Group {
  const char* id;
  Needs needs;
};

const std::vector<Group>& groups() {
  static const std::vector<Group> g = {
      {"thmA", Needs::convexity}, {"eq1", Needs::c2},         {"prop2", Needs::continuity},
      {"remark1", Needs::c2},     {"prop3", Needs::continuity}, {"zhuk", Needs::c2},
      {"prop4", Needs::continuity}, {"prop5", Needs::continuity}, {"prop6", Needs::continuity},
      {"prop7", Needs::c1},       {"prop8", Needs::c1},       {"c1crude", Needs::c1}};
  return g;
}

bool satisfies(const SmoothnessClass& c, Needs needs) {
  switch (needs) {
    case Needs::continuity: return c.continuous;
    case Needs::convexity: return c.convex;
    case Needs::c1: return c.c1;
    case Needs::c2: return c.c2;
  }
  return false;
}

const char* describe(Needs needs) {
  switch (needs) {
    case Needs::continuity: return "class: requires continuity";
    case Needs::convexity: return "class: requires convexity";
    case Needs::c1: return "class: requires C1";
    case Needs::c2: return "class: requires C2";
  }
  return "class";
}

bool selects_all(const std::vector<std::string>& list) {
  return list.empty() || std::find(list.begin(), list.end(), "all") != list.end();
}

struct SweepPartition {
  Partition partition;
  std::map<std::string, double> params;
};

std::vector<SweepPartition> sweep_partitions(const Interval& domain, const RunConfig& cfg) {
  std::vector<SweepPartition> out;
  for (std::size_t n : cfg.n_values) {
    out.push_back({uniform(domain, n), {{"random", 0.0}}});
    if (n == 1) continue;
    for (std::size_t r = 0; r < cfg.random_partitions; ++r) {
      const std::uint64_t seed = cfg.seed + r;
      out.push_back({random_partition(domain, n, seed),
                     {{"random", 1.0}, {"seed", static_cast<double>(seed)}}});
    }
  }
  return out;
}

BoundVerdict error_verdict(const std::string& prop, const std::string& fid,
                           std::map<std::string, double> params, const std::exception& e) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  BoundVerdict v;
  v.prop_id = prop;
  v.function_id = fid;
  v.lhs = v.rhs = v.margin = nan;
  v.holds = false;
  v.params = std::move(params);
  v.note = std::string("error: ") + e.what();
  return v;
}

void add_params(BoundVerdict& v, const std::map<std::string, double>& extra) {
  for (const auto& [key, value] : extra) v.params[key] = value;
}

void run_group(const Group& g, const CorpusFunction& f, const RunConfig& cfg,
               const std::vector<SweepPartition>& parts, const CheckOptions& opts,
               std::vector<BoundVerdict>& out) {
  const std::string group = g.id;
  // Guard each unit so one broken evaluation is reported rather than aborting
  // the whole sweep.
  auto guarded = [&](std::map<std::string, double> params, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      out.push_back(error_verdict(group, f.id(), std::move(params), e));
    }
  };

  if (group == "thmA") {
    guarded({}, [&] { out.push_back(thmA_check(f, opts)); });
  } else if (group == "eq1") {
    guarded({}, [&] {
      auto [lower, upper] = eq1_sandwich(f, opts);
      out.push_back(std::move(lower));
      out.push_back(std::move(upper));
    });
  } else if (group == "prop2" || group == "remark1") {
    for (int k : cfg.k_values) {
      guarded({{"k", k}}, [&] {
        out.push_back(group == "prop2" ? prop2_check(f, k, opts) : remark1_check(f, k, opts));
      });
    }
  } else if (group == "prop3") {
    guarded({}, [&] { out.push_back(prop3_check(f, opts)); });
  } else if (group == "zhuk") {
    guarded({}, [&] { out.push_back(zhuk_consequence_check(f, opts)); });
  } else if (group == "prop8") {
    guarded({}, [&] { out.push_back(prop8_check(f, opts)); });
  } else if (group == "prop5") {
    for (const auto& sp : parts) {
      for (int k : cfg.k_values) {
        auto params = sp.params;
        params["k"] = k;
        guarded(params, [&] {
          BoundVerdict v = prop5_check(f, sp.partition, k, opts);
          add_params(v, sp.params);
          out.push_back(std::move(v));
        });
      }
    }
  } else {
    for (const auto& sp : parts) {
      guarded(sp.params, [&] {
        std::vector<BoundVerdict> vs;
        if (group == "prop4") {
          vs = prop4_check(f, sp.partition, opts);
        } else if (group == "prop6") {
          vs.push_back(prop6_check(f, sp.partition, opts));
        } else if (group == "prop7") {
          vs.push_back(prop7_check(f, sp.partition, opts));
        } else {
          vs.push_back(c1_crude_check(f, sp.partition, opts));
        }
        for (auto& v : vs) {
          add_params(v, sp.params);
          out.push_back(std::move(v));
        }
      });
    }
  }
}

std::string format_number(double x) {
  if (!std::isfinite(x)) return "";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x + 0.0);  // -0 prints as 0
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

nlohmann::json number_or_null(double x) {
  return std::isfinite(x) ? nlohmann::json(x + 0.0) : nlohmann::json(nullptr);
}

}  // namespace

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw ConfigError("unknown report format '" + name + "' (expected json or csv)");
}

const char* to_string(ReportFormat f) { return f == ReportFormat::json ? "json" : "csv"; }

const std::vector<std::string>& prop_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& g : groups()) v.emplace_back(g.id);
    return v;
  }();
  return ids;
}

std::vector<CorpusFunction> resolve_corpus(const RunConfig& cfg) {
  for (int k : cfg.k_values) {
    if (k < 2) throw ConfigError("k values must be >= 2, got " + std::to_string(k));
  }
  for (std::size_t n : cfg.n_values) {
    if (n < 1) throw ConfigError("n values must be >= 1");
  }
  if (cfg.grid_n < 2) throw ConfigError("grid must be >= 2");
  if (!(cfg.tol > 0.0)) throw ConfigError("tol must be positive");
  if (!selects_all(cfg.props)) {
    for (const auto& p : cfg.props) {
      if (std::find(prop_ids().begin(), prop_ids().end(), p) == prop_ids().end()) {
        throw ConfigError("unknown proposition id '" + p + "'");
      }
    }
  }

  std::vector<CorpusFunction> corpus =
      cfg.corpus_file.empty() ? standard_corpus(cfg.interval) : load_corpus_file(cfg.corpus_file);
  if (selects_all(cfg.corpus_filter)) return corpus;

  std::vector<CorpusFunction> picked;
  for (const auto& id : cfg.corpus_filter) {
    auto it = std::find_if(corpus.begin(), corpus.end(),
                           [&](const CorpusFunction& f) { return f.id() == id; });
    if (it == corpus.end()) throw ConfigError("unknown corpus id '" + id + "'");
    if (std::none_of(picked.begin(), picked.end(),
                     [&](const CorpusFunction& f) { return f.id() == id; })) {
      picked.push_back(*it);
    }
  }
  return picked;
}

Report run_suite(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<CorpusFunction> corpus = resolve_corpus(cfg);

  ModulusCache cache;
  CheckOptions opts;
  opts.grid_n = cfg.grid_n;
  opts.verdict_tol = cfg.tol;
  opts.cache = &cache;

  const bool all_props = selects_all(cfg.props);
  Report report;
  report.config = cfg;
  for (const auto& f : corpus) {
    const auto parts = sweep_partitions(f.domain(), cfg);
    for (const auto& g : groups()) {
      if (!all_props && std::find(cfg.props.begin(), cfg.props.end(), g.id) == cfg.props.end()) {
        continue;
      }
      if (!satisfies(f.smoothness(), g.needs)) {
        report.verdicts.push_back(skipped_verdict(g.id, f.id(), describe(g.needs)));
        continue;
      }
      run_group(g, f, cfg, parts, opts, report.verdicts);
    }
  }

  std::stable_sort(report.verdicts.begin(), report.verdicts.end(),
                   [](const BoundVerdict& x, const BoundVerdict& y) {
                     return std::tie(x.prop_id, x.function_id, x.params) <
                            std::tie(y.prop_id, y.function_id, y.params);
                   });
  report.summary = summarize(report.verdicts);
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

Summary summarize(const std::vector<BoundVerdict>& verdicts) {
  Summary s;
  for (const auto& v : verdicts) {
    ++s.total;
    if (v.skipped()) {
      ++s.skipped;
      continue;
    }
    if (v.holds) {
      ++s.holds;
    } else {
      ++s.fails;
      if (v.confidence == Confidence::normal) ++s.fails_normal_confidence;
    }
    if (v.confidence == Confidence::low) ++s.low_confidence;
  }
  return s;
}

int exit_code(const Report& r) { return summarize(r.verdicts).fails_normal_confidence == 0 ? 0 : 1; }

nlohmann::json report_to_json(const Report& r) {
  using nlohmann::json;
  const RunConfig& c = r.config;
  json config = {{"interval", {c.interval.a(), c.interval.b()}},
                 {"corpus", c.corpus_filter},
                 {"props", c.props},
                 {"k", c.k_values},
                 {"n", c.n_values},
                 {"grid", c.grid_n},
                 {"tol", c.tol},
                 {"seed", c.seed},
                 {"random_partitions", c.random_partitions},
                 {"corpus_file", c.corpus_file},
                 {"format", to_string(c.format)}};

  json verdicts = json::array();
  for (const auto& v : r.verdicts) {
    json params = json::object();
    for (const auto& [key, value] : v.params) params[key] = number_or_null(value);
    json item = {{"prop_id", v.prop_id}, {"function_id", v.function_id}, {"params", params}};
    if (v.skipped()) {
      item["lhs"] = item["rhs"] = item["margin"] = item["holds"] = item["confidence"] = nullptr;
      item["status"] = "skipped";
      item["skipped"] = v.skip_reason;
    } else {
      item["lhs"] = number_or_null(v.lhs);
      item["rhs"] = number_or_null(v.rhs);
      item["margin"] = number_or_null(v.margin);
      item["holds"] = v.holds;
      item["confidence"] = to_string(v.confidence);
      item["status"] = v.holds ? "holds" : "fails";
    }
    if (!v.note.empty()) item["note"] = v.note;
    verdicts.push_back(std::move(item));
  }

  const Summary& s = r.summary;
  json summary = {{"total", s.total},
                  {"holds", s.holds},
                  {"fails", s.fails},
                  {"fails_normal_confidence", s.fails_normal_confidence},
                  {"low_confidence", s.low_confidence},
                  {"skipped", s.skipped}};
  return {{"config", config},
          {"verdicts", verdicts},
          {"summary", summary},
          {"tool_version", r.tool_version},
          {"wall_time", r.wall_time}};
}

void write_json(const Report& r, std::ostream& out) { out << report_to_json(r).dump(2) << '\n'; }

void write_csv(const Report& r, std::ostream& out) {
  std::set<std::string> keys;
  for (const auto& v : r.verdicts) {
    for (const auto& kv : v.params) keys.insert(kv.first);
  }
  out << "prop_id,function_id,lhs,rhs,margin,holds,confidence";
  for (const auto& k : keys) out << ",param_" << csv_field(k);
  out << '\n';
  for (const auto& v : r.verdicts) {
    out << csv_field(v.prop_id) << ',' << csv_field(v.function_id) << ',';
    if (v.skipped()) {
      out << ",,,skipped,";
    } else {
      out << format_number(v.lhs) << ',' << format_number(v.rhs) << ','
          << format_number(v.margin) << ',' << (v.holds ? "true" : "false") << ','
          << to_string(v.confidence);
    }
    for (const auto& k : keys) {
      out << ',';
      auto it = v.params.find(k);
      if (it != v.params.end()) out << format_number(it->second);
    }
    out << '\n';
  }
}

void emit_report(const Report& r, ReportFormat format, const std::string& path) {
  auto write = [&](std::ostream& out) {
    if (format == ReportFormat::json) {
      write_json(r, out);
    } else {
      write_csv(r, out);
    }
  };
  if (path.empty() || path == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report file '" + path + "' for writing");
  write(out);
  out.flush();
  if (!out) throw std::runtime_error("failed writing report file '" + path + "'");
}

}  // namespace bullen
