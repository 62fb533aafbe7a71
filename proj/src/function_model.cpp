#include "bullen/function_model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <json.hpp>

#include "bullen/errors.hpp"

namespace bullen {

namespace {

SmoothnessClass smooth_c2(bool convex) { return {true, true, true, true, convex}; }

double sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

CorpusFunction::CorpusFunction(Parts parts) : parts_(std::move(parts)) {
  if (parts_.id.empty()) throw UsageError("corpus function needs a non-empty id");
  if (!parts_.f) throw UsageError("corpus function '" + parts_.id + "' has no evaluator");
  if (!parts_.smoothness.consistent()) {
    throw UsageError("corpus function '" + parts_.id +
                     "': smoothness flags violate c2 => c1 => lipschitz => continuous");
  }
  if (parts_.smoothness.c1 && !parts_.d1) {
    throw UsageError("corpus function '" + parts_.id + "' is C1 but has no first derivative");
  }
  if (parts_.smoothness.c2 && !parts_.d2) {
    throw UsageError("corpus function '" + parts_.id + "' is C2 but has no second derivative");
  }
  const Interval& d = parts_.domain;
  for (double x : {d.a(), d.midpoint(), d.b()}) {
    if (!std::isfinite(parts_.f(x))) {
      throw DomainError("corpus function '" + parts_.id + "' is not finite at x = " +
                        std::to_string(x));
    }
  }
}

const Evaluator& CorpusFunction::d1() const {
  if (!parts_.d1) throw ClassError("'" + parts_.id + "' has no first derivative");
  return parts_.d1;
}

const Evaluator& CorpusFunction::d2() const {
  if (!parts_.d2) throw ClassError("'" + parts_.id + "' has no second derivative");
  return parts_.d2;
}

const Evaluator& CorpusFunction::antiderivative() const {
  if (!parts_.antiderivative) throw ClassError("'" + parts_.id + "' has no antiderivative");
  return parts_.antiderivative;
}

std::optional<double> CorpusFunction::analytic_omega2(double h) const {
  if (!parts_.analytic_omega2) return std::nullopt;
  return parts_.analytic_omega2(h);
}

CorpusFunction CorpusFunction::renamed(std::string id) const {
  Parts p = parts_;
  p.id = std::move(id);
  return CorpusFunction(std::move(p));
}

CorpusFunction CorpusFunction::restricted(const Interval& sub) const {
  if (!parts_.domain.contains(sub)) {
    throw DomainError("restriction of '" + parts_.id + "' leaves its domain");
  }
  Parts p = parts_;
  p.domain = sub;
  // Closed-form moduli are tied to the original domain.
  p.analytic_omega2 = {};
  return CorpusFunction(std::move(p));
}

CorpusFunction CorpusFunction::without_antiderivative() const {
  Parts p = parts_;
  p.antiderivative = {};
  return CorpusFunction(std::move(p));
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"linear", "square",        "exp", "sin",
                                                 "hat",    "signed_square", "cusp"};
  return names;
}

CorpusFunction make_builtin(std::string_view name, const Interval& domain, std::string id) {
  if (id.empty()) id = std::string(name);
  const double m = domain.midpoint();
  const double b = domain.b();
  const double half = 0.5 * domain.length();

  if (name == "linear") {
    return make_affine(domain, 1.0, 0.0, std::move(id));
  }
  if (name == "square") {
    return CorpusFunction({std::move(id), domain, [](double x) { return x * x; }, smooth_c2(true),
                           [](double x) { return 2.0 * x; }, [](double) { return 2.0; },
                           [](double x) { return x * x * x / 3.0; },
                           [](double h) { return 2.0 * h * h; }});
  }
  if (name == "exp") {
    // sup_x e^x (e^h - 1)^2 over x <= b - 2h is attained at x = b - 2h.
    return CorpusFunction({std::move(id), domain, [](double x) { return std::exp(x); },
                           smooth_c2(true), [](double x) { return std::exp(x); },
                           [](double x) { return std::exp(x); },
                           [](double x) { return std::exp(x); },
                           [b](double h) {
                             const double s = -std::expm1(-h);
                             return std::exp(b) * s * s;
                           }});
  }
  if (name == "sin") {
    return CorpusFunction({std::move(id), domain, [](double x) { return std::sin(x); },
                           smooth_c2(false), [](double x) { return std::cos(x); },
                           [](double x) { return -std::sin(x); },
                           [](double x) { return -std::cos(x); }});
  }
  if (name == "hat") {
    // Centred second difference across the kink gives 2u for u <= (b-a)/2.
    return CorpusFunction({std::move(id), domain, [m](double x) { return std::abs(x - m); },
                           SmoothnessClass{true, true, false, false, true}, {}, {},
                           [m](double x) { return 0.5 * (x - m) * std::abs(x - m); },
                           [half](double h) { return 2.0 * std::min(h, half); }});
  }
  if (name == "signed_square") {
    return CorpusFunction({std::move(id), domain,
                           [m](double x) { return (x - m) * std::abs(x - m); },
                           SmoothnessClass{true, true, true, false, false},
                           [m](double x) { return 2.0 * std::abs(x - m); }, {},
                           [m](double x) {
                             const double s = std::abs(x - m);
                             return s * s * s / 3.0;
                           }});
  }
  if (name == "cusp") {
    return CorpusFunction({std::move(id), domain,
                           [m](double x) { return std::sqrt(std::abs(x - m)); },
                           SmoothnessClass{true, false, false, false, false}, {}, {},
                           [m](double x) {
                             const double s = std::abs(x - m);
                             return sign(x - m) * (2.0 / 3.0) * s * std::sqrt(s);
                           }});
  }
  throw UsageError("unknown builtin function '" + std::string(name) + "'");
}

CorpusFunction make_affine(const Interval& domain, double slope, double intercept,
                           std::string id) {
  return CorpusFunction({std::move(id), domain,
                         [slope, intercept](double x) { return slope * x + intercept; },
                         smooth_c2(true), [slope](double) { return slope; },
                         [](double) { return 0.0; },
                         [slope, intercept](double x) {
                           return 0.5 * slope * x * x + intercept * x;
                         },
                         [](double) { return 0.0; }});
}

CorpusFunction linear_combination(double alpha, const CorpusFunction& f, double beta,
                                  const CorpusFunction& g, std::string id) {
  if (!(f.domain() == g.domain())) {
    throw DomainError("linear_combination needs a common domain");
  }
  if (id.empty()) id = f.id() + "+" + g.id();
  const SmoothnessClass& cf = f.smoothness();
  const SmoothnessClass& cg = g.smoothness();
  SmoothnessClass cls{cf.continuous && cg.continuous, cf.lipschitz && cg.lipschitz,
                      cf.c1 && cg.c1, cf.c2 && cg.c2,
                      cf.convex && cg.convex && alpha >= 0.0 && beta >= 0.0};
  auto combine = [alpha, beta](const Evaluator& u, const Evaluator& v) -> Evaluator {
    if (!u || !v) return {};
    return [alpha, beta, u, v](double x) { return alpha * u(x) + beta * v(x); };
  };
  const Evaluator none;
  return CorpusFunction({std::move(id), f.domain(), combine(f.evaluator(), g.evaluator()), cls,
                         f.has_d1() && g.has_d1() ? combine(f.d1(), g.d1()) : none,
                         f.has_d2() && g.has_d2() ? combine(f.d2(), g.d2()) : none,
                         f.has_antiderivative() && g.has_antiderivative()
                             ? combine(f.antiderivative(), g.antiderivative())
                             : none});
}

CorpusFunction scaled(double alpha, const CorpusFunction& f, std::string id) {
  if (id.empty()) id = f.id() + "*" + std::to_string(alpha);
  auto scale = [alpha](const Evaluator& u) -> Evaluator {
    if (!u) return {};
    return [alpha, u](double x) { return alpha * u(x); };
  };
  SmoothnessClass cls = f.smoothness();
  cls.convex = cls.convex && alpha >= 0.0;
  const Evaluator none;
  Evaluator omega2;
  if (f.has_analytic_omega2()) {
    omega2 = [alpha, f](double h) { return std::abs(alpha) * *f.analytic_omega2(h); };
  }
  return CorpusFunction({std::move(id), f.domain(), scale(f.evaluator()), cls,
                         f.has_d1() ? scale(f.d1()) : none, f.has_d2() ? scale(f.d2()) : none,
                         f.has_antiderivative() ? scale(f.antiderivative()) : none, omega2});
}

CorpusFunction derivative_of(const CorpusFunction& f) {
  if (!f.smoothness().c1) {
    throw ClassError("derivative_of('" + f.id() + "') requires a C1 function");
  }
  const bool c2 = f.smoothness().c2;
  return CorpusFunction({f.id() + "'", f.domain(), f.d1(),
                         SmoothnessClass{true, c2, c2, false, false},
                         c2 ? f.d2() : Evaluator{}, {}, f.evaluator()});
}

std::vector<CorpusFunction> standard_corpus(const Interval& domain) {
  std::vector<CorpusFunction> out;
  out.reserve(builtin_names().size());
  for (const auto& name : builtin_names()) out.push_back(make_builtin(name, domain));
  return out;
}

double sup_norm(const Evaluator& f, const Interval& domain, std::size_t grid_n) {
  if (grid_n < 2) throw UsageError("sup_norm requires grid_n >= 2");
  double best = 0.0;
  for (std::size_t i = 0; i <= grid_n; ++i) {
    best = std::max(best, std::abs(f(domain.grid_node(i, grid_n))));
  }
  return best;
}

GridRange grid_range(const Evaluator& f, const Interval& domain, std::size_t grid_n) {
  if (grid_n < 2) throw UsageError("grid_range requires grid_n >= 2");
  GridRange r{f(domain.a()), f(domain.a())};
  for (std::size_t i = 1; i <= grid_n; ++i) {
    const double v = f(domain.grid_node(i, grid_n));
    r.min = std::min(r.min, v);
    r.max = std::max(r.max, v);
  }
  return r;
}

std::vector<CorpusFunction> parse_corpus_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("corpus file is not valid JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ConfigError("corpus file must hold a JSON array");

  std::vector<CorpusFunction> out;
  std::set<std::string> seen;
  for (const auto& rec : doc) {
    if (!rec.is_object() || !rec.contains("id") || !rec.contains("a") || !rec.contains("b") ||
        !rec.contains("expr")) {
      throw ConfigError("corpus record needs id, a, b and expr: " + rec.dump());
    }
    if (!rec["id"].is_string() || !rec["expr"].is_string() || !rec["a"].is_number() ||
        !rec["b"].is_number()) {
      throw ConfigError("corpus record has wrongly typed fields: " + rec.dump());
    }
    const auto id = rec["id"].get<std::string>();
    const auto expr = rec["expr"].get<std::string>();
    if (!seen.insert(id).second) throw ConfigError("duplicate corpus id '" + id + "'");
    const auto& names = builtin_names();
    if (std::find(names.begin(), names.end(), expr) == names.end()) {
      throw ConfigError("corpus record '" + id + "' uses unknown expr '" + expr + "'");
    }
    try {
      out.push_back(make_builtin(expr, Interval(rec["a"].get<double>(), rec["b"].get<double>()), id));
    } catch (const DomainError& e) {
      throw ConfigError("corpus record '" + id + "': " + e.what());
    }
  }
  return out;
}

std::vector<CorpusFunction> load_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open corpus file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_corpus_json(buf.str());
}

}  // namespace bullen
