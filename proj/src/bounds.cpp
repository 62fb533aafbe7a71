#include "bullen/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "bullen/errors.hpp"

namespace bullen {

namespace {

double modulus(const CorpusFunction& f, int order, double h, std::size_t grid,
               const CheckOptions& opts) {
  if (opts.cache) return opts.cache->table(f, order, grid)->at(h);
  return order == 1 ? omega1(f, h, grid) : omega2(f, h, grid);
}

ModulusCurve derivative_majorant(const CorpusFunction& f, std::size_t grid,
                                 const CheckOptions& opts) {
  const CorpusFunction df = derivative_of(f);
  if (opts.cache) {
    return least_concave_majorant(modulus_curve(*opts.cache->table(df, 1, grid), opts.curve_nodes));
  }
  return least_concave_majorant(modulus_curve(df, 1, opts.curve_nodes, grid));
}

void require_c1(const CorpusFunction& f, const char* what) {
  if (!f.smoothness().c1) throw ClassError(std::string(what) + " requires a C1 function, got '" + f.id() + "'");
}

void require_c2(const CorpusFunction& f, const char* what) {
  if (!f.smoothness().c2) throw ClassError(std::string(what) + " requires a C2 function, got '" + f.id() + "'");
}

void require_k(int k) {
  if (k < 2) throw UsageError("k must be at least 2, got " + std::to_string(k));
}

void require_inside(const CorpusFunction& f, const Partition& p) {
  if (!f.domain().contains(p.domain())) {
    throw DomainError("partition leaves the domain of '" + f.id() + "'");
  }
}

// Evaluates at the working grid, refines as described in the header.
template <class Compute>
BoundVerdict settle(Compute&& compute, const CheckOptions& opts, bool uses_modulus) {
  BoundVerdict coarse = compute(opts.grid_n);
  coarse.params["grid_n"] = static_cast<double>(opts.grid_n);
  if (coarse.holds && !uses_modulus) return coarse;

  BoundVerdict fine = compute(2 * opts.grid_n);
  fine.params["grid_n"] = static_cast<double>(2 * opts.grid_n);
  const double scale = std::max(std::abs(coarse.rhs), std::abs(fine.rhs));
  const bool moved = std::abs(fine.rhs - coarse.rhs) > 0.01 * scale + 1e-12;

  const bool refined = !coarse.holds;
  BoundVerdict out = refined ? std::move(fine) : std::move(coarse);
  out.confidence = moved ? Confidence::low : Confidence::normal;
  if (refined) out.note += out.note.empty() ? "re-run at doubled grid" : "; re-run at doubled grid";
  return out;
}

double abs_bullen(const CorpusFunction& f, const CheckOptions& opts) {
  return std::abs(bullen(f, f.domain(), opts.integration_tol));
}

double abs_composite(const CorpusFunction& f, const Partition& p, const CheckOptions& opts) {
  return std::abs(composite_bullen(f, p, opts.integration_tol));
}

BoundVerdict k_functional_verdict(std::string prop_id, const CorpusFunction& f, double lhs,
                                  double t2, std::map<std::string, double> params,
                                  const CheckOptions& opts) {
  return settle(
      [&](std::size_t grid) {
        const KEstimate k = k_second(f, t2, default_windows(f.domain(), std::sqrt(t2)), grid,
                                     opts.cache);
        auto ps = params;
        ps["t2"] = t2;
        ps["rhs_lower"] = 4.0 * k.lower;
        BoundVerdict v = make_verdict(prop_id, f.id(), lhs, 4.0 * k.upper, std::move(ps),
                                      opts.verdict_tol);
        v.note = "upper-estimate check";
        if (lhs > 4.0 * k.lower) v.note += "; bound not informative";
        return v;
      },
      opts, false);
}

}  // namespace

void OperatorConstants::validate() const {
  if (!(gamma >= 1.0) || !(alpha >= 0.0) || !(beta0 >= 0.0) || !(beta1 >= 0.0) ||
      !(beta2 >= 0.0)) {
    throw UsageError("operator constants must be nonnegative with gamma >= 1");
  }
}

OperatorConstants bullen_constants(const Interval& domain) {
  const double len = domain.length();
  return {1.0, 4.0, 0.0, 0.0, len * len / 24.0};
}

const char* to_string(Confidence c) { return c == Confidence::normal ? "normal" : "low"; }

double verdict_tolerance(double rhs, double tol_factor) {
  return tol_factor * std::max(1.0, std::abs(rhs));
}

BoundVerdict make_verdict(std::string prop_id, std::string function_id, double lhs, double rhs,
                          std::map<std::string, double> params, double tol_factor) {
  BoundVerdict v;
  v.prop_id = std::move(prop_id);
  v.function_id = std::move(function_id);
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = rhs - lhs;
  v.holds = v.margin >= -verdict_tolerance(rhs, tol_factor);
  v.params = std::move(params);
  return v;
}

BoundVerdict skipped_verdict(std::string prop_id, std::string function_id, std::string reason) {
  BoundVerdict v;
  v.prop_id = std::move(prop_id);
  v.function_id = std::move(function_id);
  v.skip_reason = std::move(reason);
  return v;
}

BoundVerdict thmA_check(const CorpusFunction& f, const CheckOptions& opts) {
  if (!f.smoothness().convex) {
    throw UsageError("thmA_check requires a convex function, got '" + f.id() + "'");
  }
  const double b = bullen(f, f.domain(), opts.integration_tol);
  return make_verdict("thmA", f.id(), 0.0, b, {}, opts.verdict_tol);
}

std::pair<BoundVerdict, BoundVerdict> eq1_sandwich(const CorpusFunction& f,
                                                   const CheckOptions& opts) {
  require_c2(f, "eq1_sandwich");
  const double b = bullen(f, f.domain(), opts.integration_tol);
  const double len = f.domain().length();
  const double scale = len * len / 24.0;
  auto side = [&](bool upper) {
    return settle(
        [&](std::size_t grid) {
          const GridRange r = grid_range(f.d2(), f.domain(), grid);
          std::map<std::string, double> ps{{"m", r.min}, {"M", r.max}};
          return upper ? make_verdict("eq1.upper", f.id(), b, r.max * scale, ps, opts.verdict_tol)
                       : make_verdict("eq1.lower", f.id(), r.min * scale, b, ps, opts.verdict_tol);
        },
        opts, false);
  };
  return {side(false), side(true)};
}

double three_constant_rhs(const OperatorConstants& c, const CorpusFunction& f, double h,
                          const CheckOptions& opts) {
  c.validate();
  if (!(h > 0.0) || h > 0.5 * f.domain().length() * (1.0 + 1e-12)) {
    throw DomainError("three-constant estimate needs 0 < h <= (b-a)/2");
  }
  const double norm = c.beta0 != 0.0 ? sup_norm(f.evaluator(), f.domain(), opts.grid_n) : 0.0;
  const double w1 = c.beta1 != 0.0 ? modulus(f, 1, h, opts.grid_n, opts) : 0.0;
  const double w2 = modulus(f, 2, h, opts.grid_n, opts);
  return c.gamma * (c.beta0 * norm + 2.0 * c.beta1 / h * w1 +
                    0.75 * (c.alpha + c.beta0 + 2.0 * c.beta1 / h + 2.0 * c.beta2 / (h * h)) * w2);
}

BoundVerdict prop2_check(const CorpusFunction& f, int k, const CheckOptions& opts) {
  require_k(k);
  const double lhs = abs_bullen(f, opts);
  const double h = f.domain().length() / k;
  return settle(
      [&](std::size_t grid) {
        const double rhs = (3.0 + k * k / 16.0) * modulus(f, 2, h, grid, opts);
        return make_verdict("prop2", f.id(), lhs, rhs, {{"k", k}, {"h", h}}, opts.verdict_tol);
      },
      opts, true);
}

BoundVerdict remark1_check(const CorpusFunction& f, int k, const CheckOptions& opts) {
  require_k(k);
  require_c2(f, "remark1_check");
  const double lhs = abs_bullen(f, opts);
  const double len = f.domain().length();
  return settle(
      [&](std::size_t grid) {
        const double rhs =
            (1.0 / 16.0 + 3.0 / (k * k)) * len * len * sup_norm(f.d2(), f.domain(), grid);
        return make_verdict("remark1", f.id(), lhs, rhs, {{"k", k}}, opts.verdict_tol);
      },
      opts, false);
}

BoundVerdict prop3_check(const CorpusFunction& f, const CheckOptions& opts) {
  const double len = f.domain().length();
  return k_functional_verdict("prop3", f, abs_bullen(f, opts), len * len / 96.0, {}, opts);
}

BoundVerdict zhuk_consequence_check(const CorpusFunction& f, const CheckOptions& opts) {
  require_c2(f, "zhuk_consequence_check");
  const double lhs = abs_bullen(f, opts);
  const double len = f.domain().length();
  return settle(
      [&](std::size_t grid) {
        const double rhs = 3.0 * len * len / 32.0 * sup_norm(f.d2(), f.domain(), grid);
        return make_verdict("zhuk", f.id(), lhs, rhs, {}, opts.verdict_tol);
      },
      opts, false);
}

std::vector<BoundVerdict> prop4_check(const CorpusFunction& f, const Partition& p,
                                      const CheckOptions& opts) {
  require_inside(f, p);
  const double lhs = abs_composite(f, p, opts);
  const auto n = static_cast<double>(p.size());
  std::vector<BoundVerdict> out;
  out.push_back(settle(
      [&](std::size_t grid) {
        const double rhs = 4.0 * sup_norm(f.evaluator(), p.domain(), grid);
        return make_verdict("prop4.i", f.id(), lhs, rhs, {{"n", n}}, opts.verdict_tol);
      },
      opts, false));
  if (f.smoothness().c2) {
    const double weight = cubic_sum(p) / (24.0 * p.domain().length());
    out.push_back(settle(
        [&](std::size_t grid) {
          const double rhs = weight * sup_norm(f.d2(), p.domain(), grid);
          return make_verdict("prop4.ii", f.id(), lhs, rhs, {{"n", n}}, opts.verdict_tol);
        },
        opts, false));
  }
  return out;
}

BoundVerdict prop5_check(const CorpusFunction& f, const Partition& p, int k,
                         const CheckOptions& opts) {
  require_k(k);
  require_inside(f, p);
  const double lhs = abs_composite(f, p, opts);
  const double len = p.domain().length();
  const double cubes = cubic_sum(p);
  const double h = std::sqrt(cubes / len) / k;
  const double coeff = 3.0 + cubes / (16.0 * len * h * h);
  const auto n = static_cast<double>(p.size());
  return settle(
      [&](std::size_t grid) {
        const double rhs = coeff * modulus(f, 2, h, grid, opts);
        return make_verdict("prop5", f.id(), lhs, rhs, {{"k", k}, {"n", n}, {"h", h}},
                            opts.verdict_tol);
      },
      opts, true);
}

BoundVerdict prop6_check(const CorpusFunction& f, const Partition& p, const CheckOptions& opts) {
  require_inside(f, p);
  const double t2 = cubic_sum(p) / (96.0 * p.domain().length());
  return k_functional_verdict("prop6", f, abs_composite(f, p, opts), t2,
                              {{"n", static_cast<double>(p.size())}}, opts);
}

BoundVerdict prop7_check(const CorpusFunction& f, const Partition& p, const CheckOptions& opts) {
  require_c1(f, "prop7_check");
  require_inside(f, p);
  const double lhs = abs_composite(f, p, opts);
  const double t = cubic_sum(p) / (24.0 * p.domain().length());
  const auto n = static_cast<double>(p.size());
  return settle(
      [&](std::size_t grid) {
        const ModulusCurve majorant = derivative_majorant(f, grid, opts);
        const double rhs = majorant_eval(majorant, t);
        return make_verdict("prop7", f.id(), lhs, rhs, {{"n", n}, {"t", t}}, opts.verdict_tol);
      },
      opts, true);
}

BoundVerdict prop8_check(const CorpusFunction& f, const CheckOptions& opts) {
  BoundVerdict v = prop7_check(f, uniform(f.domain(), 1), opts);
  v.prop_id = "prop8";
  v.params.erase("n");
  return v;
}

BoundVerdict c1_crude_check(const CorpusFunction& f, const Partition& p,
                          const CheckOptions& opts) {
  require_c1(f, "c1_crude_check");
  require_inside(f, p);
  const double lhs = abs_composite(f, p, opts);
  const auto n = static_cast<double>(p.size());
  return settle(
      [&](std::size_t grid) {
        const double rhs = 2.0 * sup_norm(f.d1(), p.domain(), grid);
        return make_verdict("c1crude", f.id(), lhs, rhs, {{"n", n}}, opts.verdict_tol);
      },
      opts, false);
}

}  // namespace bullen
