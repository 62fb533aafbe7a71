#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bullen/interval.hpp"

namespace bullen {

using Evaluator = std::function<double(double)>;

/// Smoothness flags used to route a function to the inequalities that apply.
/// Chain: c2 => c1 => lipschitz => continuous.
struct SmoothnessClass {
  bool continuous = true;
  bool lipschitz = false;
  bool c1 = false;
  bool c2 = false;
  bool convex = false;

  bool consistent() const noexcept {
    return (!c2 || c1) && (!c1 || lipschitz) && (!lipschitz || continuous);
  }

  friend bool operator==(const SmoothnessClass&, const SmoothnessClass&) = default;
};

/// A named continuous function on a compact interval, with optional exact
/// first/second derivatives, antiderivative and closed-form second modulus.
///
/// An empty Evaluator means "not available". The constructor enforces the
/// class invariants: d1 whenever c1, d2 whenever c2.
class CorpusFunction {
 public:
  struct Parts {
    std::string id;
    Interval domain;
    Evaluator f;
    SmoothnessClass smoothness;
    Evaluator d1 = {};
    Evaluator d2 = {};
    Evaluator antiderivative = {};
    Evaluator analytic_omega2 = {};
  };

  explicit CorpusFunction(Parts parts);

  const std::string& id() const noexcept { return parts_.id; }
  const Interval& domain() const noexcept { return parts_.domain; }
  const SmoothnessClass& smoothness() const noexcept { return parts_.smoothness; }

  double operator()(double x) const { return parts_.f(x); }
  const Evaluator& evaluator() const noexcept { return parts_.f; }

  bool has_d1() const noexcept { return static_cast<bool>(parts_.d1); }
  bool has_d2() const noexcept { return static_cast<bool>(parts_.d2); }
  bool has_antiderivative() const noexcept { return static_cast<bool>(parts_.antiderivative); }
  bool has_analytic_omega2() const noexcept { return static_cast<bool>(parts_.analytic_omega2); }

  // These throw ClassError when the requested piece is absent.
  const Evaluator& d1() const;
  const Evaluator& d2() const;
  const Evaluator& antiderivative() const;

  std::optional<double> analytic_omega2(double h) const;

  /// Copy with a different id or domain (domain must lie inside the original
  /// one; evaluators are reused as-is).
  CorpusFunction renamed(std::string id) const;
  CorpusFunction restricted(const Interval& sub) const;

  /// Drops the antiderivative so integrals go through the adaptive rule.
  CorpusFunction without_antiderivative() const;

 private:
  Parts parts_;
};

/// Names accepted by make_builtin and by corpus files.
const std::vector<std::string>& builtin_names();

/// Builds one of the whitelisted functions:
///   linear         x
///   square         x^2
///   exp            e^x
///   sin            sin x
///   hat            |x - m|               m = midpoint of the domain
///   signed_square  (x - m)|x - m|
///   cusp           |x - m|^(1/2)
/// Throws UsageError for unknown names.
CorpusFunction make_builtin(std::string_view name, const Interval& domain,
                            std::string id = {});

/// slope * x + intercept; convex, C^2, second modulus identically 0.
CorpusFunction make_affine(const Interval& domain, double slope, double intercept,
                           std::string id = "affine");

/// alpha * f + beta * g on the common domain of f and g.
CorpusFunction linear_combination(double alpha, const CorpusFunction& f, double beta,
                                  const CorpusFunction& g, std::string id = {});

CorpusFunction scaled(double alpha, const CorpusFunction& f, std::string id = {});

/// f' as a corpus function in its own right (antiderivative = f). Requires c1.
CorpusFunction derivative_of(const CorpusFunction& f);

/// The seven builtins on the given domain, ids equal to the builtin names.
std::vector<CorpusFunction> standard_corpus(const Interval& domain);

/// Max of |f| over the grid_n + 1 equispaced nodes. A lower estimate of the
/// sup norm that is nondecreasing under grid doubling and converges as
/// grid_n grows. Requires grid_n >= 2.
double sup_norm(const Evaluator& f, const Interval& domain, std::size_t grid_n);

/// Grid min and max of f (used for the m, M constants of the second
/// derivative sandwich).
struct GridRange {
  double min;
  double max;
};
GridRange grid_range(const Evaluator& f, const Interval& domain, std::size_t grid_n);

/// Corpus files: JSON array of {"id", "a", "b", "expr"} with expr taken from
/// builtin_names(). Ids must be unique.
std::vector<CorpusFunction> parse_corpus_json(std::string_view text);
std::vector<CorpusFunction> load_corpus_file(const std::string& path);

}  // namespace bullen
