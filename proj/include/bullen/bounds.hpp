#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "bullen/function_model.hpp"
#include "bullen/kfunctional.hpp"
#include "bullen/moduli.hpp"
#include "bullen/partition.hpp"
#include "bullen/quadrature.hpp"

namespace bullen {

/// Constants of an operator H : C[a,b] -> F with
///   ||H(f+g)|| <= gamma (||Hf|| + ||Hg||),
///   ||Hf|| <= alpha ||f||,
///   ||Hg|| <= beta0 ||g|| + beta1 ||g'|| + beta2 ||g''||.
struct OperatorConstants {
  double gamma = 1.0;
  double alpha = 0.0;
  double beta0 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;

  /// Throws UsageError unless all are nonnegative and gamma >= 1.
  void validate() const;
};

/// gamma = 1, alpha = 4, beta0 = beta1 = 0, beta2 = (b-a)^2/24.
OperatorConstants bullen_constants(const Interval& domain);

enum class Confidence { normal, low };

const char* to_string(Confidence c);

/// One checked inequality lhs <= rhs.
struct BoundVerdict {
  std::string prop_id;
  std::string function_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  ///< rhs - lhs
  bool holds = false;
  std::map<std::string, double> params;
  Confidence confidence = Confidence::normal;
  std::string note;
  std::string skip_reason;  ///< non-empty for pairs whose preconditions fail

  bool skipped() const noexcept { return !skip_reason.empty(); }
};

/// tol_factor * max(1, |rhs|).
double verdict_tolerance(double rhs, double tol_factor);

BoundVerdict make_verdict(std::string prop_id, std::string function_id, double lhs, double rhs,
                          std::map<std::string, double> params, double tol_factor);
BoundVerdict skipped_verdict(std::string prop_id, std::string function_id,
                             std::string reason);

struct CheckOptions {
  std::size_t grid_n = kDefaultGrid;
  double verdict_tol = 1e-8;
  double integration_tol = kIntegrationTol;
  std::size_t curve_nodes = kDefaultCurveNodes;
  ModulusCache* cache = nullptr;  ///< optional table sharing across checks
};

// Every check below evaluates its right-hand side at opts.grid_n. Checks whose
// right side carries a modulus are also evaluated at twice the grid; a right
// side that moves by more than 1% marks the verdict low-confidence. Any check
// that fails at opts.grid_n is re-run at twice the grid and the refined
// verdict is reported.

/// Convex f: 0 <= B(f). UsageError for non-convex input.
BoundVerdict thmA_check(const CorpusFunction& f, const CheckOptions& opts = {});

/// m (b-a)^2/24 <= B(f) <= M (b-a)^2/24 with m, M the grid min/max of f''.
/// ClassError unless f is C^2.
std::pair<BoundVerdict, BoundVerdict> eq1_sandwich(const CorpusFunction& f,
                                                   const CheckOptions& opts = {});

/// gamma { beta0 ||f|| + 2 beta1/h omega1(f,h)
///         + 3/4 (alpha + beta0 + 2 beta1/h + 2 beta2/h^2) omega2(f,h) }
double three_constant_rhs(const OperatorConstants& c, const CorpusFunction& f, double h,
                          const CheckOptions& opts = {});

/// |B(f)| <= (3 + k^2/16) omega2(f, (b-a)/k), k >= 2.
BoundVerdict prop2_check(const CorpusFunction& f, int k, const CheckOptions& opts = {});

/// |B(f)| <= (1/16 + 3/k^2) (b-a)^2 ||f''||, k >= 2.
BoundVerdict remark1_check(const CorpusFunction& f, int k, const CheckOptions& opts = {});

/// |B(f)| <= 4 K(f; (b-a)^2/96). The right side uses the upper K estimate;
/// params carry rhs_lower = 4 * lower estimate.
BoundVerdict prop3_check(const CorpusFunction& f, const CheckOptions& opts = {});

/// |B(f)| <= 3 (b-a)^2/32 ||f''||.
BoundVerdict zhuk_consequence_check(const CorpusFunction& f, const CheckOptions& opts = {});

/// |B_c(f)| <= 4 ||f||, plus |B_c(f)| <= sum d^3/(24(b-a)) ||f''|| when f is C^2.
std::vector<BoundVerdict> prop4_check(const CorpusFunction& f, const Partition& p,
                                      const CheckOptions& opts = {});

/// |B_c(f)| <= (3 + sum d^3/(16 (b-a) h^2)) omega2(f, h),
/// h = sqrt(sum d^3/(b-a))/k, k >= 2.
BoundVerdict prop5_check(const CorpusFunction& f, const Partition& p, int k,
                         const CheckOptions& opts = {});

/// |B_c(f)| <= 4 K(f; sum d^3/(96(b-a))).
BoundVerdict prop6_check(const CorpusFunction& f, const Partition& p,
                         const CheckOptions& opts = {});

/// |B_c(f)| <= omega~(f', sum d^3/(24(b-a))). ClassError unless f is C^1.
BoundVerdict prop7_check(const CorpusFunction& f, const Partition& p,
                         const CheckOptions& opts = {});

/// |B(f)| <= omega~(f', (b-a)^2/24).
BoundVerdict prop8_check(const CorpusFunction& f, const CheckOptions& opts = {});

/// |B_c(f)| <= 2 ||f'||.
BoundVerdict c1_crude_check(const CorpusFunction& f, const Partition& p,
                            const CheckOptions& opts = {});

}  // namespace bullen
