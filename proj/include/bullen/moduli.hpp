#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "bullen/function_model.hpp"

namespace bullen {

inline constexpr std::size_t kDefaultGrid = 4096;

/// Largest admissible window: b - a for order 1, (b - a)/2 for order 2.
double max_window(const Interval& domain, int order);

/// Grid estimate of the modulus of continuity (order 1) or the second modulus
/// of smoothness (order 2):
///
///   order 1:  sup |f(x+u) - f(x)|
///   order 2:  sup |f(x+2u) - 2 f(x+u) + f(x)|
///
/// over grid nodes x and steps 0 < u <= h, where u ranges over multiples of
/// the grid spacing plus u = h itself. Every value is attained by f, so the
/// table is a lower estimate of the true modulus.
///
/// Construction tabulates the best difference for every grid step up to
/// h_limit once (O(n^2) at worst); lookups are then O(1), or O(n) when h is
/// not a multiple of the spacing. Immutable after construction.
class ModulusTable {
 public:
  ModulusTable(Evaluator f, const Interval& domain, int order, std::size_t grid_n,
               double h_limit = std::numeric_limits<double>::infinity(),
               Evaluator analytic = {});

  /// Table for a corpus function; order 2 picks up its closed-form modulus.
  static ModulusTable of(const CorpusFunction& f, int order, std::size_t grid_n,
                         double h_limit = std::numeric_limits<double>::infinity());

  int order() const noexcept { return order_; }
  const Interval& domain() const noexcept { return domain_; }
  std::size_t grid_n() const noexcept { return n_; }
  double max_window() const noexcept { return h_max_; }
  bool has_analytic() const noexcept { return static_cast<bool>(analytic_); }

  /// The modulus at h: the closed form when one is attached (after checking
  /// the grid value does not exceed it), else the grid estimate.
  /// Throws DomainError unless 0 < h <= max_window().
  double at(double h) const;

  /// Grid estimate, ignoring any closed form.
  double grid_value(double h) const;

 private:
  double off_grid_step(double h) const;
  void check_window(double h) const;

  Evaluator f_;
  Evaluator analytic_;
  Interval domain_;
  int order_;
  std::size_t n_;
  double spacing_;
  double h_max_;
  std::vector<double> samples_;
  std::vector<double> prefix_;  // prefix_[j]: best difference over steps 1..j
};

double omega1(const CorpusFunction& f, double h, std::size_t grid_n = kDefaultGrid);
double omega2(const CorpusFunction& f, double h, std::size_t grid_n = kDefaultGrid);

/// Sampled h -> omega(h) on ascending nodes in (0, H].
class ModulusCurve {
 public:
  /// Validates: order 1 or 2, matching sizes, nodes strictly ascending in
  /// (0, H], values nonnegative and nondecreasing; a majorant must also have
  /// nonincreasing slopes starting from the origin.
  ModulusCurve(int order, std::vector<double> nodes, std::vector<double> values,
               double max_window, bool is_majorant);

  int order() const noexcept { return order_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& values() const noexcept { return values_; }
  double max_window() const noexcept { return max_window_; }
  bool is_majorant() const noexcept { return is_majorant_; }
  bool empty() const noexcept { return nodes_.empty(); }

  /// "h,omega" header plus one row per node, 17 significant digits.
  void write_csv(std::ostream& out) const;

 private:
  int order_;
  std::vector<double> nodes_;
  std::vector<double> values_;
  double max_window_;
  bool is_majorant_;
};

/// omega at the m equispaced windows H/m, 2H/m, ..., H with a running maximum
/// applied. Requires m >= 2.
ModulusCurve modulus_curve(const ModulusTable& table, std::size_t m);
ModulusCurve modulus_curve(const CorpusFunction& f, int order, std::size_t m,
                           std::size_t grid_n = kDefaultGrid);

/// Upper concave envelope of {(0,0)} and the curve's points, computed with a
/// monotone-chain upper hull; collinear points are dropped. The nodes of the
/// result are the hull vertices other than the origin.
ModulusCurve least_concave_majorant(const ModulusCurve& curve);

/// Piecewise-linear interpolation through (0,0) and the majorant's nodes.
/// Throws DomainError for t outside [0, H].
double majorant_eval(const ModulusCurve& curve, double t);

/// Shares tables between checks; keyed by (function id, domain, order,
/// grid). Thread-safe.
class ModulusCache {
 public:
  std::shared_ptr<const ModulusTable> table(const CorpusFunction& f, int order,
                                            std::size_t grid_n);

 private:
  using Key = std::tuple<std::string, double, double, int, std::size_t>;
  std::mutex mutex_;
  std::map<Key, std::shared_ptr<const ModulusTable>> tables_;
};

}  // namespace bullen
