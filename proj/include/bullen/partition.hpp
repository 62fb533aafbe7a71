#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "bullen/interval.hpp"

namespace bullen {

/// Ordered subdivision a = x_0 < x_1 < ... < x_n = b, n >= 1.
class Partition {
 public:
  /// Throws UsageError unless the nodes start at a, end at b and strictly
  /// increase.
  Partition(const Interval& domain, std::vector<double> nodes);

  const Interval& domain() const noexcept { return domain_; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  std::size_t size() const noexcept { return nodes_.size() - 1; }

  Interval piece(std::size_t i) const { return Interval(nodes_[i], nodes_[i + 1]); }

 private:
  Interval domain_;
  std::vector<double> nodes_;
};

Partition uniform(const Interval& domain, std::size_t n);

/// n - 1 interior nodes from a seeded mt19937_64 stream, kept only if they sit
/// at least (b - a) * 1e-6 away from every other node. Same seed, same nodes.
Partition random_partition(const Interval& domain, std::size_t n, std::uint64_t seed);

/// Sum of cubed piece lengths.
double cubic_sum(const Partition& p);

class NonConvergenceError : public std::runtime_error {
 public:
  NonConvergenceError(const std::string& what, Partition best)
      : std::runtime_error(what), best_(std::move(best)) {}
  const Partition& best() const noexcept { return best_; }

 private:
  Partition best_;
};

inline constexpr std::size_t kDefaultDescentSweeps = 200000;

/// Coordinate descent on the interior nodes for the cubic sum, started from
/// random_partition(domain, n, 0). Each move puts a node at the midpoint of its
/// neighbours, the exact minimiser of the two cubes it touches. Stops once a
/// full sweep moves no node by more than (b - a) * 1e-12.
Partition minimize_cubic_sum(const Interval& domain, std::size_t n,
                             std::size_t iters = kDefaultDescentSweeps);

/// JSON array of node values.
nlohmann::json partition_to_json(const Partition& p);
Partition partition_from_json(const nlohmann::json& nodes);

}  // namespace bullen
