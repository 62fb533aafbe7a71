#include "bullen/partition.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "bullen/errors.hpp"

namespace bullen {

Partition::Partition(const Interval& domain, std::vector<double> nodes)
    : domain_(domain), nodes_(std::move(nodes)) {
  if (nodes_.size() < 2) throw UsageError("partition needs at least two nodes");
  if (nodes_.front() != domain_.a() || nodes_.back() != domain_.b()) {
    throw UsageError("partition must start at a and end at b");
  }
  for (std::size_t i = 1; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > nodes_[i - 1])) {
      throw UsageError("partition nodes must be strictly increasing");
    }
  }
}

Partition uniform(const Interval& domain, std::size_t n) {
  if (n == 0) throw UsageError("uniform partition needs n >= 1");
  std::vector<double> nodes(n + 1);
  for (std::size_t i = 0; i <= n; ++i) nodes[i] = domain.grid_node(i, n);
  return Partition(domain, std::move(nodes));
}

Partition random_partition(const Interval& domain, std::size_t n, std::uint64_t seed) {
  if (n == 0) throw UsageError("random partition needs n >= 1");
  const double gap = domain.length() * 1e-6;
  std::mt19937_64 rng(seed);
  std::set<double> interior;
  while (interior.size() + 1 < n) {
    // 53 random bits mapped to [0, 1); independent of the standard library's
    // distribution implementations.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    const double x = domain.a() + u * domain.length();
    if (x - domain.a() < gap || domain.b() - x < gap) continue;
    auto next = interior.lower_bound(x);
    if (next != interior.end() && *next - x < gap) continue;
    if (next != interior.begin() && x - *std::prev(next) < gap) continue;
    interior.insert(x);
  }
  std::vector<double> nodes;
  nodes.reserve(n + 1);
  nodes.push_back(domain.a());
  nodes.insert(nodes.end(), interior.begin(), interior.end());
  nodes.push_back(domain.b());
  return Partition(domain, std::move(nodes));
}

double cubic_sum(const Partition& p) {
  double s = 0.0;
  const auto& x = p.nodes();
  for (std::size_t i = 0; i + 1 < x.size(); ++i) {
    const double d = x[i + 1] - x[i];
    s += d * d * d;
  }
  return s;
}

Partition minimize_cubic_sum(const Interval& domain, std::size_t n, std::size_t iters) {
  if (n == 0) throw UsageError("minimize_cubic_sum needs n >= 1");
  if (n == 1) return uniform(domain, 1);

  std::vector<double> x = random_partition(domain, n, 0).nodes();
  const double stop = domain.length() * 1e-12;
  for (std::size_t sweep = 0; sweep < iters; ++sweep) {
    double moved = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      const double target = 0.5 * (x[i - 1] + x[i + 1]);
      moved = std::max(moved, std::abs(target - x[i]));
      x[i] = target;
    }
    if (moved <= stop) return Partition(domain, std::move(x));
  }
  throw NonConvergenceError("cubic-sum descent did not converge within " +
                                std::to_string(iters) + " sweeps",
                            Partition(domain, x));
}

nlohmann::json partition_to_json(const Partition& p) { return nlohmann::json(p.nodes()); }

Partition partition_from_json(const nlohmann::json& nodes) {
  if (!nodes.is_array() || nodes.size() < 2) {
    throw UsageError("partition JSON must be an array of at least two numbers");
  }
  std::vector<double> x;
  x.reserve(nodes.size());
  for (const auto& v : nodes) {
    if (!v.is_number()) throw UsageError("partition JSON holds a non-number");
    x.push_back(v.get<double>());
  }
  const Interval domain(x.front(), x.back());
  return Partition(domain, std::move(x));
}

}  // namespace bullen
