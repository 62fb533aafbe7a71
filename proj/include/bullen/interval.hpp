#pragma once

#include <cstddef>

namespace bullen {

/// Compact interval [a, b] with a < b, both finite.
class Interval {
 public:
  Interval(double a, double b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double length() const noexcept { return b_ - a_; }
  double midpoint() const noexcept { return 0.5 * (a_ + b_); }

  bool contains(double x) const noexcept { return x >= a_ && x <= b_; }
  bool contains(const Interval& other) const noexcept {
    return other.a_ >= a_ && other.b_ <= b_;
  }

  /// i-th node of the equispaced grid with n steps. Node 2i of the 2n-grid is
  /// bitwise equal to node i of the n-grid, so doubled grids are nested.
  double grid_node(std::size_t i, std::size_t n) const noexcept;

  friend bool operator==(const Interval&, const Interval&) = default;

 private:
  double a_;
  double b_;
};

}  // namespace bullen
