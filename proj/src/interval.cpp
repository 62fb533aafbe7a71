#include "bullen/interval.hpp"

#include <cmath>
#include <string>

#include "bullen/errors.hpp"

namespace bullen {

Interval::Interval(double a, double b) : a_(a), b_(b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("interval endpoints must be finite");
  }
  if (!(a < b)) {
    throw DomainError("interval requires a < b, got [" + std::to_string(a) + ", " +
                      std::to_string(b) + "]");
  }
}

double Interval::grid_node(std::size_t i, std::size_t n) const noexcept {
  if (i >= n) return b_;
  // (b-a)*i is scaled exactly by powers of two, which keeps doubling nested.
  return a_ + (length() * static_cast<double>(i)) / static_cast<double>(n);
}

}  // namespace bullen
