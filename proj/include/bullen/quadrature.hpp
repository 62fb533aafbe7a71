#pragma once

#include <cstddef>

#include "bullen/function_model.hpp"
#include "bullen/partition.hpp"

namespace bullen {

/// Absolute integration tolerance used by every verification run.
inline constexpr double kIntegrationTol = 1e-10;

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;  ///< absolute, >= 0
  std::size_t evaluations = 0;
};

/// Integral of f over `over`. Uses F(b) - F(a) with zero error estimate when
/// the exact antiderivative is known, otherwise integrate_adaptive.
IntegralResult integrate(const CorpusFunction& f, const Interval& over, double tol);

/// Globally adaptive Gauss-Kronrod 7/15: the piece with the largest error
/// estimate is bisected until the estimates sum below tol. Throws
/// IntegrationError (carrying the best value) once max_pieces is reached or
/// a piece becomes too narrow to split.
IntegralResult integrate_adaptive(const Evaluator& f, const Interval& over, double tol,
                                  std::size_t max_pieces = 20000);

/// B(f) = (f(a) + f(b))/2 + f((a+b)/2) - 2/(b-a) * int_a^b f.
double bullen(const CorpusFunction& f, const Interval& over, double tol = kIntegrationTol);

/// Length-weighted mean of per-piece Bullen values; each piece is integrated
/// on its own and the sum runs in ascending piece order.
double composite_bullen(const CorpusFunction& f, const Partition& p,
                        double tol = kIntegrationTol);

/// T_x(f) = [(x-a) f(a) + (b-a) f(x) + (b-x) f(b)] / 2 - int_a^b f.
/// At the midpoint T_x(f) = (b-a)/2 * B(f).
double point_functional(const CorpusFunction& f, const Interval& over, double x,
                        double tol = kIntegrationTol);

}  // namespace bullen
