#pragma once

#include <cstddef>
#include <vector>

#include "bullen/function_model.hpp"
#include "bullen/moduli.hpp"

namespace bullen {

inline constexpr std::size_t kDefaultCurveNodes = 1024;

/// A discretised C^2 competitor g for the second K-functional, sampled on the
/// grid of its domain, with its measured distance sup|f - g| and effective
/// curvature sup|g''|.
struct SmootherCandidate {
  double window = 0.0;  ///< effective averaging support actually used
  Interval domain;
  std::vector<double> samples;
  double dist = 0.0;
  double curv = 0.0;

  /// Linear interpolation between grid samples.
  double operator()(double x) const;
  double value(double t2) const { return dist + t2 * curv; }
};

/// Twofold moving average of f with window h/2 each pass (a triangle kernel
/// of total support h), computed with cumulative sums on the grid. Outside
/// [a, b] f is continued linearly with the secant slope over width h, which
/// keeps affine functions fixed.
///
/// The curvature is the grid second divided difference of the smoothed
/// samples, evaluated through the identity
///   g[i+1] - 2g[i] + g[i-1] = (f[i+L] - 2f[i] + f[i-L]) / L^2
/// for an L-point box pair, which avoids cancellation in g itself.
SmootherCandidate steklov_candidate(const CorpusFunction& f, double h,
                                    std::size_t grid_n = kDefaultGrid);

/// Two-sided estimate of K(f; t^2; C, C^2).
struct KEstimate {
  double upper = 0.0;
  double lower = 0.0;
  double argmin_window = 0.0;  ///< 0 when f itself is the best competitor
};

/// {(b-a)/2^j : j = 1..8}, plus t when 0 < t <= (b-a)/2, ascending.
std::vector<double> default_windows(const Interval& domain, double t);

/// upper: best of the Steklov family over `windows` and, for C^2 functions,
/// f itself (distance 0, curvature sup|f''|).
/// lower: omega2(f, t)/4 with t = sqrt(t2) when t <= (b-a)/2, else 0; it
/// follows from omega2(f,t) <= 4||f-g|| + t^2||g''|| for every competitor g.
KEstimate k_second(const CorpusFunction& f, double t2, const std::vector<double>& windows,
                   std::size_t grid_n = kDefaultGrid, ModulusCache* cache = nullptr);

/// Zhuk's estimate (9/4) omega2(f, t) for 0 < t <= (b-a)/2.
double zhuk_bound(const CorpusFunction& f, double t, std::size_t grid_n = kDefaultGrid,
                  ModulusCache* cache = nullptr);

/// Upper estimate of K(f'; t; C^1, C^2) = inf_g ||f' - g'|| + t ||g''||.
/// Competitors: g' = first-order Steklov mean of f' over each window (f'
/// continued linearly outside [a, b]), g' = mid-range constant of f', and
/// g = f when f is C^2. Throws ClassError unless f is C^1.
double k_c1(const CorpusFunction& f, double t, const std::vector<double>& windows,
            std::size_t grid_n = kDefaultGrid);

/// k_c1(f, t) - omega~(f', 2t)/2, with the concave majorant built from the
/// order-1 curve of f' over [0, b-a]. Nonnegative up to grid error.
double paltanea_identity_residual(const CorpusFunction& f, double t,
                                  std::size_t grid_n = kDefaultGrid,
                                  std::size_t curve_nodes = kDefaultCurveNodes);

}  // namespace bullen
