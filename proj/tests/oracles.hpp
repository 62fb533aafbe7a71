#pragma once

// Independent reference computations used only by the tests. None of these
// call into the library's numerical code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include <json.hpp>

namespace oracle {

using Fn = std::function<double(double)>;

/// Composite Simpson rule with n (even) panels.
inline double simpson(const Fn& f, double a, double b, std::size_t n = 20000) {
  if (n % 2) ++n;
  const double h = (b - a) / static_cast<double>(n);
  double odd = 0.0, even = 0.0;
  for (std::size_t i = 1; i < n; ++i) {
    const double v = f(a + h * static_cast<double>(i));
    (i % 2 ? odd : even) += v;
  }
  return h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even);
}

/// Bullen functional from Simpson's rule.
inline double bullen_simpson(const Fn& f, double a, double b) {
  return 0.5 * (f(a) + f(b)) + f(0.5 * (a + b)) - 2.0 / (b - a) * simpson(f, a, b);
}

/// Modulus by a plain double loop over an n-point grid, steps u <= h.
inline double brute_modulus(const Fn& f, double a, double b, int order, double h,
                            std::size_t n = 800) {
  const double dx = (b - a) / static_cast<double>(n);
  std::vector<double> s(n + 1);
  for (std::size_t i = 0; i <= n; ++i) s[i] = f(a + dx * static_cast<double>(i));
  double best = 0.0;
  for (std::size_t j = 1; static_cast<double>(j) * dx <= h * (1 + 1e-12); ++j) {
    for (std::size_t i = 0; i + order * j <= n; ++i) {
      const double d = order == 1 ? s[i + j] - s[i] : s[i + 2 * j] - 2 * s[i + j] + s[i];
      best = std::max(best, std::abs(d));
    }
  }
  return best;
}

/// sup over x <= t <= y of ((t-x) w(y) + (y-t) w(x)) / (y-x), with (0,0)
/// prepended to the sample points.
inline double chord_envelope(std::vector<double> xs, std::vector<double> ws, double t) {
  xs.insert(xs.begin(), 0.0);
  ws.insert(ws.begin(), 0.0);
  double best = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (xs[i] == t) best = std::max(best, ws[i]);
    if (xs[i] > t) continue;
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      if (xs[j] < t) continue;
      const double v = ((t - xs[i]) * ws[j] + (xs[j] - t) * ws[i]) / (xs[j] - xs[i]);
      best = std::max(best, v);
    }
  }
  return best;
}

struct Tally {
  std::size_t total = 0, holds = 0, fails = 0, fails_normal = 0, low = 0, skipped = 0;
};

/// Recount a report's verdict list from its JSON form.
inline Tally recount(const nlohmann::json& report) {
  Tally t;
  for (const auto& v : report.at("verdicts")) {
    ++t.total;
    const auto status = v.at("status").get<std::string>();
    if (status == "skipped") {
      ++t.skipped;
      continue;
    }
    const bool low = v.at("confidence").get<std::string>() == "low";
    if (low) ++t.low;
    if (v.at("holds").get<bool>()) {
      ++t.holds;
    } else {
      ++t.fails;
      if (!low) ++t.fails_normal;
    }
  }
  return t;
}

}  // namespace oracle
