#include "bullen/kfunctional.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bullen/errors.hpp"

namespace bullen {

namespace {

void check_window(const Interval& domain, double h) {
  if (!(h > 0.0) || h > 0.5 * domain.length() * (1.0 + 1e-12)) {
    throw DomainError("smoothing window " + std::to_string(h) + " outside (0, (b-a)/2]");
  }
}

void check_windows(const Interval& domain, const std::vector<double>& windows) {
  if (windows.empty()) throw UsageError("K-functional estimate needs at least one window");
  for (double w : windows) check_window(domain, w);
}

}  // namespace

double SmootherCandidate::operator()(double x) const {
  if (!domain.contains(x)) throw DomainError("candidate evaluated outside its domain");
  const std::size_t n = samples.size() - 1;
  const double pos = (x - domain.a()) / domain.length() * static_cast<double>(n);
  const auto i = std::min<std::size_t>(n - 1, static_cast<std::size_t>(pos));
  const double frac = pos - static_cast<double>(i);
  return samples[i] + frac * (samples[i + 1] - samples[i]);
}

SmootherCandidate steklov_candidate(const CorpusFunction& f, double h, std::size_t grid_n) {
  const Interval& dom = f.domain();
  check_window(dom, h);
  if (grid_n < 2) throw UsageError("steklov_candidate needs grid_n >= 2");

  const auto n = static_cast<std::ptrdiff_t>(grid_n);
  const double spacing = dom.length() / static_cast<double>(grid_n);
  const auto box = std::max<std::ptrdiff_t>(1, std::llround(0.5 * h / spacing));

  const double fa = f(dom.a());
  const double fb = f(dom.b());
  const double slope_left = (f(dom.a() + h) - fa) / h;
  const double slope_right = (fb - f(dom.b() - h)) / h;

  // ext[k + box] holds the continued f at grid index k, k in [-box, n + box].
  std::vector<double> ext(static_cast<std::size_t>(n + 2 * box + 1));
  for (std::ptrdiff_t k = -box; k <= n + box; ++k) {
    double v;
    if (k < 0) {
      v = fa + static_cast<double>(k) * spacing * slope_left;
    } else if (k > n) {
      v = fb + static_cast<double>(k - n) * spacing * slope_right;
    } else {
      v = f(dom.grid_node(static_cast<std::size_t>(k), grid_n));
    }
    ext[static_cast<std::size_t>(k + box)] = v;
  }
  auto at = [&](std::ptrdiff_t k) { return ext[static_cast<std::size_t>(k + box)]; };

  // Forward box pass over [-box+1, n], then backward pass onto [0, n].
  std::vector<long double> cum(ext.size() + 1, 0.0L);
  for (std::size_t i = 0; i < ext.size(); ++i) cum[i + 1] = cum[i] + ext[i];
  auto forward = [&](std::ptrdiff_t k) {
    const auto lo = static_cast<std::size_t>(k + box);
    return (cum[lo + static_cast<std::size_t>(box)] - cum[lo]) / static_cast<long double>(box);
  };
  std::vector<long double> pass(static_cast<std::size_t>(n + box), 0.0L);
  for (std::ptrdiff_t k = -box + 1; k <= n; ++k) {
    pass[static_cast<std::size_t>(k + box - 1)] = forward(k);
  }
  std::vector<long double> cum2(pass.size() + 1, 0.0L);
  for (std::size_t i = 0; i < pass.size(); ++i) cum2[i + 1] = cum2[i] + pass[i];

  SmootherCandidate out{2.0 * static_cast<double>(box) * spacing, dom, {}, 0.0, 0.0};
  out.samples.resize(grid_n + 1);
  for (std::ptrdiff_t i = 0; i <= n; ++i) {
    // pass indices i-box+1 .. i live at offsets i .. i+box-1.
    const auto lo = static_cast<std::size_t>(i);
    const long double g =
        (cum2[lo + static_cast<std::size_t>(box)] - cum2[lo]) / static_cast<long double>(box);
    out.samples[static_cast<std::size_t>(i)] = static_cast<double>(g);
    out.dist = std::max(out.dist, std::abs(static_cast<double>(g) - at(i)));
  }
  const double span = static_cast<double>(box) * spacing;
  for (std::ptrdiff_t i = 1; i < n; ++i) {
    const double d2 = at(i + box) - 2.0 * at(i) + at(i - box);
    out.curv = std::max(out.curv, std::abs(d2) / (span * span));
  }
  return out;
}

std::vector<double> default_windows(const Interval& domain, double t) {
  std::vector<double> w;
  for (int j = 1; j <= 8; ++j) w.push_back(domain.length() / std::ldexp(1.0, j));
  if (t > 0.0 && t <= 0.5 * domain.length()) w.push_back(t);
  std::sort(w.begin(), w.end());
  w.erase(std::unique(w.begin(), w.end()), w.end());
  return w;
}

KEstimate k_second(const CorpusFunction& f, double t2, const std::vector<double>& windows,
                   std::size_t grid_n, ModulusCache* cache) {
  if (!(t2 >= 0.0)) throw UsageError("k_second needs t2 >= 0");
  check_windows(f.domain(), windows);

  KEstimate est{std::numeric_limits<double>::infinity(), 0.0, 0.0};
  if (f.smoothness().c2) {
    est.upper = t2 * sup_norm(f.d2(), f.domain(), grid_n);
  }
  std::vector<double> ordered = windows;
  std::sort(ordered.begin(), ordered.end());
  for (double w : ordered) {
    const double v = steklov_candidate(f, w, grid_n).value(t2);
    if (v < est.upper) {
      est.upper = v;
      est.argmin_window = w;
    }
  }

  const double t = std::sqrt(t2);
  if (t > 0.0 && t <= 0.5 * f.domain().length()) {
    const double w2 = cache ? cache->table(f, 2, grid_n)->at(t) : omega2(f, t, grid_n);
    est.lower = 0.25 * w2;
  }
  return est;
}

double zhuk_bound(const CorpusFunction& f, double t, std::size_t grid_n, ModulusCache* cache) {
  check_window(f.domain(), t);
  const double w2 = cache ? cache->table(f, 2, grid_n)->at(t) : omega2(f, t, grid_n);
  return 2.25 * w2;
}

double k_c1(const CorpusFunction& f, double t, const std::vector<double>& windows,
            std::size_t grid_n) {
  if (!f.smoothness().c1) throw ClassError("k_c1 requires a C1 function, got '" + f.id() + "'");
  const Interval& dom = f.domain();
  if (!(t >= 0.0) || t > 0.5 * dom.length() * (1.0 + 1e-12)) {
    throw DomainError("k_c1 needs 0 <= t <= (b-a)/2");
  }
  check_windows(dom, windows);

  const Evaluator& df = f.d1();
  const GridRange range = grid_range(df, dom, grid_n);
  double best = 0.5 * (range.max - range.min);
  if (f.smoothness().c2) best = std::min(best, t * sup_norm(f.d2(), dom, grid_n));

  const double a = dom.a();
  const double b = dom.b();
  const double fa = f(a);
  const double fb = f(b);
  const double da = df(a);
  const double db = df(b);
  std::vector<double> ordered = windows;
  std::sort(ordered.begin(), ordered.end());
  for (double w : ordered) {
    const double sl = (df(a + w) - da) / w;
    const double sr = (db - df(b - w)) / w;
    // f' continued linearly, and its antiderivative continued to match f.
    auto dext = [&](double x) {
      if (x < a) return da + sl * (x - a);
      if (x > b) return db + sr * (x - b);
      return df(x);
    };
    auto fext = [&](double x) {
      if (x < a) return fa + (x - a) * (da + 0.5 * sl * (x - a));
      if (x > b) return fb + (x - b) * (db + 0.5 * sr * (x - b));
      return f(x);
    };
    double dist = 0.0;
    double curv = 0.0;
    for (std::size_t i = 0; i <= grid_n; ++i) {
      const double x = dom.grid_node(i, grid_n);
      const double mean = (fext(x + 0.5 * w) - fext(x - 0.5 * w)) / w;
      dist = std::max(dist, std::abs(df(x) - mean));
      curv = std::max(curv, std::abs(dext(x + 0.5 * w) - dext(x - 0.5 * w)) / w);
    }
    best = std::min(best, dist + t * curv);
  }
  return best;
}

double paltanea_identity_residual(const CorpusFunction& f, double t, std::size_t grid_n,
                                  std::size_t curve_nodes) {
  if (!f.smoothness().c1) {
    throw ClassError("derivative identity requires a C1 function, got '" + f.id() + "'");
  }
  const Interval& dom = f.domain();
  if (!(t >= 0.0) || 2.0 * t > dom.length() * (1.0 + 1e-12)) {
    throw DomainError("derivative identity needs 0 <= 2t <= b - a");
  }
  const ModulusCurve majorant =
      least_concave_majorant(modulus_curve(derivative_of(f), 1, curve_nodes, grid_n));
  const double k = k_c1(f, t, default_windows(dom, t), grid_n);
  return k - 0.5 * majorant_eval(majorant, 2.0 * t);
}

}  // namespace bullen
