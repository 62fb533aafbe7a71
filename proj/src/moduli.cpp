#include "bullen/moduli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "bullen/errors.hpp"

namespace bullen {

namespace {

struct Point {
  double x;
  double y;
};

// Positive for a counter-clockwise turn o -> a -> b.
double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

void check_order(int order) {
  if (order != 1 && order != 2) throw UsageError("modulus order must be 1 or 2");
}

}  // namespace

double max_window(const Interval& domain, int order) {
  check_order(order);
  return order == 1 ? domain.length() : 0.5 * domain.length();
}

ModulusTable::ModulusTable(Evaluator f, const Interval& domain, int order, std::size_t grid_n,
                           double h_limit, Evaluator analytic)
    : f_(std::move(f)),
      analytic_(std::move(analytic)),
      domain_(domain),
      order_(order),
      n_(grid_n),
      spacing_(domain.length() / static_cast<double>(grid_n)),
      h_max_(std::min(h_limit, bullen::max_window(domain, order))) {
  if (grid_n < 2) throw UsageError("modulus grid needs grid_n >= 2");
  if (!(h_max_ > 0.0)) throw DomainError("modulus window limit must be positive");

  samples_.resize(n_ + 1);
  for (std::size_t i = 0; i <= n_; ++i) samples_[i] = f_(domain_.grid_node(i, n_));

  const std::size_t step_cap = n_ / static_cast<std::size_t>(order_);
  const auto steps = std::min<std::size_t>(
      step_cap, static_cast<std::size_t>(std::floor(h_max_ / spacing_ + 1e-9)));
  prefix_.assign(steps + 1, 0.0);
  const double* s = samples_.data();
  for (std::size_t j = 1; j <= steps; ++j) {
    double best = 0.0;
    if (order_ == 1) {
      for (std::size_t i = 0; i + j <= n_; ++i) best = std::max(best, std::abs(s[i + j] - s[i]));
    } else {
      for (std::size_t i = 0; i + 2 * j <= n_; ++i) {
        best = std::max(best, std::abs(s[i + 2 * j] - 2.0 * s[i + j] + s[i]));
      }
    }
    prefix_[j] = std::max(prefix_[j - 1], best);
  }
}

ModulusTable ModulusTable::of(const CorpusFunction& f, int order, std::size_t grid_n,
                              double h_limit) {
  Evaluator analytic;
  if (order == 2 && f.has_analytic_omega2()) {
    analytic = [f](double h) { return *f.analytic_omega2(h); };
  }
  return ModulusTable(f.evaluator(), f.domain(), order, grid_n, h_limit, std::move(analytic));
}

void ModulusTable::check_window(double h) const {
  if (!(h > 0.0) || h > h_max_ * (1.0 + 1e-12)) {
    throw DomainError("modulus window h = " + std::to_string(h) + " outside (0, " +
                      std::to_string(h_max_) + "]");
  }
}

double ModulusTable::off_grid_step(double h) const {
  const double b = domain_.b();
  const double slack = 1e-12 * domain_.length();
  double best = 0.0;
  for (std::size_t i = 0; i <= n_; ++i) {
    const double x = domain_.grid_node(i, n_);
    const double far = x + static_cast<double>(order_) * h;
    if (far > b + slack) break;
    if (order_ == 1) {
      best = std::max(best, std::abs(f_(std::min(far, b)) - samples_[i]));
    } else {
      best = std::max(best, std::abs(f_(std::min(far, b)) - 2.0 * f_(x + h) + samples_[i]));
    }
  }
  return best;
}

double ModulusTable::grid_value(double h) const {
  check_window(h);
  const std::size_t last = prefix_.size() - 1;
  const auto j =
      std::min<std::size_t>(last, static_cast<std::size_t>(std::floor(h / spacing_ + 1e-9)));
  double value = prefix_[j];
  if (std::abs(static_cast<double>(j) * spacing_ - h) > 1e-12 * domain_.length()) {
    value = std::max(value, off_grid_step(h));
  }
  return value;
}

double ModulusTable::at(double h) const {
  const double grid = grid_value(h);
  if (!analytic_) return grid;
  const double exact = analytic_(h);
  if (grid > exact + 1e-9 * std::max(1.0, std::abs(exact))) {
    throw std::logic_error("grid modulus " + std::to_string(grid) +
                           " exceeds the closed form " + std::to_string(exact));
  }
  return exact;
}

double omega1(const CorpusFunction& f, double h, std::size_t grid_n) {
  if (!(h > 0.0) || h > f.domain().length() * (1.0 + 1e-12)) {
    throw DomainError("omega1 needs 0 < h <= b - a");
  }
  return ModulusTable::of(f, 1, grid_n, h).at(h);
}

double omega2(const CorpusFunction& f, double h, std::size_t grid_n) {
  if (!(h > 0.0) || h > 0.5 * f.domain().length() * (1.0 + 1e-12)) {
    throw DomainError("omega2 needs 0 < h <= (b - a)/2");
  }
  return ModulusTable::of(f, 2, grid_n, h).at(h);
}

ModulusCurve::ModulusCurve(int order, std::vector<double> nodes, std::vector<double> values,
                           double max_window, bool is_majorant)
    : order_(order),
      nodes_(std::move(nodes)),
      values_(std::move(values)),
      max_window_(max_window),
      is_majorant_(is_majorant) {
  check_order(order_);
  if (nodes_.size() != values_.size()) throw UsageError("curve nodes and values differ in size");
  if (!(max_window_ > 0.0)) throw UsageError("curve window range must be positive");
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!(nodes_[i] > (i == 0 ? 0.0 : nodes_[i - 1]))) {
      throw UsageError("curve nodes must be positive and strictly ascending");
    }
    if (nodes_[i] > max_window_ * (1.0 + 1e-12)) throw UsageError("curve node beyond H");
    if (!(values_[i] >= 0.0)) throw UsageError("curve values must be nonnegative");
    if (i > 0 && values_[i] < values_[i - 1]) {
      throw UsageError("curve values must be nondecreasing");
    }
  }
  if (is_majorant_) {
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const double x0 = i == 0 ? 0.0 : nodes_[i - 1];
      const double y0 = i == 0 ? 0.0 : values_[i - 1];
      const double slope = (values_[i] - y0) / (nodes_[i] - x0);
      if (slope > prev + 1e-9 * std::max(1.0, std::abs(prev))) {
        throw UsageError("majorant slopes must be nonincreasing");
      }
      prev = slope;
    }
  }
}

void ModulusCurve::write_csv(std::ostream& out) const {
  out << "h,omega\n";
  char buf[64];
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,", nodes_[i]);
    out << buf;
    std::snprintf(buf, sizeof buf, "%.17g\n", values_[i]);
    out << buf;
  }
}

ModulusCurve modulus_curve(const ModulusTable& table, std::size_t m) {
  if (m < 2) throw UsageError("modulus curve needs m >= 2");
  const double H = table.max_window();
  std::vector<double> nodes(m);
  std::vector<double> values(m);
  double running = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    nodes[k] = k + 1 == m ? H : H * static_cast<double>(k + 1) / static_cast<double>(m);
    running = std::max(running, table.at(nodes[k]));
    values[k] = running;
  }
  return ModulusCurve(table.order(), std::move(nodes), std::move(values), H, false);
}

ModulusCurve modulus_curve(const CorpusFunction& f, int order, std::size_t m,
                           std::size_t grid_n) {
  return modulus_curve(ModulusTable::of(f, order, grid_n), m);
}

ModulusCurve least_concave_majorant(const ModulusCurve& curve) {
  if (curve.empty()) throw DomainError("least concave majorant of an empty curve");
  if (curve.is_majorant()) throw UsageError("curve is already a majorant");

  std::vector<Point> hull{{0.0, 0.0}};
  hull.reserve(curve.nodes().size() + 1);
  for (std::size_t i = 0; i < curve.nodes().size(); ++i) {
    const Point p{curve.nodes()[i], curve.values()[i]};
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0) {
      hull.pop_back();
    }
    hull.push_back(p);
  }
  std::vector<double> nodes;
  std::vector<double> values;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    nodes.push_back(hull[i].x);
    values.push_back(hull[i].y);
  }
  return ModulusCurve(curve.order(), std::move(nodes), std::move(values), curve.max_window(),
                      true);
}

double majorant_eval(const ModulusCurve& curve, double t) {
  if (!curve.is_majorant()) throw UsageError("majorant_eval needs a majorant curve");
  if (!(t >= 0.0) || t > curve.max_window() * (1.0 + 1e-12)) {
    throw DomainError("majorant argument " + std::to_string(t) + " outside [0, H]");
  }
  const auto& x = curve.nodes();
  const auto& y = curve.values();
  if (t == 0.0 || x.empty()) return 0.0;
  const auto it = std::lower_bound(x.begin(), x.end(), t);
  if (it == x.end()) return y.back();
  const auto k = static_cast<std::size_t>(it - x.begin());
  if (*it == t) return y[k];
  const double x0 = k == 0 ? 0.0 : x[k - 1];
  const double y0 = k == 0 ? 0.0 : y[k - 1];
  return y0 + (y[k] - y0) * (t - x0) / (x[k] - x0);
}

std::shared_ptr<const ModulusTable> ModulusCache::table(const CorpusFunction& f, int order,
                                                        std::size_t grid_n) {
  const Key key{f.id(), f.domain().a(), f.domain().b(), order, grid_n};
  std::lock_guard lock(mutex_);
  auto it = tables_.find(key);
  if (it != tables_.end()) return it->second;
  auto table = std::make_shared<const ModulusTable>(ModulusTable::of(f, order, grid_n));
  tables_.emplace(key, table);
  return table;
}

}  // namespace bullen
