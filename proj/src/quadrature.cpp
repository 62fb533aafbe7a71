#include "bullen/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "bullen/errors.hpp"

namespace bullen {

namespace {

// Kronrod 15-point abscissae (positive half, descending) and weights; the
// odd-indexed abscissae are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Piece {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Piece& o) const { return error < o.error; }
};

Piece gk15(const Evaluator& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = r * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    kronrod += kWgk[j] * s;
    if (j % 2 == 1) gauss += kWg[j / 2] * s;
  }
  return {a, b, kronrod * r, std::abs((kronrod - gauss) * r)};
}

void check_tol(double tol) {
  if (!(tol > 0.0)) throw UsageError("integration tolerance must be positive");
}

}  // namespace

IntegralResult integrate_adaptive(const Evaluator& f, const Interval& over, double tol,
                                  std::size_t max_pieces) {
  check_tol(tol);
  std::vector<Piece> heap{gk15(f, over.a(), over.b())};
  std::size_t evaluations = 15;

  auto exact_error = [&heap] {
    double e = 0.0;
    for (const auto& p : heap) e += p.error;
    return e;
  };
  auto ordered_value = [&heap] {
    // Sum in left-to-right order so the result does not depend on heap layout.
    std::vector<Piece> all = heap;
    std::sort(all.begin(), all.end(), [](const Piece& x, const Piece& y) { return x.a < y.a; });
    double v = 0.0;
    for (const auto& p : all) v += p.value;
    return v;
  };

  double total_error = heap.front().error;
  while (total_error > tol) {
    if (heap.size() >= max_pieces) {
      throw IntegrationError("tolerance not achieved: subdivision budget exhausted",
                             ordered_value(), exact_error());
    }
    std::pop_heap(heap.begin(), heap.end());
    const Piece worst = heap.back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw IntegrationError("tolerance not achieved: interval too narrow to bisect",
                             ordered_value(), exact_error());
    }
    const Piece left = gk15(f, worst.a, mid);
    const Piece right = gk15(f, mid, worst.b);
    heap.back() = left;
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());
    evaluations += 30;
    total_error += left.error + right.error - worst.error;
    // The running total drifts; confirm with an exact sum before stopping.
    if (total_error <= tol) total_error = exact_error();
  }
  return {ordered_value(), total_error, evaluations};
}

IntegralResult integrate(const CorpusFunction& f, const Interval& over, double tol) {
  check_tol(tol);
  if (!f.domain().contains(over)) {
    throw DomainError("integration interval leaves the domain of '" + f.id() + "'");
  }
  if (f.has_antiderivative()) {
    const auto& F = f.antiderivative();
    return {F(over.b()) - F(over.a()), 0.0, 2};
  }
  return integrate_adaptive(f.evaluator(), over, tol);
}

double bullen(const CorpusFunction& f, const Interval& over, double tol) {
  const IntegralResult in = integrate(f, over, tol);
  return 0.5 * (f(over.a()) + f(over.b())) + f(over.midpoint()) -
         2.0 * in.value / over.length();
}

double composite_bullen(const CorpusFunction& f, const Partition& p, double tol) {
  if (!f.domain().contains(p.domain())) {
    throw DomainError("partition leaves the domain of '" + f.id() + "'");
  }
  const double total = p.domain().length();
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Interval piece = p.piece(i);
    sum += (piece.length() / total) * bullen(f, piece, tol);
  }
  return sum;
}

double point_functional(const CorpusFunction& f, const Interval& over, double x, double tol) {
  if (!over.contains(x)) throw DomainError("point functional needs x inside [a, b]");
  const IntegralResult in = integrate(f, over, tol);
  const double a = over.a();
  const double b = over.b();
  return 0.5 * ((x - a) * f(a) + (b - a) * f(x) + (b - x) * f(b)) - in.value;
}

}  // namespace bullen
