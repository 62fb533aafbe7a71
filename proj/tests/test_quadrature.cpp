#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bullen/errors.hpp"
#include "bullen/quadrature.hpp"
#include "oracles.hpp"

using namespace bullen;

namespace {
const Interval kUnit(0.0, 1.0);
const double kE = std::numbers::e;
}  // namespace

TEST_SUITE("quadrature") {

TEST_CASE("integrate examples") {
  const auto sq = make_builtin("square", kUnit);
  const auto r = integrate(sq, kUnit, 1e-10);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r.error_estimate == 0.0);

  const auto hat = make_builtin("hat", kUnit).without_antiderivative();
  CHECK(std::abs(integrate(hat, kUnit, 1e-10).value - 0.25) <= 1e-10);

  const auto ex = make_builtin("exp", kUnit).without_antiderivative();
  CHECK(std::abs(integrate(ex, kUnit, 1e-10).value - (kE - 1.0)) <= 1e-10);
}

TEST_CASE("Gauss-Kronrod path is exact on low-degree polynomials") {
  auto p = [](double x) { return 3 * x * x * x * x * x - x * x + 7; };
  const auto r = integrate_adaptive(p, Interval(-1.0, 2.0), 1e-12);
  const double exact = 0.5 * (64.0 - 1.0) - (8.0 + 1.0) / 3.0 + 21.0;
  CHECK(r.value == doctest::Approx(exact).epsilon(1e-14));
  CHECK(r.evaluations == 15);
}

TEST_CASE("adaptive integration handles kinks and cusps") {
  auto cusp = [](double x) { return std::sqrt(std::abs(x - 0.5)); };
  const double exact = 2.0 * (2.0 / 3.0) * std::pow(0.5, 1.5);
  const auto r = integrate_adaptive(cusp, kUnit, 1e-10);
  CHECK(std::abs(r.value - exact) <= 1e-10);
  CHECK(r.error_estimate <= 1e-10);
}

TEST_CASE("unreachable tolerance reports the best value") {
  auto wild = [](double x) { return std::sin(1.0 / (x + 1e-9)); };
  try {
    integrate_adaptive(wild, kUnit, 1e-15, 50);
    FAIL("expected IntegrationError");
  } catch (const IntegrationError& e) {
    CHECK(std::string(e.what()).find("tolerance not achieved") != std::string::npos);
    CHECK(std::isfinite(e.best_value()));
    CHECK(e.error_estimate() > 1e-15);
  }
}

TEST_CASE("bullen examples") {
  CHECK(std::abs(bullen::bullen(make_builtin("linear", kUnit), kUnit)) <= 1e-15);
  CHECK(std::abs(bullen::bullen(make_builtin("square", kUnit), kUnit) - 1.0 / 12.0) <= 1e-9);
  CHECK(std::abs(bullen::bullen(make_builtin("hat", kUnit), kUnit)) <= 1e-9);
  const double exp_closed = (1 + kE) / 2 + std::exp(0.5) - 2 * (kE - 1);
  CHECK(std::abs(bullen::bullen(make_builtin("exp", kUnit), kUnit) - exp_closed) <= 1e-8);
  CHECK(exp_closed == doctest::Approx(0.0712986).epsilon(1e-6));
}

TEST_CASE("bullen agrees with an independent Simpson oracle on the corpus") {
  for (const auto& f : standard_corpus(Interval(-0.5, 2.0))) {
    CAPTURE(f.id());
    const double expect = oracle::bullen_simpson(f.evaluator(), -0.5, 2.0);
    const double tol = f.smoothness().lipschitz ? 1e-8 : 1e-5;  // Simpson is slow on the cusp
    CHECK(std::abs(bullen::bullen(f, f.domain()) - expect) <= tol);
  }
}

TEST_CASE("bullen annihilates affine functions") {
  for (double slope : {-3.0, 0.0, 1e-3, 17.0}) {
    for (auto dom : {Interval(0.0, 1.0), Interval(-5.0, 2.0), Interval(1e3, 1e3 + 1.0)}) {
      const auto g = make_affine(dom, slope, 2.5);
      CHECK(std::abs(bullen::bullen(g, dom)) <= 1e-10 * std::max(1.0, std::abs(slope) * dom.b()));
      CHECK(std::abs(bullen::bullen(g.without_antiderivative(), dom)) <=
            1e-10 * std::max(1.0, std::abs(slope) * dom.b()));
    }
  }
}

TEST_CASE("convex entries have nonnegative bullen functional") {
  for (auto dom : {Interval(0.0, 1.0), Interval(-2.0, 3.0)}) {
    for (const auto& f : standard_corpus(dom)) {
      if (f.smoothness().convex) CHECK(bullen::bullen(f, dom) >= -1e-9);
    }
  }
}

TEST_CASE("bullen is linear") {
  const auto corpus = standard_corpus(kUnit);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (std::size_t j = i + 1; j < corpus.size(); ++j) {
      const auto& f = corpus[i];
      const auto& g = corpus[j];
      const double alpha = 1.5, beta = -0.75;
      const auto combo = linear_combination(alpha, f, beta, g).without_antiderivative();
      const double lhs = bullen::bullen(combo, kUnit);
      const double rhs = alpha * bullen::bullen(f, kUnit) + beta * bullen::bullen(g, kUnit);
      CAPTURE(f.id());
      CAPTURE(g.id());
      CHECK(std::abs(lhs - rhs) <= 5e-10);
    }
  }
}

TEST_CASE("composite bullen examples") {
  const auto sq = make_builtin("square", kUnit);
  CHECK(std::abs(composite_bullen(sq, uniform(kUnit, 1)) - 1.0 / 12.0) <= 1e-9);
  CHECK(std::abs(composite_bullen(sq, uniform(kUnit, 2)) - 1.0 / 48.0) <= 1e-9);
  CHECK(std::abs(composite_bullen(sq, uniform(kUnit, 4)) - 1.0 / 192.0) <= 1e-9);
}

TEST_CASE("composite bullen on the trivial partition equals bullen") {
  for (const auto& f : standard_corpus(Interval(-1.0, 2.0))) {
    CHECK(std::abs(composite_bullen(f, uniform(f.domain(), 1)) - bullen::bullen(f, f.domain())) <=
          1e-12);
  }
}

TEST_CASE("composite bullen of x^2 decays like 1/n^2") {
  const auto sq = make_builtin("square", kUnit);
  for (std::size_t n : {1u, 2u, 4u, 8u, 16u}) {
    const double scaled = composite_bullen(sq, uniform(kUnit, n)) * double(n * n);
    CHECK(std::abs(scaled - 1.0 / 12.0) <= 1e-8);
  }
}

TEST_CASE("composite bullen equals the weighted sum of piece functionals") {
  const auto ex = make_builtin("exp", Interval(0.0, 2.0));
  const auto p = random_partition(ex.domain(), 5, 11);
  double expect = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto piece = p.piece(i);
    expect += piece.length() / 2.0 * oracle::bullen_simpson(ex.evaluator(), piece.a(), piece.b());
  }
  CHECK(std::abs(composite_bullen(ex, p) - expect) <= 1e-10);
}

TEST_CASE("composite bullen rejects a partition of another interval") {
  const auto sq = make_builtin("square", kUnit);
  CHECK_THROWS_AS(composite_bullen(sq, uniform(Interval(0.0, 2.0), 2)), DomainError);
}

TEST_CASE("point functional") {
  const auto lin = make_builtin("linear", kUnit);
  const auto sq = make_builtin("square", kUnit);
  CHECK(std::abs(point_functional(lin, kUnit, 0.3)) <= 1e-15);
  CHECK(std::abs(point_functional(sq, kUnit, 0.5) - 1.0 / 24.0) <= 1e-9);
  CHECK(std::abs(point_functional(sq, kUnit, 0.0) - 1.0 / 6.0) <= 1e-9);
  CHECK_THROWS_AS(point_functional(sq, kUnit, 1.5), DomainError);
  CHECK_THROWS_AS(point_functional(sq, kUnit, -1e-9), DomainError);
}

TEST_CASE("point functional at the midpoint is half-length times bullen") {
  for (const auto& f : standard_corpus(Interval(-1.0, 2.0))) {
    const auto& d = f.domain();
    CHECK(std::abs(point_functional(f, d, d.midpoint()) - d.length() / 2.0 * bullen::bullen(f, d)) <=
          1e-10);
  }
}

}
