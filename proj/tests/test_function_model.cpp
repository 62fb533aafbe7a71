#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bullen/errors.hpp"
#include "bullen/function_model.hpp"
#include "bullen/quadrature.hpp"
#include "oracles.hpp"

using namespace bullen;

namespace {

const CorpusFunction& find(const std::vector<CorpusFunction>& corpus, const std::string& id) {
  for (const auto& f : corpus) {
    if (f.id() == id) return f;
  }
  FAIL("missing corpus entry " << id);
  throw std::logic_error("unreachable");
}

}  // namespace

TEST_SUITE("function_model") {

TEST_CASE("interval rejects degenerate or non-finite endpoints") {
  CHECK_THROWS_AS(Interval(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(Interval(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(Interval(0.0, INFINITY), DomainError);
  CHECK_THROWS_AS(Interval(NAN, 1.0), DomainError);
  const Interval i(-1.0, 3.0);
  CHECK(i.length() == 4.0);
  CHECK(i.midpoint() == 1.0);
  CHECK(i.grid_node(0, 8) == -1.0);
  CHECK(i.grid_node(8, 8) == 3.0);
}

TEST_CASE("grid nodes are nested under doubling") {
  const Interval i(0.1, std::numbers::pi);
  for (std::size_t k = 0; k <= 100; ++k) CHECK(i.grid_node(2 * k, 200) == i.grid_node(k, 100));
}

TEST_CASE("standard corpus contents") {
  const Interval unit(0.0, 1.0);
  const auto corpus = standard_corpus(unit);
  REQUIRE(corpus.size() >= 7);

  SUBCASE("x^2 carries exact antiderivative and second derivative") {
    const auto& sq = find(corpus, "square");
    CHECK(sq.smoothness().convex);
    CHECK(sq.smoothness().c2);
    CHECK(sq.antiderivative()(1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(sq.antiderivative()(0.5) == doctest::Approx(0.125 / 3.0).epsilon(1e-15));
    CHECK(sq.d2()(0.3) == 2.0);
    CHECK(sq.d1()(0.3) == doctest::Approx(0.6));
  }
  SUBCASE("hat is convex and Lipschitz but not C1") {
    const auto& hat = find(corpus, "hat");
    CHECK(hat.smoothness().convex);
    CHECK(hat.smoothness().lipschitz);
    CHECK_FALSE(hat.smoothness().c1);
    CHECK_FALSE(hat.has_d1());
    CHECK_THROWS_AS(hat.d1(), ClassError);
  }
  SUBCASE("signed square is C1 but not C2") {
    const auto& s = find(corpus, "signed_square");
    CHECK(s.smoothness().c1);
    CHECK_FALSE(s.smoothness().c2);
    CHECK(s.d1()(0.2) == doctest::Approx(2.0 * 0.3));
  }
  SUBCASE("cusp is continuous only") {
    const auto& c = find(corpus, "cusp");
    CHECK(c.smoothness().continuous);
    CHECK_FALSE(c.smoothness().lipschitz);
  }
  SUBCASE("sin on [0,1] is C2, exp is convex C2") {
    CHECK(find(corpus, "sin").smoothness().c2);
    CHECK(find(corpus, "exp").smoothness().convex);
  }
  SUBCASE("implication chain holds everywhere") {
    for (const auto& f : corpus) CHECK(f.smoothness().consistent());
  }
}

TEST_CASE("linear entry on [-1,1] has zero analytic second modulus") {
  const auto corpus = standard_corpus(Interval(-1.0, 1.0));
  const auto& lin = find(corpus, "linear");
  REQUIRE(lin.has_analytic_omega2());
  for (double h : {1e-6, 0.1, 0.5, 1.0}) CHECK(*lin.analytic_omega2(h) == 0.0);
}

TEST_CASE("sup_norm examples") {
  const Interval unit(0.0, 1.0);
  CHECK(sup_norm([](double x) { return x; }, unit, 10) == 1.0);
  CHECK(sup_norm([](double x) { return x * x - x; }, unit, 1000) ==
        doctest::Approx(0.25).epsilon(1e-6));
  CHECK(std::abs(sup_norm([](double x) { return std::sin(x); }, Interval(0.0, std::numbers::pi),
                          4096) -
                 1.0) <= 1e-6);
  CHECK_THROWS_AS(sup_norm([](double x) { return x; }, unit, 1), UsageError);
}

TEST_CASE("sup_norm is nondecreasing under grid doubling") {
  for (const auto& f : standard_corpus(Interval(-0.3, 1.7))) {
    double prev = 0.0;
    for (std::size_t n = 3; n <= 3 * 1024; n *= 2) {
      const double s = sup_norm(f.evaluator(), f.domain(), n);
      CHECK(s >= prev);
      prev = s;
    }
  }
}

TEST_CASE("evaluator failure propagates from sup_norm") {
  auto bad = [](double x) -> double {
    if (x > 0.5) throw std::runtime_error("boom");
    return x;
  };
  CHECK_THROWS_WITH(sup_norm(bad, Interval(0.0, 1.0), 16), "boom");
}

TEST_CASE("exact antiderivatives agree with the adaptive integrator") {
  for (const auto& f : standard_corpus(Interval(0.0, 1.0))) {
    if (!f.has_antiderivative()) continue;
    CAPTURE(f.id());
    const double exact = f.antiderivative()(1.0) - f.antiderivative()(0.0);
    const double adaptive = integrate_adaptive(f.evaluator(), f.domain(), 1e-12).value;
    CHECK(std::abs(exact - adaptive) <= 1e-9);
    CHECK(std::abs(exact - oracle::simpson(f.evaluator(), 0.0, 1.0, 200000)) <= 1e-6);
  }
}

TEST_CASE("derived functions") {
  const Interval unit(0.0, 1.0);
  const auto sq = make_builtin("square", unit);
  const auto d = derivative_of(sq);
  CHECK(d.id() == "square'");
  CHECK(d(0.25) == doctest::Approx(0.5));
  CHECK_THROWS_AS(derivative_of(make_builtin("hat", unit)), ClassError);

  const auto combo = linear_combination(2.0, sq, -1.0, make_builtin("linear", unit));
  CHECK(combo(0.5) == doctest::Approx(2 * 0.25 - 0.5));
  CHECK(combo.smoothness().c2);

  const auto aff = make_affine(unit, 3.0, -1.0);
  CHECK(aff(0.5) == doctest::Approx(0.5));
  CHECK(aff.smoothness().convex);

  const auto sub = sq.restricted(Interval(0.25, 0.75));
  CHECK(sub.domain() == Interval(0.25, 0.75));
  CHECK_THROWS_AS(sq.restricted(Interval(0.5, 2.0)), DomainError);
}

TEST_CASE("constructor rejects inconsistent parts") {
  const Interval unit(0.0, 1.0);
  auto f = [](double x) { return x; };
  CHECK_THROWS_AS(CorpusFunction({"", unit, f, {}}), UsageError);
  CHECK_THROWS_AS(CorpusFunction({"x", unit, f, {true, true, true, false, false}}), UsageError);
  CHECK_THROWS_AS(CorpusFunction({"x", unit, f, {true, false, true, false, false}, f}),
                  UsageError);
  CHECK_THROWS_AS(CorpusFunction({"x", unit, [](double) { return NAN; }, {}}), DomainError);
}

TEST_CASE("corpus file loading") {
  const auto corpus = parse_corpus_json(
      R"([{"id":"q","a":0,"b":2,"expr":"square"},{"id":"h","a":-1,"b":1,"expr":"hat"}])");
  REQUIRE(corpus.size() == 2);
  CHECK(corpus[0].id() == "q");
  CHECK(corpus[0].domain() == Interval(0.0, 2.0));
  CHECK(corpus[1](1.0) == doctest::Approx(1.0));

  CHECK_THROWS_AS(parse_corpus_json("not json"), ConfigError);
  CHECK_THROWS_AS(parse_corpus_json(R"({"id":"q"})"), ConfigError);
  CHECK_THROWS_AS(parse_corpus_json(R"([{"id":"q","a":0,"b":1}])"), ConfigError);
  CHECK_THROWS_AS(parse_corpus_json(R"([{"id":"q","a":0,"b":1,"expr":"tan"}])"), ConfigError);
  CHECK_THROWS_AS(parse_corpus_json(R"([{"id":"q","a":1,"b":0,"expr":"sin"}])"), ConfigError);
  CHECK_THROWS_AS(
      parse_corpus_json(
          R"([{"id":"q","a":0,"b":1,"expr":"sin"},{"id":"q","a":0,"b":1,"expr":"exp"}])"),
      ConfigError);
  CHECK_THROWS_AS(load_corpus_file("/nonexistent/corpus.json"), ConfigError);
}

}
