#include <doctest.h>

#include <random>

#include "conemorse/morse.hpp"
#include "conemorse/pipeline.hpp"
#include "oracle/oracle.hpp"
#include "random_complex.hpp"

using namespace conemorse;

namespace {

const SampledComplex& cone_complex() {
  static const SampledComplex c = [] {
    const ConeSurface s(kPi / 2);
    return build_sampled_complex(s, make_point(s, 1, 0), make_point(s, 1, kPi / 5));
  }();
  return c;
}

const SampledComplex& plane_complex() {
  static const SampledComplex c = [] {
    const ConeSurface s(2 * kPi);
    return build_sampled_complex(s, make_point(s, 1, kPi / 2), make_point(s, 1, 0));
  }();
  return c;
}

FormalSeries random_series(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, 5), coef(0, 6);
  FormalSeries s;
  const int d = deg(rng);
  for (int i = 0; i <= d; ++i) s.set_coefficient(i, static_cast<FormalSeries::Coefficient>(coef(rng)));
  return s;
}

}  // namespace

TEST_CASE("series examples") {
  const FormalSeries a{1, 2}, b{0, 1, 1};
  CHECK((a + b) == FormalSeries{1, 3, 1});
  CHECK(series_add(a, b) == (a + b));
  CHECK(series_sub_checked(FormalSeries{4, 3}, FormalSeries{1}) == FormalSeries{3, 3});
  CHECK_THROWS_AS(series_sub_checked(FormalSeries{1}, FormalSeries{0, 1}), SeriesError);
  CHECK(divide_one_plus_lambda(FormalSeries{3, 3}) == FormalSeries{3});
  CHECK(divide_one_plus_lambda(FormalSeries{}) == FormalSeries{});
  CHECK_THROWS_AS(divide_one_plus_lambda(FormalSeries{1}), SeriesError);
  CHECK_THROWS_AS(divide_one_plus_lambda(FormalSeries{1, 0, 1}), SeriesError);
  CHECK(FormalSeries{3, 3}.to_string() == "3 + 3λ");
  CHECK(FormalSeries{}.to_string() == "0");
  CHECK(FormalSeries{0, 1, 1}.to_string() == "λ + λ^2");
  CHECK(FormalSeries{0, 0, 0}.is_zero());
  CHECK(FormalSeries{2, 0, 5}.degree() == 2);
  CHECK(FormalSeries{2, 0, 5}.at_one() == 7);
  CHECK(FormalSeries::monomial(3, 2).coefficient(2) == 3);
  CHECK_THROWS_AS(FormalSeries::monomial(1, -1), SeriesError);
}

TEST_CASE("dividing a product by (1 + lambda) recovers the factor") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    const auto q = random_series(rng);
    CHECK(divide_one_plus_lambda(q.times_one_plus_lambda()) == q);
  }
}

TEST_CASE("morse_relation on hand-made totals") {
  auto r = morse_relation(FormalSeries{4, 3}, space_series());
  REQUIRE(r.holds());
  CHECK(*r.quotient == FormalSeries{3});
  r = morse_relation(FormalSeries{1}, space_series());
  CHECK(r.holds());
  CHECK(r.quotient->is_zero());

  // 1 + lambda^2 minus 1 is lambda^2, which (1 + lambda) does not divide.
  r = morse_relation(FormalSeries{1, 0, 1}, space_series());
  CHECK_FALSE(r.holds());
  CHECK_FALSE(r.violation.empty());
  r = morse_relation(FormalSeries{0, 1}, space_series());
  CHECK_FALSE(r.holds());
}

TEST_CASE("critical levels and clean radii") {
  const ConeSurface s(kPi / 2);
  const auto set = enumerate_all(s, make_point(s, 1, 0), make_point(s, 1, kPi / 4));
  const auto levels = critical_levels(set);
  REQUIRE(levels.size() == 3);
  CHECK(levels[0].tied());
  CHECK(levels[1].tied());
  CHECK_FALSE(levels[2].tied());
  CHECK(clean_radius(levels, 2) == doctest::Approx(4.0 - levels[1].energy));
  CHECK_THROWS_AS(clean_radius(levels, 3), MorseError);

  // p = q: the constant path, a tied pair at delta = +-pi/2, and the broken one.
  const auto same = critical_levels(enumerate_all(s, make_point(s, 1, 0), make_point(s, 1, 0)));
  REQUIRE(same.size() == 3);
  CHECK(same[0].energy == 0.0);
  CHECK(same[1].tied());
}

TEST_CASE("quarter cone indices") {
  const auto& c = cone_complex();
  const auto& in = c.input;
  REQUIRE(in.geodesics.geodesics.size() == 5);
  for (std::size_t i = 0; i < 4; ++i) {
    const double eps = 0.3 * clean_radius(in.levels, i);
    CHECK(index_of_geodesic(in, i, eps) == FormalSeries{1});
    CHECK(multiplicity(in, i, eps) == 1);
  }
  CHECK(index_of_geodesic(in, 4, 0.1) == FormalSeries{0, 3});
  CHECK(multiplicity(in, 4, 0.1) >= 3);

  // 3.8 reaches down past 3.618.
  CHECK_THROWS_WITH_AS(index_of_level(in, 4.0, 0.5), doctest::Contains("strip not clean"), MorseError);
  CHECK_THROWS_AS(index_of_level(in, 4.0, 0.0), MorseError);
  CHECK(epsilon_independence_check(in, 4.0, 0.1, 0.15));
  CHECK(epsilon_independence_check(in, in.levels[0].energy, 0.1, 0.15));

  const auto report = morse_relation_check(in, "cone");
  CHECK(report.total == FormalSeries{4, 3});
  REQUIRE(report.relation.holds());
  CHECK(*report.relation.quotient == FormalSeries{3});
  CHECK(report.space_consistent());
  CHECK(report.broken_bound_holds());
  CHECK(report.classical_count == 4);
  CHECK(merge_deaths(c.persistence, 3.8, 4.2) == 3);
  for (const auto& l : report.levels) CHECK(l.eps_independent);
}

TEST_CASE("plane indices") {
  const auto& in = plane_complex().input;
  REQUIRE(in.geodesics.geodesics.size() == 2);
  CHECK(index_of_geodesic(in, 0, 0.6) == FormalSeries{1});
  CHECK(index_of_geodesic(in, 1, 0.6).is_zero());
  CHECK(multiplicity(in, 1, 0.6) == 0);
  const auto report = morse_relation_check(in, "plane");
  REQUIRE(report.relation.holds());
  CHECK(report.relation.quotient->is_zero());
  CHECK(report.essential_components == 1);
}

TEST_CASE("tied levels are reported, not indexed") {
  const ConeSurface s(kPi / 2);
  const auto c = build_sampled_complex(s, make_point(s, 1, 0), make_point(s, 1, kPi / 4));
  CHECK_THROWS_WITH_AS(index_of_geodesic(c.input, 0, 0.1),
                       doctest::Contains("isolated-geodesic hypothesis fails"), MorseError);
  const auto report = morse_relation_check(c.input, "ties");
  CHECK_FALSE(report.geodesics[0].index.has_value());
  CHECK(report.geodesics[0].diagnostic.find("tied level") != std::string::npos);
  CHECK(report.geodesics[4].index.has_value());
  CHECK(report.relation.holds());
}

TEST_CASE("eps rules are validated") {
  const auto& in = cone_complex().input;
  CHECK_THROWS_AS(morse_relation_check(in, "x", EpsRule{{}, true}), MorseError);
  CHECK_THROWS_AS(morse_relation_check(in, "x", EpsRule{{1.2}, true}), MorseError);
  CHECK_THROWS_AS(morse_relation_check(in, "x", EpsRule{{0.5}, false}), MorseError);
  const auto r = morse_relation_check(in, "x", EpsRule{{0.1}, false});
  CHECK(r.total == FormalSeries{4, 3});
}

TEST_CASE("pair additivity: square example") {
  FilteredComplex k;
  for (int i = 0; i < 4; ++i) k.add_vertex(i == 0 ? 0.0 : 1.0);
  for (int i = 0; i < 4; ++i) k.add_edge(i, (i + 1) % 4, 2.0);
  const auto r = lemma_pl_check(k, 0.0, 1.0, 2.0);
  CHECK(r.holds);
  CHECK(r.xa == FormalSeries{0, 4});
  CHECK(r.ab == FormalSeries{3});
  CHECK(r.xb == FormalSeries{0, 1});
  REQUIRE(r.quotient);
  CHECK(*r.quotient == FormalSeries{3});
  CHECK_THROWS_AS(lemma_pl_check(k, 1.0, 0.0, 2.0), MorseError);
}

TEST_CASE("pair additivity holds on random complexes") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> tenth(0, 10);
  for (int trial = 0; trial < 100; ++trial) {
    const auto k = random_complex(rng, 12, 64);
    int l[3] = {tenth(rng), tenth(rng), tenth(rng)};
    std::sort(l, l + 3);
    const double a = l[0] / 10.0, b = l[1] / 10.0, c = l[2] / 10.0;
    const auto r = lemma_pl_check(k, a, b, c);
    CHECK(r.holds);
    // The ranks behind it, recomputed densely.
    const auto d = oracle::exhaustive_homology(k, c, b);
    CHECK(r.xa.coefficient(0) == static_cast<FormalSeries::Coefficient>(d[0]));
    CHECK(r.xa.coefficient(1) == static_cast<FormalSeries::Coefficient>(d[1]));
  }
}
