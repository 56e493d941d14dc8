#include <doctest.h>

#include <cmath>
#include <limits>

#include "conemorse/geodesics.hpp"
#include "oracle/oracle.hpp"

using namespace conemorse;

namespace {

constexpr double kNoCutoff = std::numeric_limits<double>::infinity();

// Grid count and lengths against the closed form.
void check_against_grid(double alpha, double rp, double tp, double rq, double tq) {
  const ConeSurface s(alpha);
  const auto p = make_point(s, rp, tp), q = make_point(s, rq, tq);
  const auto exact = enumerate_classical(s, p, q);
  const auto grid = oracle::grid_shortest_per_sheet(s, p, q, oracle::GridSpec{});
  CHECK(oracle::grid_count(grid) == static_cast<int>(exact.size()));
  for (const auto& g : exact) {
    bool found = false;
    for (const auto& sl : grid) {
      if (!sl.length || std::abs(sl.delta - g.delta) > 1e-12) continue;
      found = true;
      CHECK(std::abs(*sl.length - g.length) / g.length < 0.01);
      CHECK(*sl.length >= g.length - 1e-3);
    }
    CHECK(found);
  }
}

}  // namespace

TEST_CASE("grid oracle agrees with enumeration") {
  check_against_grid(kPi / 2, 1, 0, 1, kPi / 5);
  check_against_grid(kPi / 3, 1, 0, 2, 0.3);
  check_against_grid(1.2 * kPi, 1, 0, 1, 2.2);
  check_against_grid(3 * kPi, 1, 0, 1.5, 1.0);
}

TEST_CASE("refining the grid at a fixed neighbour radius approaches the chord") {
  const ConeSurface s(kPi / 2);
  const auto p = make_point(s, 1, 0), q = make_point(s, 1, kPi / 5);
  const double exact = enumerate_classical(s, p, q)[2].length;  // sheet 1, delta 7pi/10
  double prev = kNoCutoff;
  for (const auto& [step, reach] : {std::pair{2e-2, 3.0}, {1e-2, 6.0}, {5e-3, 12.0}}) {
    const auto len = oracle::grid_shortest(s, p, q, 1, oracle::GridSpec{step, reach}, false, kNoCutoff);
    REQUIRE(len);
    const double err = std::abs(*len - exact);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev / exact < 0.01);
}

TEST_CASE("with the apex allowed, a sheet without a chord costs r_p + r_q") {
  const ConeSurface s(3 * kPi);
  const auto p = make_point(s, 1, 0), q = make_point(s, 1, 1.5 * kPi);
  CHECK(enumerate_classical(s, p, q).empty());
  const oracle::GridSpec coarse{1e-2, 5.0};
  const auto via = oracle::grid_shortest(s, p, q, 0, coarse, true, kNoCutoff);
  REQUIRE(via);
  CHECK(*via == doctest::Approx(2.0).epsilon(0.01));
  // Without it the grid must hug the apex and is no shorter.
  const auto around = oracle::grid_shortest(s, p, q, 0, coarse, false, kNoCutoff);
  REQUIRE(around);
  CHECK(*around >= *via - 1e-9);
  CHECK_FALSE(oracle::grid_shortest(s, p, q, 0, coarse, false, 2.0));
}

TEST_CASE("oracle input checks") {
  const ConeSurface s(kPi / 2);
  const auto p = make_point(s, 1, 0), v = make_point(s, 0, 0);
  CHECK_THROWS_AS(oracle::grid_shortest(s, p, v, 0, {}, false, 1.0), oracle::OracleError);
  CHECK_THROWS_AS(oracle::grid_shortest(s, p, make_point(s, 1, 0.3), 0, {0.0, 5.0}, false, 1.0),
                  oracle::OracleError);
  FilteredComplex big;
  for (int i = 0; i < 65; ++i) big.add_vertex(0.0);
  CHECK_THROWS_AS(oracle::exhaustive_homology(big, 1.0, 0.0), oracle::OracleError);
}
