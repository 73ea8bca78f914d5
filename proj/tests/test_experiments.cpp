#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "pplab/experiments.hpp"
#include "pplab/randomness.hpp"

using namespace pplab;

namespace {

SweepSpec small_sweep() {
  SweepSpec s;
  s.model.variant = GirgSpec{64, 1, 2.5, 2.0, 1.0, 1.0};
  s.laws = {PolyAtZero{0.5}, PolyAtZero{2.0}};
  s.sizes = {64, 128};
  s.pairs_per_graph = 5;
  s.graphs_per_cell = 2;
  s.seed = 77;
  return s;
}

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("sweeps are reproducible") {
  SweepSpec a = small_sweep();
  const std::string c1 = sweep_csv(phase_sweep(a));
  a.workers = 3;
  const std::string c2 = sweep_csv(phase_sweep(a));
  CHECK(c1 == c2);
  CHECK(line_count(c1) == 1 + 4);
  CHECK(c1.rfind("beta,n,median_d,q1,q3,giant_frac,verdict,seed", 0) == 0);
  a.seed = 78;
  CHECK(sweep_csv(phase_sweep(a)) != c1);

  SweepSpec one = small_sweep();
  one.laws = {Exponential{1.0}};
  one.sizes = {64};
  const auto cells = phase_sweep(one);
  REQUIRE(cells.size() == 1);
  CHECK(line_count(sweep_csv(cells)) == 2);
  CHECK(cells[0].distances.size() == 10);
  std::vector<double> d = cells[0].distances;
  std::sort(d.begin(), d.end());
  CHECK(cells[0].median == quantile_sorted(d, 0.5));
  CHECK(cells[0].q1 <= cells[0].median);
  CHECK(cells[0].median <= cells[0].q3);

  SweepSpec bad = small_sweep();
  bad.laws.clear();
  CHECK_THROWS_AS(phase_sweep(bad), std::invalid_argument);
}

TEST_CASE("quantiles and slopes") {
  CHECK(std::isnan(quantile_sorted({}, 0.5)));
  CHECK(quantile_sorted({4.0}, 0.3) == 4.0);
  CHECK(quantile_sorted({1, 2, 3, 4, 5}, 0.5) == 3.0);
  CHECK(quantile_sorted({1, 2, 3, 4}, 0.5) == 2.5);
  CHECK(quantile_sorted({1, 2, 3, 4, 5}, 0.25) == 2.0);
  CHECK(quantile_sorted({0, 10}, 0.3) == doctest::Approx(3.0));
  CHECK(least_squares_slope({0, 1, 2}, {1, 3, 5}) == doctest::Approx(2.0));
  CHECK_THROWS(least_squares_slope({1, 1}, {0, 1}));
  CHECK_THROWS(least_squares_slope({1}, {0}));
  // Medians 3, 4, 5 at sizes 2^10, 2^12, 2^14: half a unit per doubling.
  CHECK(median_slope_per_doubling({1024, 4096, 16384}, {3, 4, 5}) == doctest::Approx(0.5));
  CHECK(median_slope_per_doubling({1024, 4096, 16384}, {2, 2, 2}) == 0.0);
}

TEST_CASE("Hill estimator on exact Pareto samples") {
  std::vector<double> v;
  for (std::uint64_t i = 0; i < 100000; ++i) v.push_back(sample_weight({5, "hill", i}, WeightLaw{2.5, {}}));
  const double a = tail_exponent_estimate(v, 0.01);
  CHECK(std::abs(a - 1.5) <= 0.15);
  CHECK_THROWS(tail_exponent_estimate(std::vector<double>(100000, 3.0), 0.01));
  CHECK_THROWS(tail_exponent_estimate(v, 0.0001));
  CHECK_THROWS(tail_exponent_estimate(v, 1.0));
}

TEST_CASE("degree-weight profile") {
  VertexSet vs;
  vs.window = {1, 100.0, Boundary::hard};
  for (int i = 0; i < 40; ++i) {
    vs.coords.push_back(i);
    vs.weights.push_back(i < 20 ? 2.0 : 20.0);
  }
  std::vector<Edge> edges;
  // Every heavy vertex links to the next one: degree 1 or 2 in decade 1, 0 in decade 0.
  for (std::uint32_t i = 20; i + 1 < 40; ++i) edges.push_back({i, i + 1, 1.0});
  const Graph g(vs, edges);
  const auto bins = degree_weight_profile(g);
  REQUIRE(bins.size() == 2);
  CHECK(bins[0].decade == 0);
  CHECK(bins[0].count == 20);
  CHECK(bins[0].mean_degree == 0.0);
  CHECK(!bins[0].reliable);
  CHECK(bins[1].decade == 1);
  CHECK(bins[1].mean_degree == doctest::Approx(38.0 / 20.0));
  CHECK(bins[1].mean_weight == 20.0);
  CHECK(bins[1].ratio == doctest::Approx(38.0 / 400.0));
  CHECK(std::isnan(ratio_spread(bins)));
  CHECK(degree_weight_profile(g, 10.0).size() == 1);
  std::vector<DecadeBin> two(2);
  two[0].ratio = 0.5;
  two[1].ratio = 2.0;
  two[0].reliable = two[1].reliable = true;
  CHECK(ratio_spread(two) == 4.0);
}

TEST_CASE("giant fraction curve trivial cases") {
  ModelSpec m;
  m.variant = GirgSpec{50, 1, 2.5, 2.0, 0.0, 1.0};
  const auto none = giant_fraction_curve(m, {50, 100}, 3, 1);
  REQUIRE(none.size() == 2);
  CHECK(none[0].mean_largest == doctest::Approx(1.0 / 50));
  CHECK(none[1].mean_second == doctest::Approx(1.0 / 100));
  m.variant = SfpWindowSpec{1, 5, 2.5, 0.0, 2.0};
  const auto chain = giant_fraction_curve(m, {5, 6}, 2, 1);
  CHECK(chain[0].mean_largest == 1.0);
  CHECK(chain[1].mean_second == 0.0);
  CHECK_THROWS(giant_fraction_curve(m, {}, 2, 1));
}

TEST_CASE("asymmetry experiment") {
  ModelSpec m;
  m.variant = IgirgWindowSpec{1.0, 1, 400.0, 1.5, 2.0, 1.0, 1.0};
  m.pin_origin = true;
  const std::vector<double> sides{100.0, 400.0};
  const Penalty f = Penalty::monomial(3.0, 0.25);
  const auto zero = asymmetry_experiment(m, f, sides, 0.0, 4, 3);
  for (const auto& p : zero) {
    CHECK(p.mean_outward == 0.0);
    CHECK(p.mean_inward == 0.0);
  }
  const auto sym = asymmetry_experiment(m, Penalty::product(1.0), sides, 5.0, 4, 3);
  for (const auto& p : sym) CHECK(p.outward == p.inward);

  const double t = 3.0;
  const auto pts = asymmetry_experiment(m, f, sides, t, 5, 9, 2);
  for (std::size_t r = 0; r < 5; ++r) {
    // Oracle: one-hop neighbourhoods of the origin in the full graph.
    const Graph g = generate(m, derive_seed(9, "asymmetry", r));
    const std::uint32_t o = *g.vertices().origin_index;
    CHECK(pts[1].outward[r] == static_cast<double>(n1t(g, f, o, t, Direction::outward)));
    CHECK(pts[1].inward[r] == static_cast<double>(n1t(g, f, o, t, Direction::inward)));
    CHECK(pts[0].outward[r] <= pts[1].outward[r]);
  }
  const auto heavy = asymmetry_experiment(m, f, sides, 1.0, 5, 9, 1, 1e6);
  for (const auto& p : heavy) CHECK(p.mean_outward == 0.0);
  CHECK_THROWS(asymmetry_experiment(m, f, sides, 1.0, 5, 9, 1, 0.0));
  ModelSpec unpinned = m;
  unpinned.pin_origin = false;
  CHECK_THROWS(asymmetry_experiment(unpinned, f, sides, t, 1, 1));
}

TEST_CASE("limit kernel of the hyperbolic model") {
  CHECK(hrg_kernel_prediction(0.0, 0.5) == 1.0);
  CHECK(hrg_kernel_prediction(INFINITY, 0.5) == 0.0);
  CHECK(hrg_kernel_prediction(1.0, 0.5) == 0.5);
  CHECK(hrg_kernel_prediction(4.0, 0.5) == doctest::Approx(1.0 / 17.0));
  double prev = 1.0;
  for (double a = 0.01; a < 100.0; a *= 1.5) {
    const double p = hrg_kernel_prediction(a, 0.3);
    CHECK(p < prev);
    prev = p;
  }
}

TEST_CASE("two-point distances") {
  VertexSet vs;
  vs.window = {1, 100.0, Boundary::hard};
  vs.coords = {0, 1, 2, 3};
  vs.weights = {1, 1, 1, 1};
  const Graph g(vs, {{0, 1, 1.0}, {1, 2, 1.0}});
  const auto pairs = sample_giant_pairs(g, 50, 4);
  CHECK(pairs.size() == 50);
  for (auto [a, b] : pairs) {
    CHECK(a != b);
    CHECK(a < 3);
    CHECK(b < 3);
  }
  const auto d = two_point_distance(g, Penalty::product(1.0), 50, 4);
  for (std::size_t i = 0; i < d.size(); ++i)
    CHECK(d[i] == std::abs(static_cast<double>(pairs[i].first) - static_cast<double>(pairs[i].second)));
  CHECK(two_point_distance(g, Penalty::product(1.0), 0, 4).empty());
  const Graph empty(vs, {});
  CHECK_THROWS(two_point_distance(empty, Penalty::product(1.0), 1, 4));
}
