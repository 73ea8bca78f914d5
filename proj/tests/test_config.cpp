#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "pplab/config.hpp"
#include "pplab/graph_io.hpp"
#include "pplab/metrics.hpp"

using namespace pplab;

TEST_CASE("run configuration round trip") {
  const std::string text =
      "# sweep\nmodel = girg\nn=2000\nd=2\ntau=2.5\nalpha=2\nc=0.5\nlaws=poly:0.1 poly:1\n"
      "penalty=mono:1,0.5\nsizes=1024 4096\nseed=18446744073709551615\n";
  const RunConfig a = RunConfig::parse(text);
  const RunConfig b = RunConfig::parse(a.serialize());
  CHECK(a == b);
  CHECK(b.serialize() == a.serialize());
  CHECK(a.integer("n", 0) == 2000);
  CHECK(seed_from_config(a) == 18446744073709551615ULL);
  CHECK(a.text("missing", "x") == "x");
  const ModelSpec m = model_spec_from_config(a);
  REQUIRE(std::holds_alternative<GirgSpec>(m.variant));
  CHECK(std::get<GirgSpec>(m.variant).c == 0.5);
  const SweepSpec s = sweep_spec_from_config(a);
  CHECK(s.laws.size() == 2);
  CHECK(s.sizes == std::vector<double>{1024, 4096});

  CHECK_THROWS_AS(RunConfig::parse("colour=red\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("n=1\nn=2\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("n 5\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("n=1.5\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("model=er\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig::parse("pin_origin=yes\n"), ConfigError);
  CHECK_THROWS_AS(RunConfig().get("model"), ConfigError);
}

TEST_CASE("penalty and length-law grammar") {
  CHECK(parse_penalty("prod:1")(2.0, 3.0) == 6.0);
  CHECK(parse_penalty("mono:2,0.5")(3.0, 4.0) == doctest::Approx(18.0));
  CHECK(parse_penalty("sum:1")(2.0, 3.0) == doctest::Approx(5.0));
  CHECK(parse_penalty("max:2")(2.0, 3.0) == doctest::Approx(9.0));
  CHECK(parse_penalty("poly:1,1,0;2,0,1")(2.0, 3.0) == doctest::Approx(8.0));
  CHECK(parse_penalty("poly:1,7,0;1,0,3").degree() == 7.0);
  for (const char* bad : {"prod", "prod:", "prod:x", "mono:1", "poly:1,2", "cube:1", "prod:1,2"})
    CHECK_THROWS_AS(parse_penalty(bad), ConfigError);
  CHECK(std::get<PolyAtZero>(parse_law("poly:0.5")).beta == 0.5);
  CHECK(std::get<Exponential>(parse_law("exp:2")).rate == 2.0);
  CHECK(std::get<PointMass>(parse_law("point:0.3")).value == 0.3);
  CHECK(std::holds_alternative<DoubleExpFlat>(parse_law("dexp:2,1,1")));
  for (const char* bad : {"poly:0", "exp:-1", "dexp:1,1,1", "gamma:1", "poly"})
    CHECK_THROWS_AS(parse_law(bad), ConfigError);
}

TEST_CASE("graph files") {
  ModelSpec m;
  m.variant = GirgSpec{200, 2, 2.5, 2.0, 1.0, 1.0};
  const Graph g = generate(m, 3);
  std::ostringstream first;
  write_graph(g, first);
  std::istringstream in(first.str());
  const Graph back = read_graph(in);
  std::ostringstream second;
  write_graph(back, second);
  CHECK(first.str() == second.str());
  CHECK(back.edge_count() == g.edge_count());
  CHECK(back.vertices().weights == g.vertices().weights);

  ModelSpec pinned;
  pinned.variant = IgirgWindowSpec{1.0, 1, 30.0, 2.5, 2.0, 1.0, 1.0};
  pinned.pin_origin = true;
  pinned.boundary = Boundary::torus;
  const Graph h = generate(pinned, 5);
  std::ostringstream hs;
  write_graph(h, hs);
  std::istringstream his(hs.str());
  const Graph hb = read_graph(his);
  CHECK(hb.vertices().origin_index == h.vertices().origin_index);
  CHECK(hb.vertices().window.boundary == Boundary::torus);

  for (const char* bad : {"", "#format other 1\n", "#format pplab-graph 1\nv 0 1 1\n",
                          "#format pplab-graph 1\n#model x\n#d 1\n#n 2\n#side 4\nv 0 0 1\nv 2 1 1\n",
                          "#format pplab-graph 1\n#model x\n#d 1\n#n 2\n#side 4\nv 0 0 1\nv 1 1 1\ne 1 0 1\n",
                          "#format pplab-graph 1\n#model x\n#d 1\n#n 3\n#side 4\nv 0 0 1\nv 1 1 1\n"}) {
    std::istringstream is(bad);
    CHECK_THROWS_AS(read_graph(is), std::runtime_error);
  }
  CHECK_THROWS(load_graph("/nonexistent/file.graph"));
}

TEST_CASE("fixture distances match hand arithmetic") {
  const Graph g = load_graph(PPLAB_TEST_DATA "/tiny.graph");
  REQUIRE(g.vertex_count() == 4);
  // Weights 1, 2, 4, 1. Product penalty: 0-1 costs 0.5*2 = 1, 1-2 costs 0.25*8 = 2, 0-2 costs 2*4 = 8.
  const auto p = shortest_path(g, parse_penalty("prod:1"), 0, 2);
  CHECK(p.distance == 3.0);
  CHECK(p.path == std::vector<std::uint32_t>{0, 1, 2});
  // f = w1: 0-1 costs 0.5, 1-2 costs 0.5, 0-2 costs 2.
  CHECK(shortest_path(g, parse_penalty("mono:1,0"), 0, 2).distance == 1.0);
  // Inward to 0 from 2 under f = w1: the hop 2 to 1 costs 0.25*4 = 1, the hop 1 to 0 costs 0.5*2 = 1.
  CHECK(shortest_path(g, parse_penalty("mono:1,0"), 0, 2, Direction::inward).distance == 2.0);
  CHECK(std::isinf(shortest_path(g, parse_penalty("prod:1"), 0, 3).distance));
  CHECK(shortest_path(g, parse_penalty("prod:1"), 1, 1).distance == 0.0);
}
