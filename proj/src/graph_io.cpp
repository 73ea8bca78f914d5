#include "pplab/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pplab/format.hpp"

namespace pplab {

void write_graph(const Graph& g, std::ostream& os) {
  const VertexSet& vs = g.vertices();
  os << "#format pplab-graph 1\n";
  os << "#model " << g.model() << '\n';
  os << "#d " << vs.d() << '\n';
  os << "#n " << vs.size() << '\n';
  os << "#side " << format_real(vs.window.side) << '\n';
  if (vs.window.boundary == Boundary::torus) os << "#boundary torus\n";
  if (vs.origin_index) os << "#origin " << *vs.origin_index << '\n';
  for (std::size_t i = 0; i < vs.size(); ++i) {
    os << "v " << i;
    for (double x : vs.position(i)) os << ' ' << format_real(x);
    os << ' ' << format_real(vs.weights[i]) << '\n';
  }
  for (const Edge& e : g.edges())
    os << "e " << e.u << ' ' << e.v << ' ' << format_real(e.length) << '\n';
}

namespace {

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("graph file line " + std::to_string(line) + ": " + what);
}

}  // namespace

Graph read_graph(std::istream& is) {
  std::string line;
  std::size_t lineno = 0;
  std::string model = "custom";
  long long d = -1, n = -1;
  double side = -1.0;
  VertexSet vs;
  std::vector<Edge> edges;
  bool seen_format = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    std::vector<std::string> rest;
    for (std::string tok; ls >> tok;) rest.push_back(tok);
    try {
      if (tag == "#format") {
        if (rest.size() != 2 || rest[0] != "pplab-graph" || rest[1] != "1")
          fail(lineno, "unsupported format header");
        seen_format = true;
      } else if (!seen_format) {
        fail(lineno, "missing '#format pplab-graph 1' header");
      } else if (tag == "#model" && rest.size() == 1) {
        model = rest[0];
      } else if (tag == "#d" && rest.size() == 1) {
        d = parse_integer(rest[0]);
      } else if (tag == "#n" && rest.size() == 1) {
        n = parse_integer(rest[0]);
      } else if (tag == "#side" && rest.size() == 1) {
        side = parse_real(rest[0]);
      } else if (tag == "#boundary" && rest.size() == 1) {
        if (rest[0] != "torus" && rest[0] != "hard") fail(lineno, "unknown boundary");
        vs.window.boundary = rest[0] == "torus" ? Boundary::torus : Boundary::hard;
      } else if (tag == "#origin" && rest.size() == 1) {
        vs.origin_index = static_cast<std::uint32_t>(parse_integer(rest[0]));
      } else if (tag == "v") {
        if (d < 1 || n < 0 || side <= 0.0) fail(lineno, "vertex before #d/#n/#side headers");
        if (rest.size() != static_cast<std::size_t>(d) + 2) fail(lineno, "wrong vertex field count");
        if (parse_integer(rest[0]) != static_cast<long long>(vs.size()))
          fail(lineno, "vertex ids must be consecutive from 0");
        for (long long k = 0; k < d; ++k) vs.coords.push_back(parse_real(rest[static_cast<std::size_t>(k) + 1]));
        vs.weights.push_back(parse_real(rest.back()));
      } else if (tag == "e") {
        if (rest.size() != 3) fail(lineno, "wrong edge field count");
        const long long u = parse_integer(rest[0]), v = parse_integer(rest[1]);
        if (u < 0 || v < 0 || u >= v) fail(lineno, "edge endpoints must satisfy 0 <= u < v");
        edges.push_back({static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v),
                         parse_real(rest[2])});
      } else {
        fail(lineno, "unrecognised line");
      }
    } catch (const std::invalid_argument& e) {
      fail(lineno, e.what());
    }
  }
  if (!seen_format) throw std::runtime_error("graph file: empty or missing header");
  if (static_cast<long long>(vs.size()) != n) throw std::runtime_error("graph file: #n does not match vertex lines");
  vs.window.d = static_cast<int>(d);
  vs.window.side = side;
  try {
    return Graph(std::move(vs), std::move(edges), model);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("graph file: ") + e.what());
  }
}

void save_graph(const Graph& g, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_graph(g, os);
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

Graph load_graph(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  return read_graph(is);
}

}  // namespace pplab
