#pragma once

#include <iosfwd>
#include <string>

#include "pplab/graph.hpp"

namespace pplab {

// Text format:
//   #format pplab-graph 1
//   #model <name>
//   #d <d>
//   #n <n>
//   #side <real>
//   [#boundary torus]
//   [#origin <id>]
//   v <id> <x_1> ... <x_d> <weight>
//   e <u> <v> <L>          (u < v)
void write_graph(const Graph& g, std::ostream& os);
Graph read_graph(std::istream& is);
void save_graph(const Graph& g, const std::string& path);
Graph load_graph(const std::string& path);

}  // namespace pplab
