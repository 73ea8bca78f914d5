#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pplab/geometry.hpp"

namespace pplab {

constexpr std::uint32_t kNoVertex = 0xffffffffu;

struct VertexSet {
  Window window;
  std::vector<double> coords;  // size() * d values, row major
  std::vector<double> weights;
  std::optional<std::uint32_t> origin_index;

  std::size_t size() const { return weights.size(); }
  int d() const { return window.d; }
  std::span<const double> position(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(window.d),
            static_cast<std::size_t>(window.d)};
  }
  void validate() const;
};

struct Edge {
  std::uint32_t u = 0;  // u < v
  std::uint32_t v = 0;
  double length = 0.0;
};

struct Incidence {
  std::uint32_t vertex;
  std::uint32_t edge;
};

// Undirected graph in CSR form. Costs are directed and computed on demand.
class Graph {
 public:
  Graph() = default;
  Graph(VertexSet vertices, std::vector<Edge> edges, std::string model = "custom");

  const VertexSet& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& model() const { return model_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  double weight(std::size_t v) const { return vertices_.weights[v]; }
  std::size_t degree(std::size_t v) const { return offsets_[v + 1] - offsets_[v]; }
  std::span<const Incidence> neighbors(std::size_t v) const {
    return {incidences_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  // Edge id joining u and v, if present.
  std::optional<std::uint32_t> find_edge(std::uint32_t u, std::uint32_t v) const;

  // Same topology and vertices, lengths replaced edge by edge.
  Graph with_lengths(std::vector<double> lengths) const;

 private:
  VertexSet vertices_;
  std::vector<Edge> edges_;
  std::string model_;
  std::vector<std::size_t> offsets_;
  std::vector<Incidence> incidences_;
};

}  // namespace pplab
