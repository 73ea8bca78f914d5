#include "pplab/graph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pplab {

void VertexSet::validate() const {
  window.validate();
  if (coords.size() != weights.size() * static_cast<std::size_t>(window.d))
    throw std::invalid_argument("vertex set: coordinate count does not match weights");
  if (weights.size() >= kNoVertex) throw std::invalid_argument("vertex set: too many vertices");
  for (double w : weights)
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("vertex set: weights must be finite and > 0");
  if (origin_index && *origin_index >= weights.size())
    throw std::invalid_argument("vertex set: origin index out of range");
}

Graph::Graph(VertexSet vertices, std::vector<Edge> edges, std::string model)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), model_(std::move(model)) {
  vertices_.validate();
  const std::size_t n = vertices_.size();
  for (Edge& e : edges_) {
    if (e.u == e.v) throw std::invalid_argument("graph: self-loops are not allowed");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= n) throw std::invalid_argument("graph: edge endpoint out of range");
    if (!(e.length >= 0.0) || std::isnan(e.length))
      throw std::invalid_argument("graph: edge lengths must be >= 0");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& a, const Edge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
      throw std::invalid_argument("graph: duplicate edge");

  offsets_.assign(n + 1, 0);
  for (const Edge& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  incidences_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  // Edges are sorted, so lower neighbours arrive in order; higher ones follow sorted too.
  for (std::uint32_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    incidences_[fill[e.v]++] = {e.u, id};
  }
  for (std::uint32_t id = 0; id < edges_.size(); ++id) {
    const Edge& e = edges_[id];
    incidences_[fill[e.u]++] = {e.v, id};
  }
}

std::optional<std::uint32_t> Graph::find_edge(std::uint32_t u, std::uint32_t v) const {
  if (u >= vertex_count() || v >= vertex_count()) return std::nullopt;
  auto nb = neighbors(u);
  auto it = std::lower_bound(nb.begin(), nb.end(), v,
                             [](const Incidence& a, std::uint32_t x) { return a.vertex < x; });
  if (it != nb.end() && it->vertex == v) return it->edge;
  return std::nullopt;
}

Graph Graph::with_lengths(std::vector<double> lengths) const {
  if (lengths.size() != edges_.size())
    throw std::invalid_argument("with_lengths: one length per edge required");
  Graph g = *this;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!(lengths[i] >= 0.0)) throw std::invalid_argument("with_lengths: lengths must be >= 0");
    g.edges_[i].length = lengths[i];
  }
  return g;
}

}  // namespace pplab
