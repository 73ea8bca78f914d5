#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "pplab/cost.hpp"
#include "pplab/geometry.hpp"
#include "pplab/graph.hpp"

namespace pplab {

// Cost of traversing the incidence from `from`; inward searches reverse the arguments.
inline double traversal_cost(const Graph& g, const Penalty& f, std::uint32_t from,
                             const Incidence& inc, Direction dir) {
  const double L = g.edges()[inc.edge].length;
  return dir == Direction::outward ? directed_edge_cost(f, g.weight(from), g.weight(inc.vertex), L)
                                   : directed_edge_cost(f, g.weight(inc.vertex), g.weight(from), L);
}

struct CostSearchResult {
  std::uint32_t source = 0;
  Direction direction = Direction::outward;
  std::vector<std::pair<std::uint32_t, double>> settled;
  bool frontier_exhausted = false;
};

struct SearchLimits {
  double budget = std::numeric_limits<double>::infinity();
  std::size_t max_settled = std::numeric_limits<std::size_t>::max();
  // Vertices above this weight are not entered (the source excepted).
  double weight_cap = std::numeric_limits<double>::infinity();
};

CostSearchResult cost_search(const Graph& g, const Penalty& f, std::uint32_t source,
                             Direction direction, SearchLimits limits = {});

struct ShortestPath {
  double distance = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> path;  // empty when unreachable
};

// Outward d(source, target), or inward (the cost of reaching source from target).
ShortestPath shortest_path(const Graph& g, const Penalty& f, std::uint32_t source,
                           std::uint32_t target, Direction direction = Direction::outward);

double sigma(const Graph& g, const Penalty& f, std::uint32_t v, std::size_t k);
std::size_t n1t(const Graph& g, const Penalty& f, std::uint32_t v, double t,
                Direction direction = Direction::outward);

struct TruncatedBall {
  std::vector<std::uint32_t> vertices;  // sorted
  std::vector<double> distances;        // aligned with vertices
  bool source_above_cap = false;
};

TruncatedBall truncated_ball(const Graph& g, const Penalty& f, std::uint32_t v, double T,
                             double w_cap);

struct ExteriorSet {
  double w_min = std::numeric_limits<double>::infinity();
  std::vector<std::uint32_t> vertices;  // tie set, sorted
  std::optional<std::uint32_t> representative;
  bool empty() const { return vertices.empty(); }
};

ExteriorSet exterior_set(const Graph& g, const Penalty& f, std::uint32_t v, double T,
                         double w_cap);

struct Components {
  std::vector<std::uint32_t> label;  // component id per vertex, ids by smallest member
  std::vector<std::size_t> sizes;    // indexed by component id
  std::size_t count() const { return sizes.size(); }
};

Components components(const Graph& g);
std::vector<std::uint32_t> largest_component(const Graph& g);
// Fractions of the largest and second-largest components.
std::pair<double, double> component_fractions(const Graph& g);

struct LeaderScan {
  double tau = 0.0;
  std::vector<std::vector<std::uint32_t>> leader;  // kNoVertex for empty sub-boxes
  std::vector<std::vector<bool>> good;
  std::vector<std::size_t> good_count;
  std::vector<bool> f1;
  std::vector<Interval> good_interval;  // (lo, hi] per annulus
  // Annulus index of each vertex that is a delta-good leader, else -1.
  std::vector<int> good_annulus;
};

std::pair<double, double> delta_good_bounds(const BoxingSystem& b, double tau, int k);
LeaderScan delta_good_scan(const Graph& g, const BoxingSystem& b, double tau);
// Threshold e^{(1-eps) M C^{k+1} (D-1)} of the neighbour-count event.
double f2_threshold(const BoxingSystem& b, int k, double epsilon);
std::vector<bool> check_F2(const Graph& g, const BoxingSystem& b, const LeaderScan& scan,
                           double epsilon);

struct GreedyPath {
  std::vector<std::uint32_t> vertices;
  std::vector<int> annuli;
  std::vector<double> hop_lengths;
  std::vector<double> hop_costs;
  double total_cost = 0.0;
};

struct GreedyOutcome {
  bool complete = false;
  GreedyPath path;         // the full path, or the prefix built before failing
  int failed_annulus = -1; // first annulus without an adjacent delta-good leader
};

GreedyOutcome build_greedy_path(const Graph& g, const BoxingSystem& b, const LeaderScan& scan,
                                const Penalty& f, std::uint32_t start_leader);

// A box-increasing path from u reaches a delta-good leader of the last annulus,
// and the last annulus satisfies F1.
bool successful(const Graph& g, const BoxingSystem& b, const LeaderScan& scan, std::uint32_t u);

struct CoreGraph {
  Graph graph;
  std::vector<std::uint32_t> original_ids;
  Interval weight_interval;  // (lo, hi]
  double q_r = 0.0;
};

struct CoreParams {
  double delta = 0.1;
  double C = 1.1;
  double D = 1.5;
  double tau = 2.5;
  double c2 = 1.0;
  double gamma = 1.0;
};

// Region is the box [lo, hi] (closed).
CoreGraph core_graph(const Graph& g, const std::vector<double>& region_lo,
                     const std::vector<double>& region_hi, double r_effective,
                     const CoreParams& params);

// Self-avoiding paths of k edges from v where every hop u->w has cost(u->w) <= t0.
std::uint64_t saw_path_count(const Graph& g, const Penalty& f, double t0, std::uint32_t v,
                             int k);

}  // namespace pplab
