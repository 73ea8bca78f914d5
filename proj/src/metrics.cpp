#include "pplab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <queue>
#include <stdexcept>

namespace pplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using HeapItem = std::pair<double, std::uint32_t>;
using MinHeap = std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>>;

void check_vertex(const Graph& g, std::uint32_t v, const char* what) {
  if (v >= g.vertex_count()) throw std::out_of_range(std::string(what) + ": vertex out of range");
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), 0u);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
  }

 private:
  std::vector<std::uint32_t> parent_;
  std::vector<std::uint8_t> rank_;
};

}  // namespace

CostSearchResult cost_search(const Graph& g, const Penalty& f, std::uint32_t source,
                             Direction direction, SearchLimits limits) {
  check_vertex(g, source, "cost_search");
  CostSearchResult res;
  res.source = source;
  res.direction = direction;
  if (limits.max_settled == 0) return res;
  std::vector<double> dist(g.vertex_count(), kInf);
  std::vector<char> done(g.vertex_count(), 0);
  MinHeap heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    if (done[x]) {
      heap.pop();
      continue;
    }
    if (d > limits.budget) return res;
    heap.pop();
    done[x] = 1;
    res.settled.emplace_back(x, d);
    if (res.settled.size() >= limits.max_settled) {
      // Exhausted only if nothing else could still be settled.
      while (!heap.empty() && done[heap.top().second]) heap.pop();
      bool more = !heap.empty();
      if (!more)
        for (const Incidence& inc : g.neighbors(x))
          if (!done[inc.vertex] && g.weight(inc.vertex) <= limits.weight_cap) more = true;
      res.frontier_exhausted = !more;
      return res;
    }
    for (const Incidence& inc : g.neighbors(x)) {
      if (done[inc.vertex] || g.weight(inc.vertex) > limits.weight_cap) continue;
      const double nd = d + traversal_cost(g, f, x, inc, direction);
      if (nd < dist[inc.vertex]) {
        dist[inc.vertex] = nd;
        heap.emplace(nd, inc.vertex);
      }
    }
  }
  res.frontier_exhausted = true;
  return res;
}

ShortestPath shortest_path(const Graph& g, const Penalty& f, std::uint32_t source,
                           std::uint32_t target, Direction direction) {
  check_vertex(g, source, "shortest_path");
  check_vertex(g, target, "shortest_path");
  // Inward: reversed costs from source give the cost of travelling target -> source,
  // and the predecessor chain already lists the path in travel order.
  std::vector<double> dist(g.vertex_count(), kInf);
  std::vector<std::uint32_t> pred(g.vertex_count(), kNoVertex);
  std::vector<char> done(g.vertex_count(), 0);
  MinHeap heap;
  dist[source] = 0.0;
  heap.emplace(0.0, source);
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (done[x]) continue;
    done[x] = 1;
    if (x == target) break;
    for (const Incidence& inc : g.neighbors(x)) {
      if (done[inc.vertex]) continue;
      const double nd = d + traversal_cost(g, f, x, inc, direction);
      if (nd < dist[inc.vertex]) {
        dist[inc.vertex] = nd;
        pred[inc.vertex] = x;
        heap.emplace(nd, inc.vertex);
      }
    }
  }
  ShortestPath sp;
  if (!done[target]) return sp;
  sp.distance = dist[target];
  for (std::uint32_t x = target; x != kNoVertex; x = pred[x]) sp.path.push_back(x);
  if (direction == Direction::outward) std::reverse(sp.path.begin(), sp.path.end());
  return sp;
}

double sigma(const Graph& g, const Penalty& f, std::uint32_t v, std::size_t k) {
  SearchLimits lim;
  lim.max_settled = k + 1;
  const auto res = cost_search(g, f, v, Direction::outward, lim);
  return res.settled.size() > k ? res.settled[k].second : kInf;
}

std::size_t n1t(const Graph& g, const Penalty& f, std::uint32_t v, double t, Direction direction) {
  check_vertex(g, v, "n1t");
  if (t < 0.0) throw std::invalid_argument("n1t: t must be >= 0");
  std::size_t count = 0;
  for (const Incidence& inc : g.neighbors(v))
    if (traversal_cost(g, f, v, inc, direction) <= t) ++count;
  return count;
}

TruncatedBall truncated_ball(const Graph& g, const Penalty& f, std::uint32_t v, double T,
                             double w_cap) {
  check_vertex(g, v, "truncated_ball");
  if (!(T >= 0.0) || !(w_cap >= 0.0))
    throw std::invalid_argument("truncated_ball: T and w_cap must be >= 0");
  TruncatedBall ball;
  if (g.weight(v) > w_cap) {
    ball.source_above_cap = true;
    return ball;
  }
  SearchLimits lim;
  lim.budget = T;
  lim.weight_cap = w_cap;
  auto res = cost_search(g, f, v, Direction::outward, lim);
  std::sort(res.settled.begin(), res.settled.end());
  for (auto [x, d] : res.settled) {
    ball.vertices.push_back(x);
    ball.distances.push_back(d);
  }
  return ball;
}

ExteriorSet exterior_set(const Graph& g, const Penalty& f, std::uint32_t v, double T,
                         double w_cap) {
  const TruncatedBall ball = truncated_ball(g, f, v, T, w_cap);
  ExteriorSet ex;
  std::vector<std::uint32_t> cand;
  for (std::size_t i = 0; i < ball.vertices.size(); ++i) {
    const std::uint32_t u1 = ball.vertices[i];
    for (const Incidence& inc : g.neighbors(u1)) {
      const double w = g.weight(inc.vertex);
      if (w <= w_cap) continue;
      if (ball.distances[i] + traversal_cost(g, f, u1, inc, Direction::outward) > T) continue;
      if (w < ex.w_min) {
        ex.w_min = w;
        cand.clear();
      }
      if (w == ex.w_min) cand.push_back(inc.vertex);
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  ex.vertices = cand;
  double best = kInf;
  const auto& vs = g.vertices();
  for (std::uint32_t u : cand) {
    const double dist = pair_distance(vs.position(u), vs.position(v), vs.window);
    if (dist < best) {
      best = dist;
      ex.representative = u;
    }
  }
  return ex;
}

Components components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  DisjointSets ds(n);
  for (const Edge& e : g.edges()) ds.unite(e.u, e.v);
  Components c;
  c.label.assign(n, kNoVertex);
  std::vector<std::uint32_t> id_of_root(n, kNoVertex);
  for (std::uint32_t x = 0; x < n; ++x) {
    const std::uint32_t r = ds.find(x);
    if (id_of_root[r] == kNoVertex) {
      id_of_root[r] = static_cast<std::uint32_t>(c.sizes.size());
      c.sizes.push_back(0);
    }
    c.label[x] = id_of_root[r];
    ++c.sizes[id_of_root[r]];
  }
  return c;
}

std::vector<std::uint32_t> largest_component(const Graph& g) {
  const Components c = components(g);
  if (c.count() == 0) return {};
  const auto best = static_cast<std::uint32_t>(
      std::max_element(c.sizes.begin(), c.sizes.end()) - c.sizes.begin());
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < c.label.size(); ++x)
    if (c.label[x] == best) out.push_back(x);
  return out;
}

std::pair<double, double> component_fractions(const Graph& g) {
  const Components c = components(g);
  if (c.count() == 0) return {0.0, 0.0};
  std::vector<std::size_t> s = c.sizes;
  std::sort(s.rbegin(), s.rend());
  const auto n = static_cast<double>(g.vertex_count());
  return {static_cast<double>(s[0]) / n, s.size() > 1 ? static_cast<double>(s[1]) / n : 0.0};
}

std::pair<double, double> delta_good_bounds(const BoxingSystem& b, double tau, int k) {
  const double base = b.M() * std::pow(b.C(), k) / (tau - 1.0);
  return {std::exp((1.0 - b.delta()) * base), std::exp((1.0 + b.delta()) * base)};
}

LeaderScan delta_good_scan(const Graph& g, const BoxingSystem& b, double tau) {
  if (!(tau > 1.0)) throw std::invalid_argument("delta_good_scan: tau must be > 1");
  if (g.vertices().d() != b.d()) throw std::invalid_argument("delta_good_scan: dimension mismatch");
  LeaderScan s;
  s.tau = tau;
  const int K = b.k_star();
  for (int k = 0; k <= K; ++k) {
    s.leader.emplace_back(b.subbox_count(k), kNoVertex);
    auto [lo, hi] = delta_good_bounds(b, tau, k);
    s.good_interval.push_back({lo, hi});
  }
  for (std::uint32_t x = 0; x < g.vertex_count(); ++x) {
    const auto loc = b.locate(g.vertices().position(x));
    if (!loc) continue;
    std::uint32_t& lead = s.leader[static_cast<std::size_t>(loc->annulus)][loc->index];
    if (lead == kNoVertex || g.weight(x) > g.weight(lead)) lead = x;
  }
  s.good_annulus.assign(g.vertex_count(), -1);
  for (int k = 0; k <= K; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const Interval iv = s.good_interval[ku];
    s.good.emplace_back(s.leader[ku].size(), false);
    std::size_t count = 0;
    for (std::size_t i = 0; i < s.leader[ku].size(); ++i) {
      const std::uint32_t lead = s.leader[ku][i];
      if (lead == kNoVertex) continue;
      const double w = g.weight(lead);
      if (w > iv.lo && w <= iv.hi) {
        s.good[ku][i] = true;
        s.good_annulus[lead] = k;
        ++count;
      }
    }
    s.good_count.push_back(count);
    s.f1.push_back(2 * count >= s.leader[ku].size());
  }
  return s;
}

double f2_threshold(const BoxingSystem& b, int k, double epsilon) {
  return std::exp((1.0 - epsilon) * b.M() * std::pow(b.C(), k + 1) * (b.D() - 1.0));
}

std::vector<bool> check_F2(const Graph& g, const BoxingSystem& b, const LeaderScan& scan,
                           double epsilon) {
  const int K = b.k_star();
  std::vector<bool> out(static_cast<std::size_t>(K + 1), true);
  for (int k = 0; k < K; ++k) {
    const double need = f2_threshold(b, k, epsilon);
    const auto ku = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < scan.leader[ku].size() && out[ku]; ++i) {
      if (!scan.good[ku][i]) continue;
      std::size_t count = 0;
      for (const Incidence& inc : g.neighbors(scan.leader[ku][i]))
        if (scan.good_annulus[inc.vertex] == k + 1) ++count;
      if (static_cast<double>(count) < need) out[ku] = false;
    }
  }
  return out;
}

GreedyOutcome build_greedy_path(const Graph& g, const BoxingSystem& b, const LeaderScan& scan,
                                const Penalty& f, std::uint32_t start_leader) {
  check_vertex(g, start_leader, "build_greedy_path");
  int k = scan.good_annulus[start_leader];
  if (k < 0) throw std::invalid_argument("build_greedy_path: start is not a delta-good leader");
  GreedyOutcome out;
  out.path.vertices.push_back(start_leader);
  out.path.annuli.push_back(k);
  std::uint32_t cur = start_leader;
  for (; k < b.k_star(); ++k) {
    std::uint32_t best = kNoVertex;
    double best_len = kInf;
    const Incidence* best_inc = nullptr;
    for (const Incidence& inc : g.neighbors(cur)) {
      if (scan.good_annulus[inc.vertex] != k + 1) continue;
      const double L = g.edges()[inc.edge].length;
      if (L < best_len || best == kNoVertex) {
        best = inc.vertex;
        best_len = L;
        best_inc = &inc;
      }
    }
    if (best == kNoVertex) {
      out.failed_annulus = k + 1;
      return out;
    }
    const double c = traversal_cost(g, f, cur, *best_inc, Direction::outward);
    out.path.vertices.push_back(best);
    out.path.annuli.push_back(k + 1);
    out.path.hop_lengths.push_back(best_len);
    out.path.hop_costs.push_back(c);
    out.path.total_cost += c;
    cur = best;
  }
  out.complete = true;
  return out;
}

bool successful(const Graph& g, const BoxingSystem& b, const LeaderScan& scan, std::uint32_t u) {
  check_vertex(g, u, "successful");
  const int K = b.k_star();
  if (!scan.f1[static_cast<std::size_t>(K)]) return false;
  if (scan.good_annulus[u] == K) return true;
  // reach[x]: a box-increasing continuation from good leader x ends in annulus K.
  std::vector<char> reach(g.vertex_count(), 0);
  for (int k = K; k >= 1; --k) {
    const auto ku = static_cast<std::size_t>(k);
    for (std::size_t i = 0; i < scan.leader[ku].size(); ++i) {
      if (!scan.good[ku][i]) continue;
      const std::uint32_t x = scan.leader[ku][i];
      if (k == K) {
        reach[x] = 1;
        continue;
      }
      for (const Incidence& inc : g.neighbors(x))
        if (scan.good_annulus[inc.vertex] == k + 1 && reach[inc.vertex]) {
          reach[x] = 1;
          break;
        }
    }
  }
  for (const Incidence& inc : g.neighbors(u))
    if (scan.good_annulus[inc.vertex] >= 1 && reach[inc.vertex]) return true;
  return false;
}

CoreGraph core_graph(const Graph& g, const std::vector<double>& region_lo,
                     const std::vector<double>& region_hi, double r_effective,
                     const CoreParams& p) {
  const int d = g.vertices().d();
  if (static_cast<int>(region_lo.size()) != d || static_cast<int>(region_hi.size()) != d)
    throw std::invalid_argument("core_graph: region dimension mismatch");
  if (!(r_effective > 1.0)) throw std::invalid_argument("core_graph: r must be > 1");
  const double rd = std::pow(r_effective, d);
  CoreGraph core;
  core.weight_interval = {std::pow(rd, (1.0 - p.delta) / (p.D * p.C * (p.tau - 1.0))),
                          std::pow(rd, (1.0 + p.delta) / (p.tau - 1.0))};
  core.q_r = std::exp(-2.0 * p.c2 * std::pow(std::log(rd), p.gamma) *
                      std::pow((1.0 + p.delta) / (p.tau - 1.0), p.gamma));
  const VertexSet& vs = g.vertices();
  std::vector<std::uint32_t> new_id(g.vertex_count(), kNoVertex);
  VertexSet sub;
  sub.window = vs.window;
  for (std::uint32_t x = 0; x < g.vertex_count(); ++x) {
    const double w = g.weight(x);
    if (!(w > core.weight_interval.lo && w <= core.weight_interval.hi)) continue;
    auto pos = vs.position(x);
    bool inside = true;
    for (int j = 0; j < d; ++j)
      if (pos[j] < region_lo[j] || pos[j] > region_hi[j]) inside = false;
    if (!inside) continue;
    new_id[x] = static_cast<std::uint32_t>(core.original_ids.size());
    core.original_ids.push_back(x);
    sub.coords.insert(sub.coords.end(), pos.begin(), pos.end());
    sub.weights.push_back(w);
  }
  if (vs.origin_index && new_id[*vs.origin_index] != kNoVertex)
    sub.origin_index = new_id[*vs.origin_index];
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (new_id[e.u] != kNoVertex && new_id[e.v] != kNoVertex)
      edges.push_back({new_id[e.u], new_id[e.v], e.length});
  core.graph = Graph(std::move(sub), std::move(edges), g.model());
  return core;
}

std::uint64_t saw_path_count(const Graph& g, const Penalty& f, double t0, std::uint32_t v, int k) {
  check_vertex(g, v, "saw_path_count");
  if (k < 0 || k > 8) throw std::invalid_argument("saw_path_count: k must lie in [0, 8]");
  std::vector<char> on_path(g.vertex_count(), 0);
  std::function<std::uint64_t(std::uint32_t, int)> walk = [&](std::uint32_t x, int left) {
    if (left == 0) return std::uint64_t{1};
    on_path[x] = 1;
    std::uint64_t total = 0;
    for (const Incidence& inc : g.neighbors(x)) {
      if (on_path[inc.vertex]) continue;
      if (traversal_cost(g, f, x, inc, Direction::outward) <= t0) total += walk(inc.vertex, left - 1);
    }
    on_path[x] = 0;
    return total;
  };
  return walk(v, k);
}

}  // namespace pplab
