#include "pplab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "pplab/format.hpp"
#include "pplab/metrics.hpp"

namespace pplab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint32_t draw_index(const Stream& s, std::uint64_t counter, std::size_t n) {
  const auto i = static_cast<std::size_t>(s.uniform_open(counter) * static_cast<double>(n));
  return static_cast<std::uint32_t>(std::min(i, n - 1));
}

}  // namespace

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& job) {
  workers = std::max(1u, workers);
  if (workers == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto loop = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  for (unsigned w = 0; w < std::min<std::size_t>(workers, count); ++w) threads.emplace_back(loop);
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> sample_giant_pairs(const Graph& g,
                                                                        std::size_t pairs,
                                                                        std::uint64_t seed) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  if (pairs == 0) return out;
  const auto giant = largest_component(g);
  if (giant.size() < 2)
    throw std::runtime_error("two_point_distance: largest component has fewer than 2 vertices");
  std::vector<char> in_giant(g.vertex_count(), 0);
  for (auto v : giant) in_giant[v] = 1;
  const Stream s(seed, "pairs");
  const std::size_t n = g.vertex_count();
  std::uint64_t counter = 0;
  auto draw = [&](std::uint32_t avoid) {
    while (true) {
      const std::uint32_t v = draw_index(s, counter++, n);
      if (in_giant[v] && v != avoid) return v;
    }
  };
  for (std::size_t i = 0; i < pairs; ++i) {
    const std::uint32_t a = draw(kNoVertex);
    out.emplace_back(a, draw(a));
  }
  return out;
}

std::vector<double> two_point_distance(const Graph& g, const Penalty& f, std::size_t pairs,
                                       std::uint64_t seed) {
  std::vector<double> out;
  for (auto [a, b] : sample_giant_pairs(g, pairs, seed))
    out.push_back(shortest_path(g, f, a, b).distance);
  return out;
}

double model_alpha(const ModelSpec& model) {
  return std::visit(Overloaded{
                        [](const GirgSpec& s) { return s.alpha; },
                        [](const IgirgWindowSpec& s) { return s.alpha; },
                        [](const SfpWindowSpec& s) { return s.alpha_norm; },
                        [](const HrgSpec& s) { return s.t_h ? 1.0 / *s.t_h : kInfinity; },
                    },
                    model.variant);
}

PhaseVerdict cell_verdict(const ModelSpec& model, const Penalty& f, const EdgeLengthLaw& law) {
  if (f.degree() == 0.0) {
    const FppFunctional I = fpp_explosion_functional(law, 5);
    PhaseVerdict v;
    v.outcome = I.convergent ? Outcome::ExplosiveLengthwise : Outcome::Conservative;
    v.triggered_condition = I.convergent ? "I(L) < inf" : "I(L) = inf";
    return v;
  }
  const auto [bm, bp] = beta_exponents(law);
  return classify(f, tau_of(model), model_alpha(model), bm, bp);
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  if (frac == 0.0) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::vector<CellResult> phase_sweep(const SweepSpec& spec) {
  if (spec.laws.empty() || spec.sizes.empty())
    throw std::invalid_argument("phase_sweep: law and size grids must be non-empty");
  if (spec.graphs_per_cell == 0) throw std::invalid_argument("phase_sweep: graphs_per_cell must be >= 1");
  for (double s : spec.sizes) validate(with_size(spec.model, s));
  for (const auto& law : spec.laws) validate(law);

  const std::size_t nl = spec.laws.size(), ns = spec.sizes.size(), ng = spec.graphs_per_cell;
  struct JobOut {
    std::vector<std::vector<double>> per_law;
    double giant = 0.0;
    std::string error;
  };
  std::vector<JobOut> jobs(ns * ng);
  parallel_for(jobs.size(), spec.workers, [&](std::size_t j) {
    const std::size_t si = j / ng, gi = j % ng;
    JobOut& out = jobs[j];
    out.per_law.resize(nl);
    const std::uint64_t gseed = derive_seed(spec.seed, "graph", (std::uint64_t{si} << 32) | gi);
    try {
      const Graph topo = generate(with_size(spec.model, spec.sizes[si]), gseed);
      out.giant = component_fractions(topo).first;
      const auto pairs = sample_giant_pairs(topo, spec.pairs_per_graph, gseed);
      for (std::size_t li = 0; li < nl; ++li) {
        const Graph g = topo.with_lengths(assign_lengths(topo, spec.laws[li], gseed));
        for (auto [a, b] : pairs)
          out.per_law[li].push_back(shortest_path(g, spec.penalty, a, b).distance);
      }
    } catch (const std::runtime_error&) {
      out.error = "giant-too-small";
    }
  });

  std::vector<CellResult> cells;
  for (std::size_t li = 0; li < nl; ++li) {
    for (std::size_t si = 0; si < ns; ++si) {
      CellResult c;
      c.beta = beta_exponents(spec.laws[li]).second;
      c.size = spec.sizes[si];
      c.law = describe(spec.laws[li]);
      c.seed = spec.seed;
      c.verdict = cell_verdict(spec.model, spec.penalty, spec.laws[li]);
      for (std::size_t gi = 0; gi < ng; ++gi) {
        const JobOut& out = jobs[si * ng + gi];
        if (!out.error.empty()) c.status = "error:" + out.error;
        c.distances.insert(c.distances.end(), out.per_law[li].begin(), out.per_law[li].end());
        c.giant_fraction += out.giant / static_cast<double>(ng);
      }
      if (c.status == "ok") {
        if (c.distances.empty()) {
          c.status = "error:no-pairs";
        } else {
          std::vector<double> sorted = c.distances;
          std::sort(sorted.begin(), sorted.end());
          c.median = quantile_sorted(sorted, 0.5);
          c.q1 = quantile_sorted(sorted, 0.25);
          c.q3 = quantile_sorted(sorted, 0.75);
          for (double thr : {c.verdict.thresholds.explosive_below,
                             c.verdict.thresholds.conservative_above})
            if (thr > 0.0 && std::isfinite(thr) && std::abs(c.beta - thr) <= 0.1 * thr)
              c.status = "near-critical";
        }
      }
      cells.push_back(std::move(c));
    }
  }
  return cells;
}

std::string sweep_csv(const std::vector<CellResult>& cells) {
  std::ostringstream os;
  os << "beta,n,median_d,q1,q3,giant_frac,verdict,seed,status\n";
  for (const CellResult& c : cells) {
    os << format_real(c.beta) << ',' << format_real(c.size) << ',' << format_real(c.median) << ','
       << format_real(c.q1) << ',' << format_real(c.q3) << ',' << format_real(c.giant_fraction)
       << ',' << to_string(c.verdict.outcome) << ',' << c.seed << ',' << c.status << '\n';
  }
  return os.str();
}

double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("least_squares_slope: need two or more paired points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("least_squares_slope: x values are all equal");
  return sxy / sxx;
}

double median_slope_per_doubling(const std::vector<double>& sizes,
                                 const std::vector<double>& medians) {
  std::vector<double> x;
  for (double s : sizes) x.push_back(std::log2(s));
  return least_squares_slope(x, medians);
}

std::vector<DecadeBin> degree_weight_profile(const Graph& g, double max_weight) {
  std::map<int, DecadeBin> bins;
  for (std::uint32_t v = 0; v < g.vertex_count(); ++v) {
    const double w = g.weight(v);
    if (w > max_weight) continue;
    const int dec = static_cast<int>(std::floor(std::log10(w)));
    DecadeBin& b = bins[dec];
    b.decade = dec;
    ++b.count;
    b.mean_degree += static_cast<double>(g.degree(v));
    b.mean_weight += w;
  }
  std::vector<DecadeBin> out;
  for (auto& [dec, b] : bins) {
    b.mean_degree /= static_cast<double>(b.count);
    b.mean_weight /= static_cast<double>(b.count);
    b.ratio = b.mean_degree / b.mean_weight;
    b.reliable = b.count >= 30;
    out.push_back(b);
  }
  return out;
}

double ratio_spread(const std::vector<DecadeBin>& bins) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const DecadeBin& b : bins) {
    if (!b.reliable) continue;
    lo = std::min(lo, b.ratio);
    hi = std::max(hi, b.ratio);
  }
  if (hi == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return hi / lo;
}

double tail_exponent_estimate(std::vector<double> values, double top_fraction) {
  if (!(top_fraction > 0.0 && top_fraction < 1.0))
    throw std::invalid_argument("tail_exponent_estimate: top_fraction must lie in (0,1)");
  const auto k = static_cast<std::size_t>(std::floor(top_fraction * static_cast<double>(values.size())));
  if (k < 100 || k >= values.size())
    throw std::invalid_argument("tail_exponent_estimate: fewer than 100 values above the cut");
  std::sort(values.begin(), values.end(), std::greater<>());
  const double threshold = values[k];
  if (!(threshold > 0.0))
    throw std::invalid_argument("tail_exponent_estimate: threshold must be positive");
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += std::log(values[i] / threshold);
  if (!(sum > 0.0)) throw std::invalid_argument("tail_exponent_estimate: no spread above the cut");
  return static_cast<double>(k) / sum;
}

std::vector<GiantPoint> giant_fraction_curve(const ModelSpec& model,
                                             const std::vector<double>& sizes, std::size_t reps,
                                             std::uint64_t seed, unsigned workers) {
  if (sizes.empty() || reps == 0) throw std::invalid_argument("giant_fraction_curve: empty grid");
  std::vector<std::pair<double, double>> frac(sizes.size() * reps);
  parallel_for(frac.size(), workers, [&](std::size_t j) {
    const std::size_t si = j / reps, r = j % reps;
    const Graph g = generate(with_size(model, sizes[si]),
                             derive_seed(seed, "giant", (std::uint64_t{si} << 32) | r));
    frac[j] = component_fractions(g);
  });
  std::vector<GiantPoint> out;
  for (std::size_t si = 0; si < sizes.size(); ++si) {
    GiantPoint p;
    p.size = sizes[si];
    for (std::size_t r = 0; r < reps; ++r) {
      p.mean_largest += frac[si * reps + r].first / static_cast<double>(reps);
      p.mean_second += frac[si * reps + r].second / static_cast<double>(reps);
    }
    out.push_back(p);
  }
  return out;
}

std::vector<AsymmetryPoint> asymmetry_experiment(const ModelSpec& model, const Penalty& f,
                                                 const std::vector<double>& sides, double t,
                                                 std::size_t reps, std::uint64_t seed,
                                                 unsigned workers, std::optional<double> origin_weight) {
  if (!std::holds_alternative<IgirgWindowSpec>(model.variant) || !model.pin_origin)
    throw std::invalid_argument("asymmetry_experiment: needs an origin-pinned windowed IGIRG");
  if (sides.empty() || reps == 0) throw std::invalid_argument("asymmetry_experiment: empty grid");
  if (!(t >= 0.0)) throw std::invalid_argument("asymmetry_experiment: t must be >= 0");
  if (origin_weight && !(*origin_weight > 0.0 && std::isfinite(*origin_weight)))
    throw std::invalid_argument("asymmetry_experiment: origin weight must be positive and finite");
  const double largest = *std::max_element(sides.begin(), sides.end());
  const ModelSpec big = with_size(model, largest);
  validate(big);
  std::vector<AsymmetryPoint> out(sides.size());
  for (std::size_t i = 0; i < sides.size(); ++i) {
    out[i].side = sides[i];
    out[i].outward.assign(reps, 0.0);
    out[i].inward.assign(reps, 0.0);
  }
  parallel_for(reps, workers, [&](std::size_t r) {
    const std::uint64_t rseed = derive_seed(seed, "asymmetry", r);
    VertexSet vs = sample_vertices(big, rseed);
    const std::uint32_t o = *vs.origin_index;
    if (origin_weight) vs.weights[o] = *origin_weight;
    const PairSampler sampler(big, vs, rseed);
    const double w0 = vs.weights[o];
    for (std::uint32_t u = 0; u < vs.size(); ++u) {
      if (u == o || !sampler.present(o, u)) continue;
      const double L = sampler.length(o, u);
      const bool out_ok = directed_edge_cost(f, w0, vs.weights[u], L) <= t;
      const bool in_ok = directed_edge_cost(f, vs.weights[u], w0, L) <= t;
      if (!out_ok && !in_ok) continue;
      double norm = 0.0;
      for (double x : vs.position(u)) norm = std::max(norm, std::abs(x));
      for (std::size_t i = 0; i < sides.size(); ++i) {
        if (norm > sides[i] / 2.0) continue;
        if (out_ok) out[i].outward[r] += 1.0;
        if (in_ok) out[i].inward[r] += 1.0;
      }
    }
  });
  for (auto& p : out) {
    p.mean_outward = std::accumulate(p.outward.begin(), p.outward.end(), 0.0) / static_cast<double>(reps);
    p.mean_inward = std::accumulate(p.inward.begin(), p.inward.end(), 0.0) / static_cast<double>(reps);
  }
  return out;
}

double hrg_kernel_prediction(double argument, double t_h) {
  if (argument == 0.0) return 1.0;
  if (std::isinf(argument)) return 0.0;
  return 1.0 / (1.0 + std::pow(argument, 1.0 / t_h));
}

std::vector<KernelBin> hrg_kernel_validation(std::size_t n, double alpha_h, double c_h, double t_h,
                                             std::size_t reps, std::uint64_t seed,
                                             int bins_per_decade) {
  if (!(t_h > 0.0) || !std::isfinite(t_h))
    throw std::invalid_argument("hrg_kernel_validation: needs a finite temperature");
  if (bins_per_decade < 1) throw std::invalid_argument("hrg_kernel_validation: bins_per_decade >= 1");
  ModelSpec spec;
  spec.variant = HrgSpec{n, alpha_h, c_h, t_h};
  validate(spec);
  struct Acc {
    std::size_t pairs = 0, edges = 0;
    double predicted = 0.0;
  };
  std::map<int, Acc> acc;
  const double scale = std::exp(c_h / 2.0) * static_cast<double>(n) * std::numbers::pi;
  for (std::size_t r = 0; r < reps; ++r) {
    const std::uint64_t rseed = derive_seed(seed, "hrg-kernel", r);
    const VertexSet vs = sample_vertices(spec, rseed);
    const PairSampler sampler(spec, vs, rseed);
    for (std::uint32_t u = 0; u < vs.size(); ++u) {
      for (std::uint32_t v = u + 1; v < vs.size(); ++v) {
        const double dx = pair_distance(vs.position(u), vs.position(v), vs.window);
        const double arg = scale * dx / (vs.weights[u] * vs.weights[v]);
        if (!(arg > 0.0)) continue;
        const int bin = static_cast<int>(std::floor(std::log10(arg) * bins_per_decade));
        Acc& a = acc[bin];
        ++a.pairs;
        if (sampler.present(u, v)) ++a.edges;
        a.predicted += hrg_kernel_prediction(arg, t_h);
      }
    }
  }
  std::vector<KernelBin> out;
  for (const auto& [bin, a] : acc) {
    KernelBin k;
    k.arg_lo = std::pow(10.0, static_cast<double>(bin) / bins_per_decade);
    k.arg_hi = std::pow(10.0, static_cast<double>(bin + 1) / bins_per_decade);
    k.pairs = a.pairs;
    k.edges = a.edges;
    k.empirical = static_cast<double>(a.edges) / static_cast<double>(a.pairs);
    k.predicted = a.predicted / static_cast<double>(a.pairs);
    out.push_back(k);
  }
  return out;
}

}  // namespace pplab

namespace pplab {

BoxingRun boxing_run(const ModelSpec& model, const Penalty& f, std::optional<double> epsilon,
                     double zeta0, std::uint64_t seed, std::optional<double> M) {
  const auto* ig = std::get_if<IgirgWindowSpec>(&model.variant);
  if (!ig) throw std::invalid_argument("boxing_run: needs the windowed IGIRG model");
  if (!f.is_monomial()) throw std::invalid_argument("boxing_run: needs a monomial penalty");
  if ((epsilon && !(*epsilon > 0.0 && *epsilon < 1.0)) || !(zeta0 > 0.0))
    throw std::invalid_argument("boxing_run: need epsilon in (0,1), zeta0 > 0");
  const Monomial term = f.terms().front();
  const double tau = ig->tau;
  const double beta_plus = beta_exponents(model.lengths).second;
  BoxingRun run;
  run.params = solve_boxing_params(tau, term.mu, term.nu, beta_plus);
  const BoxingParams& p = run.params;
  run.epsilon = epsilon ? *epsilon : p.delta;
  const int d = ig->d;
  run.M = M ? *M : static_cast<double>(d) * std::log(ig->side) / (p.D * p.C) * (1.0 - 1e-12);
  if (!(run.M > 0.0)) throw std::invalid_argument("boxing_run: window too small for Box_1");

  ModelSpec spec = model;
  spec.pin_origin = true;
  const Graph g = generate(spec, seed);
  const BoxingSystem b(std::vector<double>(static_cast<std::size_t>(d), 0.0), run.M, p.C, p.D,
                       p.delta, g.vertices().window);
  run.k_star = b.k_star();
  const LeaderScan scan = delta_good_scan(g, b, tau);
  run.good = scan.good_count;
  run.f1 = scan.f1;
  run.f2 = check_F2(g, b, scan, run.epsilon);
  run.all_f1 = std::all_of(run.f1.begin(), run.f1.end(), [](bool x) { return x; });
  for (int k = 0; k <= run.k_star; ++k) run.subboxes.push_back(b.subbox_count(k));

  for (std::size_t i = 0; i < scan.leader[0].size(); ++i) {
    if (!scan.good[0][i]) continue;
    run.greedy_started = true;
    run.greedy = build_greedy_path(g, b, scan, f, scan.leader[0][i]);
    if (run.greedy.complete) break;
  }
  if (!run.greedy.complete) return run;
  const GreedyPath& path = run.greedy.path;
  for (std::size_t h = 0; h < path.hop_costs.size(); ++h) {
    const GreedyHopBound hb = greedy_hop_bound(p, run.M, tau, term.mu, term.nu, path.annuli[h],
                                               run.epsilon, zeta0 + path.annuli[h], model.lengths);
    run.hop_bounds.push_back(hb);
    if (!(path.hop_lengths[h] <= hb.quantile)) continue;
    ++run.hops_checked;
    if (path.hop_costs[h] > term.coeff * hb.term() * (1.0 + 1e-9)) ++run.bound_violations;
  }
  return run;
}

}  // namespace pplab
