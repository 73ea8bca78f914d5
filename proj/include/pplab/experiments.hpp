#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pplab/cost.hpp"
#include "pplab/graph.hpp"
#include "pplab/metrics.hpp"
#include "pplab/models.hpp"

namespace pplab {

// Runs job(i) for i in [0, count) on `workers` threads pulling from a shared counter.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& job);

// Uniform pairs of distinct vertices of the largest component, by rejection.
std::vector<std::pair<std::uint32_t, std::uint32_t>> sample_giant_pairs(const Graph& g,
                                                                        std::size_t pairs,
                                                                        std::uint64_t seed);
std::vector<double> two_point_distance(const Graph& g, const Penalty& f, std::size_t pairs,
                                       std::uint64_t seed);

struct SweepSpec {
  ModelSpec model;
  Penalty penalty = Penalty::product(1.0);
  std::vector<EdgeLengthLaw> laws;
  std::vector<double> sizes;  // n, window side or radius, depending on the model
  std::size_t pairs_per_graph = 30;
  std::size_t graphs_per_cell = 5;
  std::uint64_t seed = 1;
  unsigned workers = 1;
};

struct CellResult {
  double beta = 0.0;
  double size = 0.0;
  std::string law;
  std::vector<double> distances;
  double median = std::numeric_limits<double>::quiet_NaN();
  double q1 = std::numeric_limits<double>::quiet_NaN();
  double q3 = std::numeric_limits<double>::quiet_NaN();
  double giant_fraction = 0.0;
  PhaseVerdict verdict;
  std::string status = "ok";  // "ok", "near-critical" or "error:<reason>"
  std::uint64_t seed = 0;
};

// Analytic verdict of a cell; deg(f) = 0 falls back to the FPP functional.
PhaseVerdict cell_verdict(const ModelSpec& model, const Penalty& f, const EdgeLengthLaw& law);
double model_alpha(const ModelSpec& model);

// Rows ordered by (law, size) as listed in the spec.
std::vector<CellResult> phase_sweep(const SweepSpec& spec);
std::string sweep_csv(const std::vector<CellResult>& cells);
double quantile_sorted(const std::vector<double>& sorted, double q);
double least_squares_slope(const std::vector<double>& x, const std::vector<double>& y);
// Slope of the median against log2(size).
double median_slope_per_doubling(const std::vector<double>& sizes,
                                 const std::vector<double>& medians);

struct DecadeBin {
  int decade = 0;  // weights in [10^decade, 10^(decade+1))
  std::size_t count = 0;
  double mean_degree = 0.0;
  double mean_weight = 0.0;
  double ratio = 0.0;
  bool reliable = false;  // at least 30 vertices
};

std::vector<DecadeBin> degree_weight_profile(
    const Graph& g, double max_weight = std::numeric_limits<double>::infinity());
// max/min of the ratio over reliable decades.
double ratio_spread(const std::vector<DecadeBin>& bins);

// Hill estimate of the Pareto index from the top fraction of the values.
double tail_exponent_estimate(std::vector<double> values, double top_fraction);

struct GiantPoint {
  double size = 0.0;
  double mean_largest = 0.0;
  double mean_second = 0.0;
};

std::vector<GiantPoint> giant_fraction_curve(const ModelSpec& model,
                                             const std::vector<double>& sizes, std::size_t reps,
                                             std::uint64_t seed, unsigned workers = 1);

struct AsymmetryPoint {
  double side = 0.0;
  double mean_outward = 0.0;
  double mean_inward = 0.0;
  std::vector<double> outward;  // per repetition
  std::vector<double> inward;
};

// Origin-pinned windowed IGIRG; one realization per repetition on the largest side,
// restricted to the nested smaller windows. Only the origin's pairs are sampled.
// origin_weight, when set, replaces the sampled weight of the origin.
std::vector<AsymmetryPoint> asymmetry_experiment(const ModelSpec& model, const Penalty& f,
                                                 const std::vector<double>& sides, double t,
                                                 std::size_t reps, std::uint64_t seed,
                                                 unsigned workers = 1,
                                                 std::optional<double> origin_weight = std::nullopt);

struct BoxingRun {
  BoxingParams params;
  double M = 0.0;
  double epsilon = 0.0;
  int k_star = -1;
  std::vector<std::size_t> subboxes;
  std::vector<std::size_t> good;
  std::vector<bool> f1;
  std::vector<bool> f2;
  bool all_f1 = false;
  bool greedy_started = false;
  GreedyOutcome greedy;
  std::vector<GreedyHopBound> hop_bounds;  // per hop of the greedy path
  std::size_t hops_checked = 0;            // hops with L below their quantile
  std::size_t bound_violations = 0;
};

// Windowed IGIRG centred at the origin, monomial penalty. Without an explicit M,
// M is the largest value for which Box_1 still fits in the window. epsilon defaults
// to delta; hop k uses zeta_k = zeta0 + k.
BoxingRun boxing_run(const ModelSpec& model, const Penalty& f, std::optional<double> epsilon, double zeta0,
                     std::uint64_t seed, std::optional<double> M = std::nullopt);

double hrg_kernel_prediction(double argument, double t_h);

struct KernelBin {
  double arg_lo = 0.0;
  double arg_hi = 0.0;
  std::size_t pairs = 0;
  std::size_t edges = 0;
  double empirical = 0.0;
  double predicted = 0.0;  // mean of the limit kernel over the pairs in the bin
};

std::vector<KernelBin> hrg_kernel_validation(std::size_t n, double alpha_h, double c_h, double t_h,
                                             std::size_t reps, std::uint64_t seed,
                                             int bins_per_decade = 4);

}  // namespace pplab
