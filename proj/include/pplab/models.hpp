#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pplab/geometry.hpp"
#include "pplab/graph.hpp"
#include "pplab/randomness.hpp"

namespace pplab {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Finite GIRG on the unit cube, n vertices.
struct GirgSpec {
  std::size_t n = 1000;
  int d = 1;
  double tau = 2.5;
  double alpha = 2.0;  // kInfinity selects the threshold kernel
  double c = 1.0;
  double c1_threshold = 1.0;
};

// IGIRG restricted to a window; Poisson(lambda side^d) vertices.
struct IgirgWindowSpec {
  double lambda = 1.0;
  int d = 1;
  double side = 100.0;
  double tau = 2.5;
  double alpha = 2.0;
  double c = 1.0;
  double c1_threshold = 1.0;
};

// Scale-free percolation on the grid [-radius, radius]^d.
struct SfpWindowSpec {
  int d = 1;
  int radius = 10;
  double tau = 2.5;
  double lambda_perc = 1.0;
  double alpha_norm = 2.0;
};

// Hyperbolic random graph on a disk of radius 2 ln n + c_h.
struct HrgSpec {
  std::size_t n = 1000;
  double alpha_h = 0.75;
  double c_h = 0.0;
  std::optional<double> t_h = 0.5;  // empty selects the threshold kernel
};

using ModelVariant = std::variant<GirgSpec, IgirgWindowSpec, SfpWindowSpec, HrgSpec>;

struct ModelSpec {
  ModelVariant variant = GirgSpec{};
  EdgeLengthLaw lengths = PolyAtZero{1.0};
  Boundary boundary = Boundary::hard;
  bool pin_origin = false;  // windowed IGIRG only
  std::optional<double> weight_cap;
  std::size_t max_vertices = 100'000;
};

std::string model_name(const ModelSpec& spec);
void validate(const ModelSpec& spec);
double tau_of(const ModelSpec& spec);
// Replaces the size parameter: n, side or radius depending on the model.
ModelSpec with_size(const ModelSpec& spec, double size);
double size_of(const ModelSpec& spec);

// Edge probability for vertices at positions x, y with weights wu, wv.
double connect_prob(const ModelSpec& spec, std::span<const double> x, std::span<const double> y,
                    double wu, double wv);

double hrg_disk_radius(const HrgSpec& spec);
struct HrgPoint {
  double phi;
  double r;
};
// (phi, r) to GIRG coordinates (x in [-1/2, 1/2), weight).
std::pair<double, double> hrg_to_girg_coords(double phi, double r, double R);
HrgPoint girg_to_hrg_coords(double x, double w, double R);
double hyperbolic_distance(HrgPoint a, HrgPoint b);

// Draws positions and weights only.
VertexSet sample_vertices(const ModelSpec& spec, std::uint64_t seed);

// Decides presence of individual pairs; the decision for (u, v) depends only on
// the seed, the pair and the two vertices, so any subset can be queried alone.
class PairSampler {
 public:
  PairSampler(const ModelSpec& spec, const VertexSet& vertices, std::uint64_t seed);
  double probability(std::uint32_t u, std::uint32_t v) const;
  bool present(std::uint32_t u, std::uint32_t v) const;
  double length(std::uint32_t u, std::uint32_t v) const;

 private:
  const ModelSpec* spec_;
  const VertexSet* vertices_;
  std::function<double(double, double, double)> kernel_;
  Stream edges_;
  Stream lengths_;
};

struct GenerateOptions {
  unsigned workers = 1;
};

// Topology only; every edge length is set from the spec's law.
Graph generate(const ModelSpec& spec, std::uint64_t seed, GenerateOptions options = {});
// Lengths drawn from the "lengths" stream for the given law; same seed and topology
// give coupled lengths across laws.
std::vector<double> assign_lengths(const Graph& g, const EdgeLengthLaw& law, std::uint64_t seed);

// Edges incident to vertex v, found by querying only the pairs (v, u).
std::vector<std::uint32_t> incident_pairs(const ModelSpec& spec, const VertexSet& vertices,
                                          std::uint32_t v, std::uint64_t seed);

}  // namespace pplab
