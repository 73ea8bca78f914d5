#include "pplab/models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace pplab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// x^a for the kernels; small integer exponents avoid pow.
struct Power {
  double a;
  int small_int;

  explicit Power(double exponent) : a(exponent), small_int(-1) {
    if (std::isfinite(a) && a >= 1.0 && a <= 8.0 && a == std::floor(a))
      small_int = static_cast<int>(a);
  }
  double operator()(double x) const {
    if (small_int < 0) return std::pow(x, a);
    double r = x;
    for (int i = 1; i < small_int; ++i) r *= x;
    return r;
  }
};

double dist_pow_d(double r2, int d) {
  switch (d) {
    case 1: return std::sqrt(r2);
    case 2: return r2;
    case 4: return r2 * r2;
    default: return std::pow(r2, 0.5 * d);
  }
}

// min(1, c (w_u w_v / (scale |x|^d))^alpha), or the threshold indicator.
struct GirgKernel {
  int d;
  double scale;
  double c;
  double c1;
  Power alpha;
  bool threshold;

  double operator()(double r2, double wu, double wv) const {
    const double rd = dist_pow_d(r2, d) * scale;
    if (threshold) return c1 * wu * wv >= rd ? 1.0 : 0.0;
    if (rd == 0.0) return c > 0.0 ? 1.0 : 0.0;
    const double p = c * alpha(wu * wv / rd);
    return p < 1.0 ? p : 1.0;
  }
};

struct SfpKernel {
  int d;
  double lambda;
  Power alpha;
  bool threshold;

  double operator()(double r2, double wu, double wv) const {
    if (r2 <= 1.0) return 1.0;  // nearest neighbours on the grid
    const double q = wu * wv / dist_pow_d(r2, d);
    if (threshold) return q >= 1.0 ? 1.0 : 0.0;
    return -std::expm1(-lambda * alpha(q));
  }
};

struct HrgKernel {
  double R;
  std::optional<double> temperature;

  double operator()(double r2, double wu, double wv) const {
    // r2 is the squared angular offset in [0, 1/4] after the torus wrap.
    const double dphi = 2.0 * std::numbers::pi * std::sqrt(r2);
    const double ru = R - 2.0 * std::log(wu);
    const double rv = R - 2.0 * std::log(wv);
    const double s = std::sin(dphi / 2.0);
    const double ch = std::cosh(ru - rv) + 2.0 * std::sinh(ru) * std::sinh(rv) * s * s;
    const double dist = std::acosh(std::max(1.0, ch));
    if (!temperature) return dist <= R ? 1.0 : 0.0;
    return 1.0 / (1.0 + std::exp((dist - R) / (2.0 * *temperature)));
  }
};

using Kernel = std::variant<GirgKernel, SfpKernel, HrgKernel>;

Kernel make_kernel(const ModelSpec& spec) {
  return std::visit(
      Overloaded{
          [](const GirgSpec& s) -> Kernel {
            return GirgKernel{s.d, static_cast<double>(s.n), s.c, s.c1_threshold, Power(s.alpha),
                              std::isinf(s.alpha)};
          },
          [](const IgirgWindowSpec& s) -> Kernel {
            return GirgKernel{s.d, 1.0, s.c, s.c1_threshold, Power(s.alpha), std::isinf(s.alpha)};
          },
          [](const SfpWindowSpec& s) -> Kernel {
            return SfpKernel{s.d, s.lambda_perc, Power(s.alpha_norm), std::isinf(s.alpha_norm)};
          },
          [](const HrgSpec& s) -> Kernel { return HrgKernel{hrg_disk_radius(s), s.t_h}; },
      },
      spec.variant);
}

Window window_of(const ModelSpec& spec) {
  return std::visit(
      Overloaded{
          [&](const GirgSpec& s) { return Window{s.d, 1.0, spec.boundary}; },
          [&](const IgirgWindowSpec& s) { return Window{s.d, s.side, spec.boundary}; },
          [&](const SfpWindowSpec& s) {
            return Window{s.d, 2.0 * s.radius + 1.0, spec.boundary};
          },
          [](const HrgSpec&) { return Window{1, 1.0, Boundary::torus}; },
      },
      spec.variant);
}

void require(bool ok, const char* message) {
  if (!ok) throw std::invalid_argument(message);
}

}  // namespace

std::string model_name(const ModelSpec& spec) {
  static constexpr const char* names[] = {"girg", "igirg", "sfp", "hrg"};
  return names[spec.variant.index()];
}

double tau_of(const ModelSpec& spec) {
  return std::visit(Overloaded{
                        [](const HrgSpec& s) { return 2.0 * s.alpha_h + 1.0; },
                        [](const auto& s) { return s.tau; },
                    },
                    spec.variant);
}

void validate(const ModelSpec& spec) {
  validate(spec.lengths);
  const double cap = static_cast<double>(spec.max_vertices);
  require(spec.max_vertices >= 1 && spec.max_vertices < kNoVertex, "max_vertices out of range");
  if (spec.weight_cap) validate(WeightLaw{tau_of(spec), spec.weight_cap});
  require(!spec.pin_origin || std::holds_alternative<IgirgWindowSpec>(spec.variant),
          "pin_origin applies to the windowed IGIRG only");
  std::visit(
      Overloaded{
          [&](const GirgSpec& s) {
            require(s.d >= 1 && s.d <= 8, "girg: d must be in [1, 8]");
            require(s.n >= 1, "girg: n must be >= 1");
            require(static_cast<double>(s.n) <= cap, "girg: n exceeds the vertex cap");
            require(s.tau > 1.0 && std::isfinite(s.tau), "girg: tau must be > 1");
            require(s.alpha > 1.0, "girg: alpha must be > 1 or inf");
            require(s.c >= 0.0 && std::isfinite(s.c), "girg: c must be >= 0");
            require(s.c1_threshold > 0.0, "girg: c1 must be > 0");
          },
          [&](const IgirgWindowSpec& s) {
            require(s.d >= 1 && s.d <= 8, "igirg: d must be in [1, 8]");
            require(s.lambda > 0.0 && s.side > 0.0, "igirg: lambda and side must be > 0");
            require(s.lambda * std::pow(s.side, s.d) <= cap,
                    "igirg: expected vertex count exceeds the vertex cap");
            require(s.tau > 1.0 && std::isfinite(s.tau), "igirg: tau must be > 1");
            require(s.alpha > 0.0, "igirg: alpha must be in (0, inf]");
            require(s.c >= 0.0 && std::isfinite(s.c), "igirg: c must be >= 0");
            require(s.c1_threshold > 0.0, "igirg: c1 must be > 0");
          },
          [&](const SfpWindowSpec& s) {
            require(s.d >= 1 && s.d <= 8, "sfp: d must be in [1, 8]");
            require(s.radius >= 0, "sfp: radius must be >= 0");
            require(std::pow(2.0 * s.radius + 1.0, s.d) <= cap, "sfp: grid exceeds the vertex cap");
            require(s.tau > 1.0 && std::isfinite(s.tau), "sfp: tau must be > 1");
            require(s.lambda_perc >= 0.0, "sfp: lambda must be >= 0");
            require(s.alpha_norm > 0.0, "sfp: alpha must be in (0, inf]");
          },
          [&](const HrgSpec& s) {
            require(s.n >= 1, "hrg: n must be >= 1");
            require(static_cast<double>(s.n) <= cap, "hrg: n exceeds the vertex cap");
            require(s.alpha_h > 0.5 && s.alpha_h < 1.0, "hrg: alpha_H must lie in (1/2, 1)");
            require(std::isfinite(s.c_h), "hrg: C_H must be finite");
            require(!s.t_h || (*s.t_h > 0.0 && std::isfinite(*s.t_h)), "hrg: T_H must be > 0");
            require(hrg_disk_radius(s) > 0.0, "hrg: disk radius must be > 0");
          },
      },
      spec.variant);
}

ModelSpec with_size(const ModelSpec& spec, double size) {
  ModelSpec out = spec;
  std::visit(Overloaded{
                 [size](GirgSpec& s) { s.n = static_cast<std::size_t>(std::llround(size)); },
                 [size](IgirgWindowSpec& s) { s.side = size; },
                 [size](SfpWindowSpec& s) { s.radius = static_cast<int>(std::lround(size)); },
                 [size](HrgSpec& s) { s.n = static_cast<std::size_t>(std::llround(size)); },
             },
             out.variant);
  return out;
}

double size_of(const ModelSpec& spec) {
  return std::visit(Overloaded{
                        [](const GirgSpec& s) { return static_cast<double>(s.n); },
                        [](const IgirgWindowSpec& s) { return s.side; },
                        [](const SfpWindowSpec& s) { return static_cast<double>(s.radius); },
                        [](const HrgSpec& s) { return static_cast<double>(s.n); },
                    },
                    spec.variant);
}

double connect_prob(const ModelSpec& spec, std::span<const double> x, std::span<const double> y,
                    double wu, double wv) {
  const Window w = window_of(spec);
  const double r2 = pair_distance_squared(x, y, w);
  return std::visit([&](const auto& k) { return k(r2, wu, wv); }, make_kernel(spec));
}

double hrg_disk_radius(const HrgSpec& spec) {
  return 2.0 * std::log(static_cast<double>(spec.n)) + spec.c_h;
}

std::pair<double, double> hrg_to_girg_coords(double phi, double r, double R) {
  return {(phi - std::numbers::pi) / (2.0 * std::numbers::pi), std::exp((R - r) / 2.0)};
}

HrgPoint girg_to_hrg_coords(double x, double w, double R) {
  return {2.0 * std::numbers::pi * x + std::numbers::pi, R - 2.0 * std::log(w)};
}

double hyperbolic_distance(HrgPoint a, HrgPoint b) {
  if (a.r < 0.0 || b.r < 0.0) throw std::invalid_argument("hyperbolic_distance: radii must be >= 0");
  // cosh(r_u - r_v) + sinh r_u sinh r_v (1 - cos dphi), the same expression without cancellation.
  const double s = std::sin((a.phi - b.phi) / 2.0);
  const double ch = std::cosh(a.r - b.r) + 2.0 * std::sinh(a.r) * std::sinh(b.r) * s * s;
  return std::acosh(std::max(1.0, ch));
}

VertexSet sample_vertices(const ModelSpec& spec, std::uint64_t seed) {
  validate(spec);
  VertexSet vs;
  vs.window = window_of(spec);
  const int d = vs.window.d;
  const Stream weights(seed, "weights");
  const Stream positions(seed, "positions");
  const WeightLaw wlaw{tau_of(spec), spec.weight_cap};

  auto uniform_points = [&](std::size_t count, std::size_t first, double side) {
    for (std::size_t i = first; i < first + count; ++i) {
      for (int k = 0; k < d; ++k)
        vs.coords.push_back((positions.uniform(i * static_cast<std::size_t>(d) +
                                               static_cast<std::size_t>(k)) -
                             0.5) *
                            side);
      vs.weights.push_back(weight_from_uniform(weights.uniform(i), wlaw));
    }
  };

  std::visit(
      Overloaded{
          [&](const GirgSpec& s) { uniform_points(s.n, 0, 1.0); },
          [&](const IgirgWindowSpec& s) {
            const double mean = s.lambda * std::pow(s.side, d);
            const auto count = sample_poisson(SeedSpec{seed, "count", 0}, mean);
            if (count + (spec.pin_origin ? 1 : 0) > spec.max_vertices)
              throw std::invalid_argument("igirg: sampled vertex count exceeds the vertex cap");
            std::size_t first = 0;
            if (spec.pin_origin) {
              vs.coords.insert(vs.coords.end(), static_cast<std::size_t>(d), 0.0);
              vs.weights.push_back(weight_from_uniform(weights.uniform(0), wlaw));
              vs.origin_index = 0;
              first = 1;
            }
            uniform_points(count, first, s.side);
          },
          [&](const SfpWindowSpec& s) {
            const auto per_dim = static_cast<std::size_t>(2 * s.radius + 1);
            std::size_t total = 1;
            for (int k = 0; k < d; ++k) total *= per_dim;
            for (std::size_t i = 0; i < total; ++i) {
              std::size_t rest = i;
              std::vector<double> p(static_cast<std::size_t>(d));
              for (int k = d - 1; k >= 0; --k) {
                p[static_cast<std::size_t>(k)] =
                    static_cast<double>(rest % per_dim) - static_cast<double>(s.radius);
                rest /= per_dim;
              }
              vs.coords.insert(vs.coords.end(), p.begin(), p.end());
              vs.weights.push_back(weight_from_uniform(weights.uniform(i), wlaw));
            }
          },
          [&](const HrgSpec& s) {
            const double R = hrg_disk_radius(s);
            const double a = s.alpha_h;
            const double span = std::cosh(a * R) - 1.0;
            for (std::size_t i = 0; i < s.n; ++i) {
              const double phi = 2.0 * std::numbers::pi * (1.0 - positions.uniform(2 * i));
              const double r = std::acosh(1.0 + weights.uniform(i) * span) / a;
              auto [x, w] = hrg_to_girg_coords(phi, std::min(r, R), R);
              vs.coords.push_back(std::min(x, 0.5));
              vs.weights.push_back(std::max(w, 1.0));
            }
          },
      },
      spec.variant);
  vs.validate();
  return vs;
}

PairSampler::PairSampler(const ModelSpec& spec, const VertexSet& vertices, std::uint64_t seed)
    : spec_(&spec),
      vertices_(&vertices),
      kernel_(std::visit(
          [](const auto& k) -> std::function<double(double, double, double)> { return k; },
          make_kernel(spec))),
      edges_(seed, "edges"),
      lengths_(seed, "lengths") {}

double PairSampler::probability(std::uint32_t u, std::uint32_t v) const {
  const double r2 =
      pair_distance_squared(vertices_->position(u), vertices_->position(v), vertices_->window);
  return kernel_(r2, vertices_->weights[u], vertices_->weights[v]);
}

bool PairSampler::present(std::uint32_t u, std::uint32_t v) const {
  if (u == v) return false;
  const double p = probability(u, v);
  if (p >= 1.0) return true;
  if (p <= 0.0) return false;
  return edges_.uniform(pair_counter(std::min(u, v), std::max(u, v))) <= p;
}

double PairSampler::length(std::uint32_t u, std::uint32_t v) const {
  return edge_length_quantile(spec_->lengths,
                              lengths_.uniform_open(pair_counter(std::min(u, v), std::max(u, v))));
}

namespace {

template <class K>
void scan_rows(const K& kernel, const VertexSet& vs, const Stream& edges, std::size_t worker,
               std::size_t workers, std::vector<Edge>& out) {
  const std::size_t n = vs.size();
  const auto d = static_cast<std::size_t>(vs.d());
  const double* X = vs.coords.data();
  const double* W = vs.weights.data();
  const bool torus = vs.window.boundary == Boundary::torus;
  const double side = vs.window.side;
  for (std::size_t u = worker; u < n; u += workers) {
    const double* xu = X + u * d;
    const double wu = W[u];
    for (std::size_t v = u + 1; v < n; ++v) {
      const double* xv = X + v * d;
      double r2 = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        double diff = std::abs(xu[k] - xv[k]);
        if (torus) diff = std::min(diff, side - diff);
        r2 += diff * diff;
      }
      const double p = kernel(r2, wu, W[v]);
      if (p <= 0.0) continue;
      const auto uu = static_cast<std::uint32_t>(u), vv = static_cast<std::uint32_t>(v);
      if (p >= 1.0 || edges.uniform(pair_counter(uu, vv)) <= p) out.push_back({uu, vv, 0.0});
    }
  }
}

}  // namespace

Graph generate(const ModelSpec& spec, std::uint64_t seed, GenerateOptions options) {
  VertexSet vs = sample_vertices(spec, seed);
  const Stream edges(seed, "edges");
  const Kernel kernel = make_kernel(spec);
  const std::size_t workers = std::max(1u, options.workers);
  std::vector<std::vector<Edge>> parts(workers);
  auto run = [&](std::size_t w) {
    std::visit([&](const auto& k) { scan_rows(k, vs, edges, w, workers, parts[w]); }, kernel);
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) threads.emplace_back(run, w);
    for (auto& t : threads) t.join();
  }
  std::vector<Edge> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  const Stream lengths(seed, "lengths");
  for (Edge& e : all)
    e.length = edge_length_quantile(spec.lengths, lengths.uniform_open(pair_counter(e.u, e.v)));
  return Graph(std::move(vs), std::move(all), model_name(spec));
}

std::vector<double> assign_lengths(const Graph& g, const EdgeLengthLaw& law, std::uint64_t seed) {
  validate(law);
  const Stream lengths(seed, "lengths");
  std::vector<double> out;
  out.reserve(g.edge_count());
  for (const Edge& e : g.edges())
    out.push_back(edge_length_quantile(law, lengths.uniform_open(pair_counter(e.u, e.v))));
  return out;
}

std::vector<std::uint32_t> incident_pairs(const ModelSpec& spec, const VertexSet& vertices,
                                          std::uint32_t v, std::uint64_t seed) {
  const PairSampler sampler(spec, vertices, seed);
  std::vector<std::uint32_t> out;
  for (std::uint32_t u = 0; u < vertices.size(); ++u)
    if (u != v && sampler.present(v, u)) out.push_back(u);
  return out;
}

}  // namespace pplab
