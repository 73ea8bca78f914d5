// pplab: generate graphs, compute penalised distances, classify and sweep.
#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pplab/config.hpp"
#include "pplab/cost.hpp"
#include "pplab/experiments.hpp"
#include "pplab/format.hpp"
#include "pplab/graph_io.hpp"
#include "pplab/metrics.hpp"
#include "pplab/models.hpp"

namespace {

using namespace pplab;

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

struct ConfigInput {
  std::string path;
  std::vector<std::string> overrides;
  std::optional<std::uint64_t> seed;
};

void add_config_options(CLI::App* cmd, ConfigInput& in) {
  cmd->add_option("--config", in.path, "key=value run configuration file");
  cmd->add_option("--set", in.overrides, "override one key, as key=value")->take_all();
  cmd->add_option("--seed", in.seed, "master seed (overrides the config)");
}

RunConfig load_config(const ConfigInput& in) {
  RunConfig cfg;
  if (!in.path.empty()) {
    std::ifstream is(in.path);
    if (!is) throw ConfigError("cannot read config '" + in.path + "'");
    std::ostringstream text;
    text << is.rdbuf();
    cfg = RunConfig::parse(text.str());
  }
  for (const std::string& kv : in.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (in.seed) cfg.set("seed", std::to_string(*in.seed));
  return cfg;
}

Direction parse_direction(const std::string& s) {
  if (s == "outward") return Direction::outward;
  if (s == "inward") return Direction::inward;
  throw ConfigError("direction must be 'outward' or 'inward'");
}

int cmd_generate(const ConfigInput& in, const std::string& out) {
  const RunConfig cfg = load_config(in);
  const ModelSpec spec = model_spec_from_config(cfg);
  const unsigned workers = static_cast<unsigned>(std::max(1LL, cfg.integer("workers", 1)));
  const Graph g = generate(spec, seed_from_config(cfg), {workers});
  if (out.empty() || out == "-") write_graph(g, std::cout);
  else save_graph(g, out);
  std::ostream& log = out.empty() || out == "-" ? std::cerr : std::cout;
  log << "n=" << g.vertex_count() << " edges=" << g.edge_count()
      << " giant_frac=" << format_real(component_fractions(g).first) << '\n';
  return 0;
}

int cmd_distance(const std::string& graph_path, const std::string& penalty, long long source,
                 long long target, const std::string& direction) {
  const Penalty f = parse_penalty(penalty);
  const Direction dir = parse_direction(direction);
  const Graph g = load_graph(graph_path);
  const auto n = static_cast<long long>(g.vertex_count());
  if (source < 0 || source >= n || target < 0 || target >= n)
    throw ConfigError("vertex id out of range (graph has " + std::to_string(n) + " vertices)");
  const ShortestPath sp = shortest_path(g, f, static_cast<std::uint32_t>(source),
                                        static_cast<std::uint32_t>(target), dir);
  std::cout << "distance=" << format_real(sp.distance) << "\npath=";
  for (std::size_t i = 0; i < sp.path.size(); ++i) std::cout << (i ? " " : "") << sp.path[i];
  std::cout << '\n';
  return 0;
}

int cmd_classify(double tau, double alpha, const std::string& penalty, const std::string& law,
                 const std::string& direction) {
  const Penalty f = parse_penalty(penalty);
  const EdgeLengthLaw L = parse_law(law);
  const auto [bm, bp] = beta_exponents(L);
  std::cout << format_verdict(classify(f, tau, alpha, bm, bp, parse_direction(direction))) << '\n';
  return 0;
}

int cmd_sweep(const ConfigInput& in, const std::string& out) {
  const RunConfig cfg = load_config(in);
  const SweepSpec spec = sweep_spec_from_config(cfg);
  const std::string csv = sweep_csv(phase_sweep(spec));
  if (out.empty() || out == "-") {
    std::cout << csv;
  } else {
    std::ofstream os(out, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + out + "' for writing");
    os << csv;
  }
  return 0;
}

int cmd_params(double tau, double mu, double nu, double beta_plus) {
  const BoxingParams p = solve_boxing_params(tau, mu, nu, beta_plus);
  const ParamCheck chk = check_boxing_params(p, tau, mu, nu, beta_plus);
  std::cout << "delta=" << format_real(p.delta) << " C=" << format_real(p.C)
            << " D=" << format_real(p.D) << " xi=" << format_real(p.xi)
            << " rho=" << format_real(p.rho) << " check=" << (chk.ok() ? "ok" : chk.violated)
            << '\n';
  return chk.ok() ? 0 : kRuntimeError;
}

int cmd_hrgmap(double phi, double r, std::optional<double> radius, std::optional<long long> n,
               double c_h) {
  double R = 0.0;
  if (radius) {
    R = *radius;
  } else if (n) {
    if (*n < 1) throw ConfigError("--n must be >= 1");
    R = hrg_disk_radius(HrgSpec{static_cast<std::size_t>(*n), 0.75, c_h, 0.5});
  } else {
    throw ConfigError("hrgmap needs --radius or --n");
  }
  if (!(r >= 0.0 && r <= R)) throw ConfigError("hrgmap: r must lie in [0, R]");
  const auto [x, w] = hrg_to_girg_coords(phi, r, R);
  std::cout << "x=" << format_real(x) << " w=" << format_real(w) << '\n';
  return 0;
}

int cmd_boxes(const ConfigInput& in, const std::string& penalty, std::optional<double> epsilon, double zeta,
              std::optional<double> M) {
  const RunConfig cfg = load_config(in);
  const ModelSpec spec = model_spec_from_config(cfg);
  const Penalty f = parse_penalty(penalty);
  const BoxingRun run = boxing_run(spec, f, epsilon, zeta, seed_from_config(cfg), M);
  const BoxingParams& p = run.params;
  std::cout << "delta=" << format_real(p.delta) << " C=" << format_real(p.C)
            << " D=" << format_real(p.D) << " M=" << format_real(run.M)
            << " epsilon=" << format_real(run.epsilon)
            << " k_star=" << run.k_star << '\n';
  for (int k = 0; k <= run.k_star; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    std::cout << "annulus " << k << " subboxes=" << run.subboxes[ku] << " good=" << run.good[ku]
              << " F1=" << (run.f1[ku] ? 1 : 0) << " F2=" << (run.f2[ku] ? 1 : 0) << '\n';
  }
  if (!run.greedy_started) {
    std::cout << "greedy: no delta-good leader in annulus 0\n";
  } else if (!run.greedy.complete) {
    std::cout << "greedy: failed at annulus " << run.greedy.failed_annulus << '\n';
  } else {
    double bound = 0.0;
    for (const GreedyHopBound& hb : run.hop_bounds) bound += f.terms().front().coeff * hb.term();
    std::cout << "greedy: complete cost=" << format_real(run.greedy.path.total_cost)
              << " bound=" << format_real(bound) << " hops_checked=" << run.hops_checked
              << " violations=" << run.bound_violations << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Penalised first-passage percolation on spatial random graphs"};
  app.require_subcommand(1);

  ConfigInput gen_in;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "sample a graph and write it in the text format");
  add_config_options(gen, gen_in);
  gen->add_option("--out", gen_out, "output path ('-' for stdout)");

  std::string graph_path, penalty = "prod:1", direction = "outward";
  long long source = 0, target = 0;
  std::optional<std::uint64_t> unused_seed;
  auto* dist = app.add_subcommand("distance", "penalised distance between two vertices");
  dist->add_option("--graph", graph_path, "graph file")->required();
  dist->add_option("--penalty", penalty, "penalty spec");
  dist->add_option("--source", source)->required();
  dist->add_option("--target", target)->required();
  dist->add_option("--direction", direction, "outward or inward");
  dist->add_option("--seed", unused_seed, "accepted for uniformity; the command is deterministic");

  double tau = 2.5, alpha = 2.0;
  std::string law = "poly:1";
  auto* cls = app.add_subcommand("classify", "analytic phase verdict");
  cls->add_option("--tau", tau)->required();
  cls->add_option("--alpha", alpha);
  cls->add_option("--penalty", penalty);
  cls->add_option("--law", law);
  cls->add_option("--direction", direction);
  cls->add_option("--seed", unused_seed);

  ConfigInput sweep_in;
  std::string sweep_out;
  auto* sweep = app.add_subcommand("sweep", "two-point distance sweep, CSV output");
  add_config_options(sweep, sweep_in);
  sweep->add_option("--out", sweep_out, "CSV path ('-' for stdout)");

  double mu = 1.0, nu = 1.0, beta_plus = 0.1;
  auto* params = app.add_subcommand("params", "solve the boxing parameters (delta, C, D)");
  params->add_option("--tau", tau)->required();
  params->add_option("--mu", mu);
  params->add_option("--nu", nu);
  params->add_option("--beta", beta_plus, "beta+ of the length law");
  params->add_option("--seed", unused_seed);

  double phi = 0.0, r = 0.0, c_h = 0.0;
  std::optional<double> radius;
  std::optional<long long> hn;
  auto* hrg = app.add_subcommand("hrgmap", "map hyperbolic polar coordinates to (x, w)");
  hrg->add_option("--phi", phi)->required();
  hrg->add_option("--r", r)->required();
  hrg->add_option("--radius", radius, "disk radius R");
  hrg->add_option("--n", hn, "vertex count; R = 2 ln n + C_H");
  hrg->add_option("--c-h", c_h);
  hrg->add_option("--seed", unused_seed);

  ConfigInput box_in;
  std::string box_penalty = "prod:1";
  std::optional<double> epsilon;
  double zeta = 1.0;
  std::optional<double> box_M;
  auto* boxes = app.add_subcommand("boxes", "boxing events and the greedy path on a windowed IGIRG");
  add_config_options(boxes, box_in);
  boxes->add_option("--penalty", box_penalty, "monomial penalty spec");
  boxes->add_option("--epsilon", epsilon, "F2 exponent slack (default: delta)");
  boxes->add_option("--zeta", zeta, "hop k uses zeta + k");
  boxes->add_option("--M", box_M, "boxing scale (default: largest with Box_1 in the window)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*gen) return cmd_generate(gen_in, gen_out);
    if (*dist) return cmd_distance(graph_path, penalty, source, target, direction);
    if (*cls) return cmd_classify(tau, alpha, penalty, law, direction);
    if (*sweep) return cmd_sweep(sweep_in, sweep_out);
    if (*params) return cmd_params(tau, mu, nu, beta_plus);
    if (*hrg) return cmd_hrgmap(phi, r, radius, hn, c_h);
    if (*boxes) return cmd_boxes(box_in, box_penalty, epsilon, zeta, box_M);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::domain_error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
