#include "pplab/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "pplab/format.hpp"

namespace pplab {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double real_token(const std::string& s, const std::string& context) {
  try {
    return parse_real(s);
  } catch (const std::invalid_argument&) {
    throw ConfigError(context + ": '" + s + "' is not a number");
  }
}

std::vector<double> reals(std::string_view body, std::size_t expected, const std::string& context) {
  std::vector<double> out;
  for (const auto& tok : split(body, ',')) out.push_back(real_token(tok, context));
  if (out.size() != expected)
    throw ConfigError(context + ": expected " + std::to_string(expected) + " numbers");
  return out;
}

std::pair<std::string, std::string> head(std::string_view spec, const std::string& context) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ConfigError(context + ": missing ':' in '" + std::string(spec) + "'");
  return {trim(spec.substr(0, colon)), trim(spec.substr(colon + 1))};
}

// Reformats every number of a spec "kind:a,b;c,d" in shortest form.
std::string canonical_numbers(const std::string& kind, const std::string& body) {
  std::string out = kind + ":";
  const auto groups = split(body, ';');
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (g) out += ';';
    const auto toks = split(groups[g], ',');
    for (std::size_t i = 0; i < toks.size(); ++i) {
      if (i) out += ',';
      out += format_real(parse_real(toks[i]));
    }
  }
  return out;
}

enum class Kind { real, integer, text, choice, boolean, penalty, law, laws, reals };

struct KeyInfo {
  Kind kind;
  std::vector<std::string> choices;
};

const std::map<std::string, KeyInfo>& key_table() {
  static const std::map<std::string, KeyInfo> table = {
      {"model", {Kind::choice, {"girg", "igirg", "sfp", "hrg"}}},
      {"n", {Kind::integer, {}}},
      {"d", {Kind::integer, {}}},
      {"tau", {Kind::real, {}}},
      {"alpha", {Kind::real, {}}},
      {"c", {Kind::real, {}}},
      {"c1", {Kind::real, {}}},
      {"lambda", {Kind::real, {}}},
      {"side", {Kind::real, {}}},
      {"radius", {Kind::integer, {}}},
      {"lambda_perc", {Kind::real, {}}},
      {"alpha_norm", {Kind::real, {}}},
      {"alpha_h", {Kind::real, {}}},
      {"c_h", {Kind::real, {}}},
      {"t_h", {Kind::text, {}}},
      {"boundary", {Kind::choice, {"hard", "torus"}}},
      {"pin_origin", {Kind::boolean, {}}},
      {"weight_cap", {Kind::real, {}}},
      {"max_vertices", {Kind::integer, {}}},
      {"law", {Kind::law, {}}},
      {"laws", {Kind::laws, {}}},
      {"penalty", {Kind::penalty, {}}},
      {"seed", {Kind::integer, {}}},
      {"sizes", {Kind::reals, {}}},
      {"pairs", {Kind::integer, {}}},
      {"graphs", {Kind::integer, {}}},
      {"workers", {Kind::integer, {}}},
  };
  return table;
}

std::string canonical_law(std::string_view spec) {
  const auto [kind, body] = head(spec, "law");
  parse_law(spec);
  return canonical_numbers(kind, body);
}

}  // namespace

Penalty parse_penalty(std::string_view spec) {
  const auto [kind, body] = head(spec, "penalty");
  try {
    if (kind == "prod") return Penalty::product(reals(body, 1, "penalty prod")[0]);
    if (kind == "sum") return Penalty::sum_power(reals(body, 1, "penalty sum")[0]);
    if (kind == "max") return Penalty::max_power(reals(body, 1, "penalty max")[0]);
    if (kind == "mono") {
      const auto v = reals(body, 2, "penalty mono");
      return Penalty::monomial(v[0], v[1]);
    }
    if (kind == "poly") {
      std::vector<Monomial> terms;
      for (const auto& group : split(body, ';')) {
        const auto v = reals(group, 3, "penalty poly term");
        terms.push_back({v[0], v[1], v[2]});
      }
      return Penalty::polynomial(std::move(terms));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("penalty: unknown kind '" + kind + "' (prod, mono, sum, max, poly)");
}

EdgeLengthLaw parse_law(std::string_view spec) {
  const auto [kind, body] = head(spec, "law");
  EdgeLengthLaw law;
  if (kind == "poly") law = PolyAtZero{reals(body, 1, "law poly")[0]};
  else if (kind == "exp") law = Exponential{reals(body, 1, "law exp")[0]};
  else if (kind == "point") law = PointMass{reals(body, 1, "law point")[0]};
  else if (kind == "dexp") {
    const auto v = reals(body, 3, "law dexp");
    law = DoubleExpFlat{v[0], v[1], v[2]};
  } else {
    throw ConfigError("law: unknown kind '" + kind + "' (poly, exp, dexp, point)");
  }
  try {
    validate(law);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return law;
}

const std::vector<std::string>& RunConfig::known_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& [name, info] : key_table()) k.push_back(name);
    return k;
  }();
  return keys;
}

void RunConfig::set(const std::string& key, const std::string& raw) {
  const auto it = key_table().find(key);
  if (it == key_table().end()) throw ConfigError("unknown config key '" + key + "'");
  const std::string value = trim(raw);
  const std::string ctx = "config key '" + key + "'";
  std::string norm;
  switch (it->second.kind) {
    case Kind::real: norm = format_real(real_token(value, ctx)); break;
    case Kind::integer:
      try {
        if (key == "seed") {
          std::uint64_t seed = 0;
          auto res = std::from_chars(value.data(), value.data() + value.size(), seed);
          if (res.ec != std::errc() || res.ptr != value.data() + value.size())
            throw std::invalid_argument("seed");
          norm = std::to_string(seed);
        } else {
          norm = std::to_string(parse_integer(value));
        }
      } catch (const std::exception&) {
        throw ConfigError(ctx + ": '" + value + "' is not an integer");
      }
      break;
    case Kind::text:
      if (key == "t_h" && value != "threshold") norm = format_real(real_token(value, ctx));
      else norm = value;
      break;
    case Kind::choice:
      if (std::find(it->second.choices.begin(), it->second.choices.end(), value) ==
          it->second.choices.end())
        throw ConfigError(ctx + ": '" + value + "' is not an allowed value");
      norm = value;
      break;
    case Kind::boolean:
      if (value != "true" && value != "false") throw ConfigError(ctx + ": expected true or false");
      norm = value;
      break;
    case Kind::penalty: {
      parse_penalty(value);
      const auto [kind, body] = head(value, "penalty");
      norm = canonical_numbers(kind, body);
      break;
    }
    case Kind::law: norm = canonical_law(value); break;
    case Kind::laws: {
      std::istringstream is(value);
      std::string tok;
      while (is >> tok) norm += (norm.empty() ? "" : " ") + canonical_law(tok);
      if (norm.empty()) throw ConfigError(ctx + ": empty law list");
      break;
    }
    case Kind::reals: {
      std::istringstream is(value);
      std::string tok;
      while (is >> tok) norm += (norm.empty() ? "" : " ") + format_real(real_token(tok, ctx));
      if (norm.empty()) throw ConfigError(ctx + ": empty list");
      break;
    }
  }
  values_[key] = norm;
}

RunConfig RunConfig::parse(std::string_view text) {
  RunConfig cfg;
  std::istringstream is{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(std::string_view(t).substr(0, eq));
    if (cfg.has(key))
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    cfg.set(key, t.substr(eq + 1));
  }
  return cfg;
}

const std::string& RunConfig::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) throw ConfigError("missing config key '" + key + "'");
  return it->second;
}

std::string RunConfig::serialize() const {
  std::string out;
  for (const auto& [k, v] : values_) out += k + "=" + v + "\n";
  return out;
}

double RunConfig::real(const std::string& key, double fallback) const {
  return has(key) ? parse_real(get(key)) : fallback;
}

long long RunConfig::integer(const std::string& key, long long fallback) const {
  return has(key) ? parse_integer(get(key)) : fallback;
}

std::string RunConfig::text(const std::string& key, const std::string& fallback) const {
  return has(key) ? get(key) : fallback;
}

ModelSpec model_spec_from_config(const RunConfig& cfg) {
  ModelSpec spec;
  const std::string model = cfg.get("model");
  const int d = static_cast<int>(cfg.integer("d", 1));
  const double tau = cfg.real("tau", 2.5);
  if (model == "girg") {
    spec.variant = GirgSpec{static_cast<std::size_t>(cfg.integer("n", 1000)), d, tau,
                            cfg.real("alpha", 2.0), cfg.real("c", 1.0), cfg.real("c1", 1.0)};
  } else if (model == "igirg") {
    spec.variant = IgirgWindowSpec{cfg.real("lambda", 1.0), d, cfg.real("side", 100.0), tau,
                                   cfg.real("alpha", 2.0), cfg.real("c", 1.0), cfg.real("c1", 1.0)};
  } else if (model == "sfp") {
    spec.variant = SfpWindowSpec{d, static_cast<int>(cfg.integer("radius", 10)), tau,
                                 cfg.real("lambda_perc", 1.0), cfg.real("alpha_norm", 2.0)};
  } else {
    HrgSpec h{static_cast<std::size_t>(cfg.integer("n", 1000)), cfg.real("alpha_h", 0.75),
              cfg.real("c_h", 0.0), 0.5};
    const std::string t = cfg.text("t_h", "0.5");
    if (t == "threshold") h.t_h.reset();
    else h.t_h = parse_real(t);
    spec.variant = h;
  }
  spec.lengths = parse_law(cfg.text("law", "poly:1"));
  spec.boundary = cfg.text("boundary", "hard") == "torus" ? Boundary::torus : Boundary::hard;
  spec.pin_origin = cfg.text("pin_origin", "false") == "true";
  if (cfg.has("weight_cap")) spec.weight_cap = cfg.real("weight_cap", 0.0);
  const long long cap = cfg.integer("max_vertices", 100000);
  if (cap < 1) throw ConfigError("config key 'max_vertices' must be >= 1");
  spec.max_vertices = static_cast<std::size_t>(cap);
  try {
    validate(spec);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

std::uint64_t seed_from_config(const RunConfig& cfg, std::uint64_t fallback) {
  return cfg.has("seed") ? std::stoull(cfg.get("seed")) : fallback;
}

SweepSpec sweep_spec_from_config(const RunConfig& cfg) {
  SweepSpec s;
  s.model = model_spec_from_config(cfg);
  s.penalty = parse_penalty(cfg.text("penalty", "prod:1"));
  std::istringstream laws(cfg.text("laws", cfg.text("law", "poly:1")));
  for (std::string tok; laws >> tok;) s.laws.push_back(parse_law(tok));
  std::istringstream sizes(cfg.get("sizes"));
  for (std::string tok; sizes >> tok;) s.sizes.push_back(parse_real(tok));
  const long long pairs = cfg.integer("pairs", 30), graphs = cfg.integer("graphs", 5),
                  workers = cfg.integer("workers", 1);
  if (pairs < 0 || graphs < 1 || workers < 1)
    throw ConfigError("config: need pairs >= 0, graphs >= 1, workers >= 1");
  s.pairs_per_graph = static_cast<std::size_t>(pairs);
  s.graphs_per_cell = static_cast<std::size_t>(graphs);
  s.workers = static_cast<unsigned>(workers);
  s.seed = seed_from_config(cfg);
  try {
    for (double size : s.sizes) validate(with_size(s.model, size));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return s;
}

}  // namespace pplab
