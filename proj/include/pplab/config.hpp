#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pplab/cost.hpp"
#include "pplab/experiments.hpp"
#include "pplab/models.hpp"
#include "pplab/randomness.hpp"

namespace pplab {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// "prod:mu", "mono:mu,nu", "sum:mu", "max:mu", "poly:a,mu,nu[;a,mu,nu]..."
Penalty parse_penalty(std::string_view spec);
// "poly:beta", "exp:rate", "dexp:eta,c1,c2", "point:value"
EdgeLengthLaw parse_law(std::string_view spec);

// Flat key=value document. Values are normalized on entry so that
// serialize() followed by parse() reproduces the same document.
class RunConfig {
 public:
  static RunConfig parse(std::string_view text);
  static const std::vector<std::string>& known_keys();

  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const { return values_.count(key) != 0; }
  const std::string& get(const std::string& key) const;
  std::string serialize() const;
  const std::map<std::string, std::string>& values() const { return values_; }
  bool operator==(const RunConfig& other) const { return values_ == other.values_; }

  double real(const std::string& key, double fallback) const;
  long long integer(const std::string& key, long long fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;

 private:
  std::map<std::string, std::string> values_;
};

ModelSpec model_spec_from_config(const RunConfig& cfg);
SweepSpec sweep_spec_from_config(const RunConfig& cfg);
std::uint64_t seed_from_config(const RunConfig& cfg, std::uint64_t fallback = 1);

}  // namespace pplab
