#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace pplab {

// Identifies one draw: the value depends only on these three fields.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::string stream_label;
  std::uint64_t counter = 0;
};

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t fnv1a64(std::string_view s) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Counter-based stream. Output i is SplitMix64 evaluated at position i of the
// sequence seeded by (master, label), so draws can be taken in any order.
class Stream {
 public:
  Stream(std::uint64_t master_seed, std::string_view label) noexcept
      : key_(mix64(master_seed ^ mix64(fnv1a64(label)))) {}
  explicit Stream(const SeedSpec& seed) noexcept
      : Stream(seed.master_seed, seed.stream_label) {}

  std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix64(key_ + (counter + 1) * 0x9e3779b97f4a7c15ULL);
  }
  // Uniform on (0,1].
  double uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
  }
  // Uniform on (0,1).
  double uniform_open(std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }
  std::uint64_t key() const noexcept { return key_; }

 private:
  std::uint64_t key_;
};

// Counter for an unordered vertex pair, u < v.
constexpr std::uint64_t pair_counter(std::uint32_t u, std::uint32_t v) noexcept {
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

// Derives an independent 64-bit seed, e.g. for a sub-experiment.
std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label,
                          std::uint64_t counter) noexcept;

double uniform(const SeedSpec& seed) noexcept;

// Pareto weights with minimum 1; an optional cap truncates the law.
struct WeightLaw {
  double tau = 2.5;
  std::optional<double> cap;
};

void validate(const WeightLaw& law);
double weight_from_uniform(double u, const WeightLaw& law);
double sample_weight(const SeedSpec& seed, const WeightLaw& law);

// F(t) = min(1, t^beta).
struct PolyAtZero {
  double beta = 1.0;
};
// F(t) = 1 - exp(-rate t).
struct Exponential {
  double rate = 1.0;
};
// F(t) = exp(-c1 (exp(c2 / t^eta) - 1)), flat at zero.
struct DoubleExpFlat {
  double eta = 2.0;
  double c1 = 1.0;
  double c2 = 1.0;
};
// L = value almost surely.
struct PointMass {
  double value = 1.0;
};

using EdgeLengthLaw = std::variant<PolyAtZero, Exponential, DoubleExpFlat, PointMass>;

void validate(const EdgeLengthLaw& law);
double edge_length_cdf(const EdgeLengthLaw& law, double t);
// Generalized inverse inf{t : F(t) >= y}, y in (0,1).
double edge_length_quantile(const EdgeLengthLaw& law, double y);
double sample_length(const SeedSpec& seed, const EdgeLengthLaw& law);
// Lower and upper polynomial exponents of F at zero.
std::pair<double, double> beta_exponents(const EdgeLengthLaw& law);
std::string describe(const EdgeLengthLaw& law);

std::uint64_t sample_poisson(const SeedSpec& seed, double mean);

}  // namespace pplab
