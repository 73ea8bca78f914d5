#include "pplab/randomness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "pplab/format.hpp"

namespace pplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::string_view label,
                          std::uint64_t counter) noexcept {
  return Stream(master_seed, label).bits(counter);
}

double uniform(const SeedSpec& seed) noexcept {
  return Stream(seed).uniform(seed.counter);
}

void validate(const WeightLaw& law) {
  if (!(law.tau > 1.0) || !std::isfinite(law.tau))
    throw std::invalid_argument("weight law: tau must be a finite value > 1");
  if (law.cap && !(*law.cap > 1.0))
    throw std::invalid_argument("weight law: cap must exceed the minimum weight 1");
}

double weight_from_uniform(double u, const WeightLaw& law) {
  const double inv = -1.0 / (law.tau - 1.0);
  if (!law.cap) return std::pow(u, inv);
  const double floor_u = std::pow(*law.cap, -(law.tau - 1.0));
  const double w = std::pow(floor_u + u * (1.0 - floor_u), inv);
  return std::min(w, *law.cap);
}

double sample_weight(const SeedSpec& seed, const WeightLaw& law) {
  validate(law);
  return weight_from_uniform(uniform(seed), law);
}

void validate(const EdgeLengthLaw& law) {
  std::visit(Overloaded{
                 [](const PolyAtZero& l) {
                   if (!(l.beta > 0.0) || !std::isfinite(l.beta))
                     throw std::invalid_argument("PolyAtZero: beta must be finite and > 0");
                 },
                 [](const Exponential& l) {
                   if (!(l.rate > 0.0) || !std::isfinite(l.rate))
                     throw std::invalid_argument("Exponential: rate must be finite and > 0");
                 },
                 [](const DoubleExpFlat& l) {
                   if (!(l.eta > 1.0) || !(l.c1 > 0.0) || !(l.c2 > 0.0))
                     throw std::invalid_argument("DoubleExpFlat: need eta > 1 and c1, c2 > 0");
                 },
                 [](const PointMass& l) {
                   if (!(l.value >= 0.0) || !std::isfinite(l.value))
                     throw std::invalid_argument("PointMass: value must be finite and >= 0");
                 },
             },
             law);
}

double edge_length_cdf(const EdgeLengthLaw& law, double t) {
  if (std::isnan(t)) throw std::invalid_argument("edge_length_cdf: t is NaN");
  return std::visit(Overloaded{
                        [t](const PolyAtZero& l) {
                          if (t <= 0.0) return 0.0;
                          if (t >= 1.0) return 1.0;
                          return std::pow(t, l.beta);
                        },
                        [t](const Exponential& l) {
                          if (t <= 0.0) return 0.0;
                          return -std::expm1(-l.rate * t);
                        },
                        [t](const DoubleExpFlat& l) {
                          if (t <= 0.0) return 0.0;
                          if (t == kInf) return 1.0;
                          const double inner = std::expm1(l.c2 / std::pow(t, l.eta));
                          return std::clamp(std::exp(-l.c1 * inner), 0.0, 1.0);
                        },
                        [t](const PointMass& l) { return t >= l.value ? 1.0 : 0.0; },
                    },
                    law);
}

double edge_length_quantile(const EdgeLengthLaw& law, double y) {
  if (!(y > 0.0 && y < 1.0))
    throw std::invalid_argument("edge_length_quantile: y must lie in (0,1)");
  double t = std::visit(Overloaded{
                        [y](const PolyAtZero& l) { return std::pow(y, 1.0 / l.beta); },
                        [y](const Exponential& l) { return -std::log1p(-y) / l.rate; },
                        [y](const DoubleExpFlat& l) {
                          const double g = std::log1p(-std::log(y) / l.c1);
                          return std::pow(l.c2 / g, 1.0 / l.eta);
                        },
                        [](const PointMass& l) { return l.value; },
                    },
                    law);
  // The closed forms can land one ulp short; step up until F(t) >= y holds.
  for (int i = 0; i < 64 && edge_length_cdf(law, t) < y; ++i) t = std::nextafter(t, kInf);
  return t;
}

double sample_length(const SeedSpec& seed, const EdgeLengthLaw& law) {
  return edge_length_quantile(law, Stream(seed).uniform_open(seed.counter));
}

std::pair<double, double> beta_exponents(const EdgeLengthLaw& law) {
  return std::visit(Overloaded{
                        [](const PolyAtZero& l) { return std::pair{l.beta, l.beta}; },
                        [](const Exponential&) { return std::pair{1.0, 1.0}; },
                        [](const DoubleExpFlat&) { return std::pair{kInf, kInf}; },
                        [](const PointMass& l) {
                          return l.value > 0.0 ? std::pair{kInf, kInf} : std::pair{0.0, 0.0};
                        },
                    },
                    law);
}

std::string describe(const EdgeLengthLaw& law) {
  return std::visit(
      Overloaded{
          [](const PolyAtZero& l) { return "poly:" + format_real(l.beta); },
          [](const Exponential& l) { return "exp:" + format_real(l.rate); },
          [](const DoubleExpFlat& l) {
            return "dexp:" + format_real(l.eta) + "," + format_real(l.c1) + "," +
                   format_real(l.c2);
          },
          [](const PointMass& l) { return "point:" + format_real(l.value); },
      },
      law);
}

std::uint64_t sample_poisson(const SeedSpec& seed, double mean) {
  if (!(mean >= 0.0) || !std::isfinite(mean))
    throw std::invalid_argument("sample_poisson: mean must be finite and >= 0");
  if (mean == 0.0) return 0;
  std::mt19937_64 engine(Stream(seed).bits(seed.counter));
  std::poisson_distribution<long long> dist(mean);
  return static_cast<std::uint64_t>(dist(engine));
}

}  // namespace pplab
