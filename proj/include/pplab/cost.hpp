#pragma once

#include <string>
#include <vector>

#include "pplab/randomness.hpp"

namespace pplab {

// a * w1^mu * w2^nu
struct Monomial {
  double coeff = 1.0;
  double mu = 0.0;
  double nu = 0.0;
};

enum class PenaltyKind { polynomial, max_power, sum_power };

// Weight penalty f(w_tail, w_head). Besides polynomials, (w1 v w2)^mu and
// (w1 + w2)^mu are evaluated exactly and classified through w1^mu + w2^mu,
// which bounds both from above and below up to constants.
class Penalty {
 public:
  static Penalty polynomial(std::vector<Monomial> terms);
  static Penalty product(double mu);
  static Penalty monomial(double mu, double nu);
  static Penalty power_sum(double mu);
  static Penalty max_power(double mu);
  static Penalty sum_power(double mu);

  double operator()(double w1, double w2) const;
  double degree() const;
  PenaltyKind kind() const { return kind_; }
  // Polynomial terms; for max/sum kinds, the surrogate w1^mu + w2^mu.
  const std::vector<Monomial>& terms() const { return terms_; }
  Penalty reversed() const;
  bool symmetric() const;
  // Single term a w1^mu w2^nu (max/sum kinds are not monomials).
  bool is_monomial() const { return kind_ == PenaltyKind::polynomial && terms_.size() == 1; }
  std::string describe() const;

 private:
  Penalty(PenaltyKind kind, std::vector<Monomial> terms, double mu);
  PenaltyKind kind_;
  std::vector<Monomial> terms_;
  double mu_ = 0.0;  // exponent of the max/sum kinds
};

double eval_penalty(const Penalty& f, double w1, double w2);
double directed_edge_cost(const Penalty& f, double w_tail, double w_head, double length);
double deg_f(const Penalty& f);

enum class Direction { outward, inward };
enum class Outcome { ExplosiveSideways, ExplosiveLengthwise, Conservative, Critical, Inconclusive };

std::string to_string(Direction d);
std::string to_string(Outcome o);

// Explosion is guaranteed for beta+ below the first value, conservativeness for
// beta- above the second; they agree for monomials and symmetric penalties.
struct ThresholdPair {
  double explosive_below = 0.0;
  double conservative_above = 0.0;
  bool single() const { return explosive_below == conservative_above; }
};

ThresholdPair critical_beta(const Penalty& f, double tau);

struct PhaseVerdict {
  Outcome outcome = Outcome::Inconclusive;
  Direction direction = Direction::outward;
  std::string triggered_condition;
  ThresholdPair thresholds;
  std::string annotation;
};

PhaseVerdict classify(const Penalty& f, double tau, double alpha, double beta_minus,
                      double beta_plus, Direction direction = Direction::outward);
// One line: outcome, direction, thresholds, condition.
std::string format_verdict(const PhaseVerdict& v);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty() const { return !(lo < hi); }
};

Interval idelta_interval(double tau, double mu, double nu, double beta_plus, double delta);

struct BoxingParams {
  double delta = 0.0;
  double C = 0.0;
  double D = 0.0;
  double xi = 0.0;
  double rho = 0.0;
  Interval interval;
};

struct ParamCheck {
  bool in_interval = false;
  bool cd = false;
  bool cdx2 = false;
  bool mubeta3 = false;
  std::string violated;  // empty when everything holds
  bool ok() const { return violated.empty(); }
};

// The s-grid {0, 0.1, ..., 1} used for the C^s inequalities.
std::vector<double> s_grid();
ParamCheck check_boxing_params(const BoxingParams& p, double tau, double mu, double nu,
                               double beta_plus);
BoxingParams solve_boxing_params(double tau, double mu, double nu, double beta_plus);

struct FppFunctional {
  double partial_sum = 0.0;
  bool convergent = false;
};

FppFunctional fpp_explosion_functional(const EdgeLengthLaw& law, int k_max);

// Greedy-path bound, hop from annulus k to k+1 for a monomial w1^mu w2^nu.
struct GreedyHopBound {
  double weight_factor = 0.0;  // leader-weight upper ends raised to mu and nu
  double quantile = 0.0;       // F^{-1}(zeta e^{-(1-eps) M C^{k+1} (D-1)}), inf if the argument >= 1
  double term() const;
};

GreedyHopBound greedy_hop_bound(const BoxingParams& p, double M, double tau, double mu, double nu,
                                int k, double epsilon, double zeta, const EdgeLengthLaw& law);

}  // namespace pplab
