#include "pplab/cost.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <tuple>
#include <stdexcept>

#include "pplab/format.hpp"

namespace pplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double ipow(double w, double e) {
  if (e == 0.0) return 1.0;
  if (e == 1.0) return w;
  if (e == 2.0) return w * w;
  return std::pow(w, e);
}

// (2 - tau) / nu with nu = 0 read as +inf for tau < 2.
double side_ratio(double tau, double nu) {
  if (nu == 0.0) return kInf;
  return (2.0 - tau) / nu;
}

}  // namespace

Penalty::Penalty(PenaltyKind kind, std::vector<Monomial> terms, double mu)
    : kind_(kind), terms_(std::move(terms)), mu_(mu) {
  if (terms_.empty()) throw std::invalid_argument("penalty: at least one term is required");
  for (const Monomial& m : terms_) {
    if (!(m.coeff > 0.0) || !std::isfinite(m.coeff))
      throw std::invalid_argument("penalty: coefficients must be finite and > 0");
    if (!(m.mu >= 0.0) || !(m.nu >= 0.0) || !std::isfinite(m.mu) || !std::isfinite(m.nu))
      throw std::invalid_argument("penalty: exponents must be finite and >= 0");
  }
}

Penalty Penalty::polynomial(std::vector<Monomial> terms) {
  return Penalty(PenaltyKind::polynomial, std::move(terms), 0.0);
}
Penalty Penalty::product(double mu) { return polynomial({{1.0, mu, mu}}); }
Penalty Penalty::monomial(double mu, double nu) { return polynomial({{1.0, mu, nu}}); }
Penalty Penalty::power_sum(double mu) { return polynomial({{1.0, mu, 0.0}, {1.0, 0.0, mu}}); }
Penalty Penalty::max_power(double mu) {
  return Penalty(PenaltyKind::max_power, {{1.0, mu, 0.0}, {1.0, 0.0, mu}}, mu);
}
Penalty Penalty::sum_power(double mu) {
  return Penalty(PenaltyKind::sum_power, {{1.0, mu, 0.0}, {1.0, 0.0, mu}}, mu);
}

double Penalty::operator()(double w1, double w2) const {
  switch (kind_) {
    case PenaltyKind::max_power: return ipow(std::max(w1, w2), mu_);
    case PenaltyKind::sum_power: return ipow(w1 + w2, mu_);
    case PenaltyKind::polynomial: break;
  }
  double s = 0.0;
  for (const Monomial& m : terms_) s += m.coeff * ipow(w1, m.mu) * ipow(w2, m.nu);
  return s;
}

double Penalty::degree() const {
  double d = 0.0;
  for (const Monomial& m : terms_) d = std::max(d, m.mu + m.nu);
  return d;
}

Penalty Penalty::reversed() const {
  Penalty r = *this;
  for (Monomial& m : r.terms_) std::swap(m.mu, m.nu);
  return r;
}

bool Penalty::symmetric() const {
  if (kind_ != PenaltyKind::polynomial) return true;
  auto key = [](const Monomial& m) { return std::tuple(m.mu, m.nu, m.coeff); };
  std::vector<Monomial> a = terms_, b = reversed().terms_;
  auto less = [&](const Monomial& x, const Monomial& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (key(a[i]) != key(b[i])) return false;
  return true;
}

std::string Penalty::describe() const {
  switch (kind_) {
    case PenaltyKind::max_power: return "max:" + format_real(mu_);
    case PenaltyKind::sum_power: return "sum:" + format_real(mu_);
    case PenaltyKind::polynomial: break;
  }
  std::string s = "poly:";
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    if (i) s += ';';
    s += format_real(terms_[i].coeff) + "," + format_real(terms_[i].mu) + "," +
         format_real(terms_[i].nu);
  }
  return s;
}

double eval_penalty(const Penalty& f, double w1, double w2) { return f(w1, w2); }

double directed_edge_cost(const Penalty& f, double w_tail, double w_head, double length) {
  return length * f(w_tail, w_head);
}

double deg_f(const Penalty& f) { return f.degree(); }

std::string to_string(Direction d) { return d == Direction::outward ? "outward" : "inward"; }

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::ExplosiveSideways: return "ExplosiveSideways";
    case Outcome::ExplosiveLengthwise: return "ExplosiveLengthwise";
    case Outcome::Conservative: return "Conservative";
    case Outcome::Critical: return "Critical";
    case Outcome::Inconclusive: return "Inconclusive";
  }
  return "?";
}

ThresholdPair critical_beta(const Penalty& f, double tau) {
  if (!(tau > 1.0 && tau < 3.0)) throw std::invalid_argument("critical_beta: tau must lie in (1,3)");
  const double deg = f.degree();
  if (!(deg > 0.0)) throw std::invalid_argument("critical_beta: deg(f) must be > 0");
  const double lengthwise = (3.0 - tau) / deg;
  if (tau >= 2.0) return {lengthwise, lengthwise};
  double all_terms = kInf, top_terms = kInf;
  for (const Monomial& m : f.terms()) {
    const double r = side_ratio(tau, m.nu);
    all_terms = std::min(all_terms, r);
    if (m.mu + m.nu == deg) top_terms = std::min(top_terms, r);
  }
  return {std::max(lengthwise, all_terms), std::max(lengthwise, top_terms)};
}

PhaseVerdict classify(const Penalty& f_in, double tau, double alpha, double beta_minus,
                      double beta_plus, Direction direction) {
  if (!(tau > 1.0) || std::isnan(tau)) throw std::invalid_argument("classify: tau must be > 1");
  if (!(alpha > 0.0)) throw std::invalid_argument("classify: alpha must be > 0");
  if (std::isnan(beta_minus) || std::isnan(beta_plus) || beta_minus < 0.0)
    throw std::invalid_argument("classify: beta exponents must be >= 0");
  if (beta_minus > beta_plus) throw std::invalid_argument("classify: beta- exceeds beta+");
  if (!(f_in.degree() > 0.0)) throw std::invalid_argument("classify: deg(f) must be > 0");

  const Penalty f = direction == Direction::outward ? f_in : f_in.reversed();
  PhaseVerdict v;
  v.direction = direction;
  if (alpha <= 1.0) {
    v.outcome = Outcome::ExplosiveSideways;
    v.triggered_condition = "clause (i), alpha <= 1";
    if (tau < 3.0) v.thresholds = critical_beta(f, tau);
    return v;
  }
  if (tau >= 3.0) {
    v.outcome = Outcome::Conservative;
    v.triggered_condition = "tau >= 3";
    v.thresholds = {0.0, 0.0};
    return v;
  }
  const double deg = f.degree();
  const double lengthwise = (3.0 - tau) / deg;
  v.thresholds = critical_beta(f, tau);

  double all_terms = tau < 2.0 ? kInf : -kInf;
  if (tau < 2.0)
    for (const Monomial& m : f.terms()) all_terms = std::min(all_terms, side_ratio(tau, m.nu));
  if (beta_plus < all_terms) {
    v.outcome = Outcome::ExplosiveSideways;
    v.triggered_condition = "clause (i), beta+ < (2-tau)/nu_i for all i";
    return v;
  }
  if (beta_plus < lengthwise) {
    v.outcome = Outcome::ExplosiveLengthwise;
    v.triggered_condition = "clause (ii), beta+ < (3-tau)/deg(f)";
    return v;
  }
  if (beta_minus > lengthwise) {
    std::vector<std::size_t> qualifying;
    std::size_t top = 0;
    for (std::size_t i = 0; i < f.terms().size(); ++i) {
      const Monomial& m = f.terms()[i];
      if (m.mu + m.nu != deg) continue;
      ++top;
      if (tau >= 2.0 || beta_minus > side_ratio(tau, m.nu)) qualifying.push_back(i);
    }
    if (!qualifying.empty()) {
      v.outcome = Outcome::Conservative;
      v.triggered_condition = "clause (iii), beta- > (3-tau)/deg(f) and beta- > (2-tau)/nu_i";
      if (top > 1) {
        v.triggered_condition += " for top-degree term " + std::to_string(qualifying.front()) +
                                 " (" + std::to_string(qualifying.size()) + " of " +
                                 std::to_string(top) + " top-degree terms qualify)";
      }
      return v;
    }
  }
  if (beta_minus == beta_plus && v.thresholds.single() &&
      beta_plus == v.thresholds.explosive_below) {
    v.outcome = Outcome::Critical;
    v.triggered_condition = "beta- = beta+ = threshold";
    v.annotation =
        "conservative when E[W^(tau-1)] < inf; infinite for pure Pareto weights";
    return v;
  }
  v.outcome = Outcome::Inconclusive;
  v.triggered_condition = "no clause applies";
  return v;
}

std::string format_verdict(const PhaseVerdict& v) {
  std::ostringstream os;
  os << "outcome=" << to_string(v.outcome) << " direction=" << to_string(v.direction)
     << " explosive_below=" << format_real(v.thresholds.explosive_below)
     << " conservative_above=" << format_real(v.thresholds.conservative_above)
     << " condition=\"" << v.triggered_condition << "\"";
  if (!v.annotation.empty()) os << " note=\"" << v.annotation << "\"";
  return os.str();
}

Interval idelta_interval(double tau, double mu, double nu, double beta_plus, double delta) {
  if (!(tau > 1.0 && tau < 3.0)) throw std::invalid_argument("idelta: tau must lie in (1,3)");
  if (!(mu >= 0.0 && nu >= 0.0 && beta_plus >= 0.0))
    throw std::invalid_argument("idelta: mu, nu, beta+ must be >= 0");
  if (!((mu + nu) * beta_plus < 3.0 - tau))
    throw std::invalid_argument("idelta: need (mu+nu) beta+ < 3 - tau");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("idelta: delta must lie in (0,1)");
  const double lo =
      1.0 + (mu + nu) * beta_plus / (tau - 1.0) * (1.0 + delta) / ((1.0 - delta) * (1.0 - delta));
  const double hi = 2.0 / (tau - 1.0) * (1.0 - delta) / (1.0 + delta);
  return {lo, hi};
}

std::vector<double> s_grid() {
  std::vector<double> s;
  for (int i = 0; i <= 10; ++i) s.push_back(i / 10.0);
  return s;
}

ParamCheck check_boxing_params(const BoxingParams& p, double tau, double mu, double nu,
                               double beta_plus) {
  ParamCheck c;
  const double dl = p.delta, C = p.C, D = p.D;
  c.in_interval = D > p.interval.lo && D < p.interval.hi && C == 1.0 + dl;
  c.cd = (1.0 - dl) * (1.0 + C) / (tau - 1.0) - D * C > 0.0;
  c.cdx2 = true;
  c.mubeta3 = true;
  for (double s : s_grid()) {
    const double Cs = std::pow(C, s);
    if (!((1.0 - dl) / (tau - 1.0) * 2.0 - Cs * D > 0.0)) c.cdx2 = false;
    if (beta_plus > 0.0) {
      const double lhs = (mu + nu * Cs) * (1.0 + dl) / (tau - 1.0) -
                         (D - 1.0) * Cs * (1.0 - dl) * (1.0 - dl) / beta_plus;
      if (!(lhs < 0.0)) c.mubeta3 = false;
    }
  }
  if (!c.in_interval) c.violated = "D in I_delta";
  else if (!c.cdx2) c.violated = "(1-delta)/(tau-1) * 2 - C^s D > 0";
  else if (!c.mubeta3) c.violated = "(mu + nu C^s)(1+delta)/(tau-1) - (D-1) C^s (1-delta)^2 / beta+ < 0";
  else if (!c.cd) c.violated = "(1-delta)(1+C)/(tau-1) - D C > 0";
  return c;
}

BoxingParams solve_boxing_params(double tau, double mu, double nu, double beta_plus) {
  std::string last = "I_delta is empty";
  for (double delta = 0.2; delta >= 0x1.0p-20; delta /= 2.0) {
    BoxingParams p;
    p.interval = idelta_interval(tau, mu, nu, beta_plus, delta);
    if (p.interval.empty()) continue;
    p.delta = delta;
    p.C = 1.0 + delta;
    p.D = 0.5 * (p.interval.lo + p.interval.hi);
    const ParamCheck check = check_boxing_params(p, tau, mu, nu, beta_plus);
    if (!check.ok()) {
      last = check.violated;
      continue;
    }
    if (beta_plus > 0.0) {
      const double q = (1.0 - delta) * (1.0 - delta);
      p.xi = -(mu + nu * p.C) * (1.0 + delta) / (tau - 1.0) + q / beta_plus * p.C * (p.D - 1.0);
      p.rho = -(tau - 1.0) / (1.0 - delta) *
              ((mu + p.C * nu) / (tau - 1.0) - q * (p.D - 1.0) / beta_plus);
    } else {
      p.xi = kInf;
      p.rho = kInf;
    }
    if (!(p.xi > 0.0) || !(p.rho > 0.0)) {
      last = "xi(delta) > 0 and rho(delta) > 0";
      continue;
    }
    return p;
  }
  throw std::domain_error("solve_boxing_params: no delta >= 2^-20 works; violated: " + last);
}

FppFunctional fpp_explosion_functional(const EdgeLengthLaw& law, int k_max) {
  if (k_max < 1 || k_max > 5) throw std::invalid_argument("fpp functional: k_max must lie in [1, 5]");
  validate(law);
  FppFunctional out;
  for (int k = 1; k <= k_max; ++k)
    out.partial_sum += edge_length_quantile(law, std::exp(-std::exp(static_cast<double>(k))));
  if (const auto* pm = std::get_if<PointMass>(&law)) out.convergent = pm->value == 0.0;
  else out.convergent = !std::holds_alternative<DoubleExpFlat>(law);
  return out;
}

double GreedyHopBound::term() const {
  if (weight_factor == 0.0 || quantile == 0.0) return 0.0;
  return weight_factor * quantile;
}

GreedyHopBound greedy_hop_bound(const BoxingParams& p, double M, double tau, double mu, double nu,
                                int k, double epsilon, double zeta, const EdgeLengthLaw& law) {
  const double Ck = std::pow(p.C, k), Ck1 = std::pow(p.C, k + 1);
  GreedyHopBound b;
  b.weight_factor = std::exp(mu * M * Ck * (1.0 + p.delta) / (tau - 1.0) +
                             nu * M * Ck1 * (1.0 + p.delta) / (tau - 1.0));
  const double y = zeta * std::exp(-(1.0 - epsilon) * M * Ck1 * (p.D - 1.0));
  b.quantile = y < 1.0 && y > 0.0 ? edge_length_quantile(law, y) : kInf;
  return b;
}

}  // namespace pplab
