#include "blowup/envelope.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace blowup {

namespace {

// Exact rational with int64 components; the chain-identity operands stay
// below 10^7, far from overflow.
struct Rational {
  long long num = 0;
  long long den = 1;

  static Rational make(long long n, long long d) {
    if (d == 0) throw std::logic_error("Rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const long long g = std::gcd(n < 0 ? -n : n, d);
    return {g ? n / g : n, g ? d / g : d};
  }
  Rational operator*(const Rational& o) const {
    return make(num * o.num, den * o.den);
  }
  bool operator==(const Rational& o) const {
    return num == o.num && den == o.den;
  }
};

void check_window(double gap, double C, bool needs_log) {
  if (!(C > 0.0)) throw std::domain_error("envelope: C must be positive");
  if (!(gap > 0.0) || !(gap < 1.0 / C)) {
    throw std::domain_error(
        "envelope: t outside the validity window 0 < T_star - t < 1/C = " +
        std::to_string(1.0 / C));
  }
  if (needs_log && !(gap < 1.0)) {
    throw std::domain_error(
        "envelope: log correction requires T_star - t < 1");
  }
}

}  // namespace

ExponentParams exponents(double p) {
  if (!(p > 4.0)) {
    throw std::domain_error("exponents: requires p > 4");
  }
  ExponentParams e;
  e.p = p;
  e.alpha = 5.0 / (7.0 - 6.0 / p);
  e.gamma = (7.0 * p - 3.0) / (2.0 * p + 3.0);
  e.theta1 = (6.0 - 3.0 * p) / (6.0 - 7.0 * p);
  e.theta2 = (6.0 - 5.0 * p) / (6.0 - 7.0 * p);
  return e;
}

ChainExponents chain_exponents(int k) {
  if (k < 2) throw std::domain_error("chain_exponents: requires k >= 2");
  ChainExponents c;
  c.k = k;
  c.p.reserve(k + 1);
  for (int j = 0; j < k; ++j) {
    c.p.push_back(2.0 * (k + 1) / (k - j));
  }
  c.p.push_back(std::numeric_limits<double>::infinity());
  return c;
}

double chain_identity(int k) {
  if (k < 2) throw std::domain_error("chain_identity: requires k >= 2");
  // 1/alpha at p = 2(k+1), alpha = 5/(2k+3 - 6/p):
  //   1/alpha = ((2k+3) p - 6) / (5 p).
  const long long p_num = 2LL * (k + 1);
  const Rational inv_alpha =
      Rational::make((2LL * k + 3) * p_num - 6, 5 * p_num);
  const Rational lhs = Rational::make(k + 1, k) * inv_alpha;
  const Rational rhs = Rational::make(2LL * k + 5, 5);
  if (!(lhs == rhs)) {
    throw std::logic_error("chain_identity: rational check failed at k = " +
                           std::to_string(k));
  }
  return static_cast<double>(rhs.num) / static_cast<double>(rhs.den);
}

double objective_F(double p, double L) {
  if (!(p > 4.0)) throw std::domain_error("objective_F: requires p > 4");
  if (!(L > 0.0)) throw std::domain_error("objective_F: requires L > 0");
  return -(24.0 / 5.0) * std::log(p) - 6.0 * L / (5.0 * p);
}

double optimal_p(double L) {
  if (!(L > 0.0)) throw std::domain_error("optimal_p: requires L > 0");
  return std::max(L / 4.0, 4.0 + 1e-6);
}

double envelope_first_at_gap(double gap, const EnvelopeParams& ep) {
  check_window(gap, ep.C, ep.rho != 0.0);
  const double L = -std::log(gap);
  double log_value = -std::log(ep.C) - (7.0 / 5.0) * std::log(gap);
  if (ep.rho != 0.0) log_value -= ep.rho * std::log(L);
  return std::exp(log_value);
}

double envelope_higher_at_gap(double gap, const EnvelopeParams& ep) {
  if (ep.k < 2) throw std::domain_error("envelope_higher: requires k >= 2");
  check_window(gap, ep.C, false);
  const double exponent = 2.0 * ep.k / 5.0 + 1.0;
  return std::exp(-std::log(ep.C) - exponent * std::log(gap));
}

double raw_lower_bound_at_gap(double gap, double p, double C) {
  if (!(p > 4.0)) throw std::domain_error("raw_lower_bound: requires p > 4");
  if (!(gap > 0.0)) {
    throw std::domain_error("raw_lower_bound: requires T_star - t > 0");
  }
  if (!(C > 0.0)) throw std::domain_error("raw_lower_bound: C must be > 0");
  const ExponentParams e = exponents(p);
  const double log_first =
      (-std::log(C) - 2.0 * (1.0 + e.alpha) * std::log(p) - std::log(gap)) /
      e.alpha;
  return std::exp(log_first) -
         std::exp(2.0 * (e.gamma - 1.0) * std::log(p));
}

double envelope_first(double t, const EnvelopeParams& ep) {
  if (!(ep.T_star > 0.0)) {
    throw std::domain_error("envelope: T_star must be positive");
  }
  return envelope_first_at_gap(ep.T_star - t, ep);
}

double envelope_higher(double t, const EnvelopeParams& ep) {
  if (!(ep.T_star > 0.0)) {
    throw std::domain_error("envelope: T_star must be positive");
  }
  return envelope_higher_at_gap(ep.T_star - t, ep);
}

double raw_lower_bound(double t, double p, double T_star, double C) {
  return raw_lower_bound_at_gap(T_star - t, p, C);
}

}  // namespace blowup
