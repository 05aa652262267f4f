#pragma once

#include <vector>

namespace blowup {

/// Exponent bookkeeping for the p-dependent interpolation constants.
struct ExponentParams {
  double p = 0.0;
  double alpha = 0.0;   // 5 / (7 - 6/p)
  double gamma = 0.0;   // (7p - 3) / (2p + 3)
  double theta1 = 0.0;  // (6 - 3p) / (6 - 7p)
  double theta2 = 0.0;  // (6 - 5p) / (6 - 7p)
};

/// Parameters of the lower-bound envelope formulas.
struct EnvelopeParams {
  double T_star = 1.0;
  double C = 1.0;    // > 0; formulas valid only for T_star - t < 1/C
  double rho = 24.0 / 5.0;  // log-correction power (first-order envelope)
  int k = 2;         // derivative order (higher-order envelope)
};

/// p_j = 2(k+1)/(k-j) for j = 0..k-1 and p_k = infinity.
struct ChainExponents {
  int k = 2;
  std::vector<double> p;  // size k+1
};

/// Evaluates all four exponent formulas; requires p > 4.
ExponentParams exponents(double p);

ChainExponents chain_exponents(int k);

/// ((k+1)/k) * (1/alpha_k) with alpha = 5/(2k+3-6/p) at p = 2(k+1),
/// verified equal to 2k/5 + 1 in exact rational arithmetic; returns the
/// common value.
double chain_identity(int k);

/// log F(p, L) = -(24/5) log p - 6 L / (5 p); the p-profile whose maximum
/// locates the optimal Lebesgue exponent.  Requires p > 4, L > 0.
double objective_F(double p, double L);

/// Closed-form maximizer of F: max(L/4, 4 + 1e-6).  The clamp pins the
/// value to the admissible domain boundary when L <= 4*(4 + 1e-6).
double optimal_p(double L);

/// 1 / (C (T_star - t)^{7/5} log^rho(1/(T_star - t))), evaluated in log
/// space.  Requires 0 < T_star - t < 1/C, and additionally T_star - t < 1
/// when rho != 0 so the log power is defined.
double envelope_first(double t, const EnvelopeParams& ep);

/// 1 / (C (T_star - t)^{2k/5 + 1}) for k >= 2, same validity window.
double envelope_higher(double t, const EnvelopeParams& ep);

/// Pre-optimization bound
///   (1 / (C p^{2(1+alpha)} (T_star - t)))^{1/alpha} - p^{2(gamma-1)},
/// first term in log space (may overflow to +inf honestly near T_star).
double raw_lower_bound(double t, double p, double T_star, double C);

// Gap-based entry points for the same three formulas.  T_star - t
// underflows against T_star once it drops below T_star * 2^-53, so tables
// probing gaps like e^{-100} must supply the gap directly.
double envelope_first_at_gap(double gap, const EnvelopeParams& ep);
double envelope_higher_at_gap(double gap, const EnvelopeParams& ep);
double raw_lower_bound_at_gap(double gap, double p, double C);

}  // namespace blowup
