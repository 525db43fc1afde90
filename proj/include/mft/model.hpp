#pragma once

#include <cmath>
#include <span>
#include <stdexcept>

#include "mft/params.hpp"
#include "mft/quadrature.hpp"

namespace mft {

// Per-person reward paid to a team of size z that completes at rank r:
//   G_z(r) = K (1+p) (1-r)^p z^{-eps}.
// Decreasing in r; the bottom rank earns nothing. Zero-size teams earn
// nothing by convention and are rejected here (callers handle z = 0).
inline double reward(const ModelParams& P, TeamSize z, RankFraction r) {
  if (!(z.value > 0.0))
    throw std::domain_error("reward: team size must be positive");
  return P.K * (1.0 + P.p) * std::pow(1.0 - r.value, P.p) *
         std::pow(z.value, -P.eps);
}

// Fraction of teams that have completed by time t when every team runs the
// given jump intensity. The state equation rho' = C (1-rho)^{q+1}, rho(0)=0
// has the closed solution 1 - (1 + qCt)^{-1/q}. Zero intensity freezes the
// state; rho(inf) := 1.
inline double rho_closed_form(const PowerProfile& intensity, double t) {
  if (std::isnan(t) || t < 0.0)
    throw std::domain_error("rho_closed_form: time must be >= 0");
  if (intensity.is_zero()) return 0.0;
  if (std::isinf(t)) return 1.0;
  const double q = intensity.exponent;
  return -std::expm1(-std::log1p(q * intensity.coeff * t) / q);
}

// Integrated hazard of the completion time:
//   Lambda(t) = int_0^t intensity(rho(s)) ds = log(1 + qCt) / q.
inline double cumulative_intensity(const PowerProfile& intensity, double t) {
  if (std::isnan(t) || t < 0.0)
    throw std::domain_error("cumulative_intensity: time must be >= 0");
  if (intensity.is_zero()) return 0.0;
  if (std::isinf(t)) return inf;
  const double q = intensity.exponent;
  return std::log1p(q * intensity.coeff * t) / q;
}

// Inverse of cumulative_intensity. With zero intensity a positive level is
// never reached: the jump never occurs and the result is +infinity.
inline double invert_cumulative(const PowerProfile& intensity, double level) {
  if (std::isnan(level) || level < 0.0)
    throw std::domain_error("invert_cumulative: level must be >= 0");
  if (intensity.is_zero()) return level == 0.0 ? 0.0 : inf;
  const double q = intensity.exponent;
  return std::expm1(q * level) / (q * intensity.coeff);
}

// Best response effort of a representative member when her co-workers use
// the same rule: alpha_z(r) = (1-beta) z G_z(r) / (2 c_eff), a power profile
// with coefficient (1-beta) K (1+p) z^{1-eps} / (2 c_eff). The effective
// cost is c for self-organized teams, c/(1-theta) under a manager, or the
// harmonic mean cost for heterogeneous members. Size zero maps to the zero
// profile.
inline PowerProfile best_response_effort(const ModelParams& P, TeamSize z,
                                         double effective_cost) {
  if (!(effective_cost > 0.0))
    throw std::domain_error("best_response_effort: effective cost must be > 0");
  if (z.value == 0.0) return PowerProfile(0.0, P.p);
  const double coeff = (1.0 - P.beta) * P.K * (1.0 + P.p) *
                       std::pow(z.value, 1.0 - P.eps) / (2.0 * effective_cost);
  return PowerProfile(coeff, P.p);
}

// Member value when the rest of the population never moves (zero intensity):
// the state is frozen at r and the value reduces to (1+beta)/2 * G_z(r).
inline double zero_lambda_value(const ModelParams& P, TeamSize z,
                                RankFraction r) {
  if (!(z.value > 0.0))
    throw std::domain_error("zero_lambda_value: team size must be positive");
  if (!(r.value < 1.0))
    throw std::domain_error("zero_lambda_value: rank must be < 1");
  return 0.5 * (1.0 + P.beta) * reward(P, z, r);
}

// Equilibrium value of a team member at state r for a team of size z when
// all other teams run the intensity profile `lambda`:
//
//   V(r) = (1-beta^2)/(4c) K^2 (1+p)^2 z^{2-2eps}
//          * int_r^1 (1-x)^{2p-1}/lambda(x)
//            * exp(-K(1+p)(1-beta)/(2c) z^{2-eps}
//                  int_r^x (1-y)^{p-1}/lambda(y) dy) dx.
//
// The outer integrand behaves like a power of (1-x) near x = 1; the
// substitution u = (1-x)^s with s = 2p - lambda.exponent maps it to a
// bounded integrand on [0, (1-r)^s], which adaptive Simpson then handles.
// The inner integral is evaluated in closed form for the power family.
// Admissibility requires s > 0.
inline double member_value(const ModelParams& P, const PowerProfile& lambda,
                           TeamSize z, RankFraction r, double effective_cost) {
  if (!(z.value > 0.0))
    throw std::domain_error("member_value: team size must be positive");
  if (!(effective_cost > 0.0))
    throw std::domain_error("member_value: effective cost must be > 0");
  if (r.value >= 1.0) return 0.0;  // boundary condition V(1) = 0
  if (lambda.is_zero()) return zero_lambda_value(P, z, r);

  const double p = P.p;
  const double s = 2.0 * p - lambda.exponent;
  if (!(s > 0.0))
    throw std::domain_error(
        "member_value: intensity profile not admissible for this reward "
        "convexity");

  const double c = effective_cost;
  const double L = lambda.coeff;
  const double one_minus_r = 1.0 - r.value;
  // Drift rate of the damping exponential, inner 1/lambda folded in.
  const double drift = P.K * (1.0 + p) * (1.0 - P.beta) *
                       std::pow(z.value, 2.0 - P.eps) / (2.0 * c * L);
  const double b = p - lambda.exponent;
  const double log_omr = std::log(one_minus_r);

  auto damping = [&](double u) -> double {
    if (u <= 0.0) {
      // x -> 1 endpoint: the inner integral diverges unless b > 0.
      return b > 0.0 ? std::exp(-drift * std::pow(one_minus_r, b) / b) : 0.0;
    }
    const double log_omx = std::log(u) / s;
    const double d = log_omr - log_omx;  // >= 0
    const double inner =
        b == 0.0 ? d : std::exp(b * log_omx) * std::expm1(b * d) / b;
    return std::exp(-drift * inner);
  };

  // Absolute tolerance scaled by the domain width so the tiny integrals
  // near r = 1 (or for large p) are still resolved to relative accuracy.
  const double u_max = std::pow(one_minus_r, s);
  const double integral = integrate_adaptive_simpson(damping, 0.0, u_max,
                                                     1e-10, 1e-14 * u_max, 60);
  const double kp = P.K * (1.0 + p);
  const double prefactor = (1.0 - P.beta * P.beta) * kp * kp *
                           std::pow(z.value, 2.0 - 2.0 * P.eps) /
                           (4.0 * c * L * s);
  return prefactor * integral;
}

// Closed form of member_value at the symmetric equilibrium intensity
// lambda = z * alpha_z:  V(r) = K (1+beta)/2 * z^{-eps} (1-r)^p.
// At r = 0 this is the expected equilibrium payoff of a team member.
inline double symmetric_member_value(const ModelParams& P, TeamSize z,
                                     RankFraction r) {
  if (!(z.value > 0.0))
    throw std::domain_error("symmetric_member_value: team size must be positive");
  return 0.5 * P.K * (1.0 + P.beta) * std::pow(z.value, -P.eps) *
         std::pow(1.0 - r.value, P.p);
}

// One member class of a heterogeneous team: effort cost coefficient and the
// mass of members carrying it.
struct CostShare {
  double cost;
  double weight;
};

// Harmonic effective cost: 1/c_bar is the weighted average of 1/c_j. A team
// whose members have heterogeneous effort costs behaves like a homogeneous
// team with coefficient c_bar.
inline double effective_cost_harmonic(std::span<const CostShare> shares) {
  if (shares.empty())
    throw std::domain_error("effective_cost_harmonic: empty cost distribution");
  double total_weight = 0.0;
  double reciprocal = 0.0;
  for (const CostShare& s : shares) {
    if (!(s.cost > 0.0) || !std::isfinite(s.cost))
      throw std::domain_error("effective_cost_harmonic: costs must be > 0");
    if (!(s.weight >= 0.0) || !std::isfinite(s.weight))
      throw std::domain_error("effective_cost_harmonic: weights must be >= 0");
    total_weight += s.weight;
    reciprocal += s.weight / s.cost;
  }
  if (!(total_weight > 0.0))
    throw std::domain_error(
        "effective_cost_harmonic: weights must sum to a positive total");
  return total_weight / reciprocal;
}

}  // namespace mft
