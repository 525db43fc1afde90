#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "mft/model.hpp"
#include "mft/parallel.hpp"
#include "mft/params.hpp"

namespace mft {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

// Unit-rate exponential draw for one team, from a substream indexed by
// (seed, team). Results depend only on the pair, never on scheduling.
inline double unit_exponential_draw(std::uint64_t seed, std::uint64_t team) {
  const std::uint64_t bits =
      detail::splitmix64(seed + 0x9e3779b97f4a7c15ULL * team);
  const double u = (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
  return -std::log(u);  // u in (0,1), so the draw is finite and positive
}

struct SimulationConfig {
  std::uint64_t n_teams;
  std::uint64_t seed;
  ModelParams params;
  TeamSize z;                     // > 0
  PowerProfile intensity;         // team-level jump intensity, coeff > 0
  double member_deviation = 1.0;  // probe member's effort multiplier
};

// One team's draw: the unit exponential, the completion time it maps to
// under the cumulative intensity, and the uniform rank it lands at.
struct SimulationDraw {
  double z_exp;
  double tau;
  double rank;
};

inline SimulationDraw simulate_team(const SimulationConfig& cfg,
                                    std::uint64_t team) {
  const double z_exp = unit_exponential_draw(cfg.seed, team);
  return {z_exp, invert_cumulative(cfg.intensity, z_exp),
          -std::expm1(-z_exp)};
}

struct Estimate {
  double mean = 0.0;
  double std_error = std::numeric_limits<double>::quiet_NaN();
};

struct SimulationReport {
  std::uint64_t n_teams = 0;
  std::vector<double> completion_times;  // ascending; the empirical CDF
  double ks_distance_vs_rho = 0.0;
  Estimate team_reward;    // z^eps * G_z(rank), target K
  Estimate member_payoff;  // G_z(rank) - effort cost, target K(1+beta)/2 z^-eps
  Estimate effort_cost;
  Estimate probe_payoff;   // payoff of the member scaled by member_deviation
  bool std_errors_defined = false;  // false when n_teams < 2
};

namespace detail {

// Per-chunk accumulator over (reward, cost) moments. Per-member payoffs are
// deterministic functions of the team draw, so five moments determine the
// mean and standard error of every payoff linear in (G, cost).
struct SimMoments {
  double g = 0.0;
  double g2 = 0.0;
  double cost = 0.0;
  double cost2 = 0.0;
  double gcost = 0.0;

  void add(double gi, double ci) {
    g += gi;
    g2 += gi * gi;
    cost += ci;
    cost2 += ci * ci;
    gcost += gi * ci;
  }

  void merge(const SimMoments& o) {
    g += o.g;
    g2 += o.g2;
    cost += o.cost;
    cost2 += o.cost2;
    gcost += o.gcost;
  }
};

inline void validate(const SimulationConfig& cfg) {
  if (cfg.n_teams < 1)
    throw std::invalid_argument("simulation: n_teams must be >= 1");
  if (!(cfg.z.value > 0.0))
    throw std::invalid_argument("simulation: team size must be positive");
  if (!(cfg.intensity.coeff > 0.0))
    throw std::invalid_argument("simulation: intensity must be positive");
  if (!(cfg.member_deviation >= 0.0) || !std::isfinite(cfg.member_deviation))
    throw std::invalid_argument("simulation: deviation must be >= 0");
}

constexpr std::uint64_t kSimChunk = 1 << 16;

// Sweeps the team draws once, accumulating moments chunk by chunk in fixed
// chunk order; optionally records each completion time by index.
inline SimMoments accumulate_moments(const SimulationConfig& cfg,
                                     std::vector<double>* taus) {
  const ModelParams& P = cfg.params;
  const double z = cfg.z.value;
  const double member_effort = cfg.intensity.coeff / z;
  const double reward_scale =
      P.K * (1.0 + P.p) * std::pow(z, -P.eps);  // G_z(rank) = scale*e^{-pZ}
  // Closed-form effort cost of one member over [0, tau]:
  //   c * a / (p z) * (1 - e^{-pZ}),  a = member effort coefficient.
  const double cost_scale = P.c * member_effort / (P.p * z);

  const std::uint64_t n_chunks = (cfg.n_teams + kSimChunk - 1) / kSimChunk;
  std::vector<SimMoments> partials(n_chunks);
  if (taus) taus->resize(cfg.n_teams);

  for_each_chunk(cfg.n_teams, kSimChunk,
                 [&](std::uint64_t ci, std::uint64_t begin, std::uint64_t end) {
                   SimMoments local;
                   for (std::uint64_t i = begin; i < end; ++i) {
                     const double z_exp = unit_exponential_draw(cfg.seed, i);
                     const double decay = std::exp(-P.p * z_exp);
                     local.add(reward_scale * decay,
                               cost_scale * (1.0 - decay));
                     if (taus)
                       (*taus)[i] = invert_cumulative(cfg.intensity, z_exp);
                   }
                   partials[ci] = local;
                 });

  SimMoments total;
  for (const SimMoments& m : partials) total.merge(m);
  return total;
}

inline Estimate estimate_from(double sum, double sumsq, std::uint64_t n) {
  Estimate e;
  e.mean = sum / static_cast<double>(n);
  if (n >= 2) {
    const double nn = static_cast<double>(n);
    const double var = std::fmax(0.0, (sumsq - nn * e.mean * e.mean) / (nn - 1.0));
    e.std_error = std::sqrt(var / nn);
  }
  return e;
}

// Payoff w1*G - w2*cost: mean and standard error from the joint moments.
inline Estimate linear_payoff_estimate(const SimMoments& m, std::uint64_t n,
                                       double w1, double w2) {
  const double sum = w1 * m.g - w2 * m.cost;
  const double sumsq =
      w1 * w1 * m.g2 + w2 * w2 * m.cost2 - 2.0 * w1 * w2 * m.gcost;
  return estimate_from(sum, sumsq, n);
}

}  // namespace detail

inline double empirical_rho_check(const SimulationReport& report,
                                  const PowerProfile& intensity);

// Samples every team's completion time by exact inverse-CDF transform of a
// unit exponential and reports per-member payoff statistics. Deterministic
// for a fixed (seed, n_teams) regardless of worker count.
inline SimulationReport run_simulation(const SimulationConfig& cfg) {
  detail::validate(cfg);
  const ModelParams& P = cfg.params;

  std::vector<double> taus;
  const detail::SimMoments m = detail::accumulate_moments(cfg, &taus);
  const std::uint64_t n = cfg.n_teams;

  SimulationReport report;
  report.n_teams = n;
  report.completion_times = std::move(taus);
  std::sort(report.completion_times.begin(), report.completion_times.end());
  report.std_errors_defined = n >= 2;

  const double zeps = std::pow(cfg.z.value, P.eps);
  report.team_reward =
      detail::estimate_from(zeps * m.g, zeps * zeps * m.g2, n);
  report.member_payoff = detail::linear_payoff_estimate(m, n, 1.0, 1.0);
  report.effort_cost = detail::linear_payoff_estimate(m, n, 0.0, -1.0);
  const double dev = cfg.member_deviation;
  report.probe_payoff = detail::linear_payoff_estimate(
      m, n, P.beta + (1.0 - P.beta) * dev, dev * dev);
  report.ks_distance_vs_rho = empirical_rho_check(report, cfg.intensity);
  return report;
}

// Sup-distance between the empirical completion-time CDF and the mean-field
// prediction, over a 1000-point grid of model quantiles.
inline double empirical_rho_check(const SimulationReport& report,
                                  const PowerProfile& intensity) {
  if (report.completion_times.empty())
    throw std::invalid_argument("empirical_rho_check: empty report");
  const auto& times = report.completion_times;
  const double n = static_cast<double>(times.size());
  double ks = 0.0;
  constexpr int kGrid = 1000;
  for (int j = 1; j <= kGrid; ++j) {
    const double r = static_cast<double>(j) / (kGrid + 1);
    const double t = invert_cumulative(intensity, -std::log1p(-r));
    const double model = rho_closed_form(intensity, t);
    const auto it = std::upper_bound(times.begin(), times.end(), t);
    const double empirical =
        static_cast<double>(it - times.begin()) / n;
    ks = std::fmax(ks, std::abs(empirical - model));
  }
  return ks;
}

struct DeviationPoint {
  double multiplier;
  Estimate payoff;
};

// Expected payoff of a probe member scaling her effort by each multiplier
// while the rest of the team stays at the baseline. A single member leaves
// the team intensity unchanged, so one sweep of draws prices every
// multiplier: payoff(m) = G * (beta + (1-beta) m) - m^2 * cost.
inline std::vector<DeviationPoint> deviation_payoff_scan(
    const SimulationConfig& cfg, std::span<const double> multipliers) {
  detail::validate(cfg);
  if (multipliers.empty())
    throw std::invalid_argument("deviation_payoff_scan: empty multiplier list");
  bool has_one = false;
  for (double m : multipliers) {
    if (!(m >= 0.0) || !std::isfinite(m))
      throw std::invalid_argument(
          "deviation_payoff_scan: multipliers must be >= 0");
    if (std::abs(m - 1.0) <= 1e-12) has_one = true;
  }
  if (!has_one)
    throw std::invalid_argument(
        "deviation_payoff_scan: multipliers must include 1");

  const detail::SimMoments moments = detail::accumulate_moments(cfg, nullptr);
  const double beta = cfg.params.beta;
  std::vector<DeviationPoint> out;
  out.reserve(multipliers.size());
  for (double m : multipliers) {
    out.push_back({m, detail::linear_payoff_estimate(
                          moments, cfg.n_teams,
                          beta + (1.0 - beta) * m, m * m)});
  }
  return out;
}

}  // namespace mft
