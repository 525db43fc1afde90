#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mft/model.hpp"
#include "mft/params.hpp"
#include "mft/roots.hpp"

namespace mft {

// Attached to every outcome whose classification could not be backed by a
// known sufficient condition, and to failed numeric verifications.
struct Diagnostics {
  std::string reason;
  std::vector<std::pair<double, double>> numeric_scan;  // (z, objective)
  std::optional<double> best_candidate;
};

struct VerifyResult {
  bool passed;
  Diagnostics diagnostics;
};

// ---------------------------------------------------------------------------
// Manager regime
// ---------------------------------------------------------------------------

struct ManagerOutcome {
  enum class Kind { ZeroTeam, Interior, NoEquilibrium };

  struct Interior {
    double z_star;
    PowerProfile effort;
    double v_manager;
    double v_worker;
  };

  Kind kind;
  std::optional<Interior> interior;  // set iff kind == Interior
};

// Expected rank reward of a team of size z whose members play their
// equilibrium effort while the population runs the size-z_star equilibrium
// intensity:
//   E[G_z(rho(tau))] = K (1+p) z^{-eps} [1 + p (z/z_star)^{eps-2}]^{-1}.
// At z = z_star the bracket is 1+p and the average team reward equals the
// pie: z^{eps} E[G] = K.
inline double expected_rank_reward(const ModelParams& P, TeamSize z,
                                   TeamSize z_star) {
  if (!(z.value > 0.0) || !(z_star.value > 0.0))
    throw std::domain_error("expected_rank_reward: sizes must be positive");
  const double ratio = std::pow(z.value / z_star.value, P.eps - 2.0);
  return P.K * (1.0 + P.p) * std::pow(z.value, -P.eps) /
         (1.0 + P.p * ratio);
}

// The manager's payoff from assembling a team of size z when the population
// equilibrium size is z_star. Not assembling (z = 0) pays zero.
inline double manager_objective(const ModelParams& P, TeamSize z,
                                TeamSize z_star) {
  if (!(z_star.value > 0.0))
    throw std::domain_error("manager_objective: z_star must be positive");
  if (z.value == 0.0) return 0.0;
  const double ratio = std::pow(z.value / z_star.value, P.eps - 2.0);
  return P.theta * P.K * (1.0 + P.p) / (1.0 + P.p * ratio) - P.kappa0 -
         P.size_cost(z.value);
}

// Trichotomy over the manager-selected equilibrium team size:
//  - K (1+p) theta <= kappa0: not assembling is the unique equilibrium.
//  - [1 - kappa0/(K theta)] delta >= (2-eps) p/(1+p): the unique positive
//    equilibrium size is [K theta p (2-eps) / (k delta (1+p))]^{1/delta}.
//  - otherwise no equilibrium exists.
inline ManagerOutcome manager_equilibrium(const ModelParams& P) {
  if (P.K * (1.0 + P.p) * P.theta <= P.kappa0 + boundary_tol)
    return {ManagerOutcome::Kind::ZeroTeam, std::nullopt};

  const double lhs = (1.0 - P.kappa0 / (P.K * P.theta)) * P.delta;
  const double rhs = (2.0 - P.eps) * P.p / (1.0 + P.p);
  if (lhs >= rhs - boundary_tol) {
    const double z = std::pow(
        P.K * P.theta * P.p * (2.0 - P.eps) / (P.k * P.delta * (1.0 + P.p)),
        1.0 / P.delta);
    const double c_tilde = P.c / (1.0 - P.theta);
    ManagerOutcome::Interior sol{
        z, best_response_effort(P, TeamSize(z), c_tilde),
        P.K * P.theta - P.kappa0 - P.size_cost(z),
        0.5 * P.K * (1.0 - P.theta) * (1.0 + P.beta) * std::pow(z, -P.eps)};
    return {ManagerOutcome::Kind::Interior, sol};
  }
  return {ManagerOutcome::Kind::NoEquilibrium, std::nullopt};
}

namespace detail {

inline std::vector<double> log_grid(double lo, double hi, int n) {
  std::vector<double> g(static_cast<std::size_t>(n));
  const double llo = std::log(lo);
  const double lhi = std::log(hi);
  for (int i = 0; i < n; ++i)
    g[static_cast<std::size_t>(i)] =
        std::exp(llo + (lhi - llo) * i / (n - 1.0));
  return g;
}

// Shared grid-dominance check: candidate_value must dominate the objective
// over a 2000-point log grid spanning three decades either side of z_star,
// as well as the supplied boundary values, within 1e-9 relative slack.
template <class Objective>
VerifyResult grid_dominates(Objective&& obj, double z_star,
                            double candidate_value,
                            std::span<const double> boundary_values) {
  constexpr int kGridPoints = 2000;
  const double slack =
      1e-9 * std::fmax(std::abs(candidate_value), 1e-12);
  VerifyResult result{true, {}};
  double best_z = z_star;
  double best_value = candidate_value;
  for (double z : log_grid(z_star * 1e-3, z_star * 1e3, kGridPoints)) {
    const double v = obj(z);
    result.diagnostics.numeric_scan.emplace_back(z, v);
    if (v > best_value) {
      best_value = v;
      best_z = z;
    }
    if (v > candidate_value + slack) result.passed = false;
  }
  for (double v : boundary_values) {
    if (v > candidate_value + slack) {
      result.passed = false;
      if (v > best_value) best_value = v;
    }
  }
  result.diagnostics.best_candidate = best_z;
  result.diagnostics.reason =
      result.passed ? "global_max_at_candidate" : "candidate_dominated";
  return result;
}

}  // namespace detail

// Numeric replacement for the symbolic global-maximum analysis of the
// manager's objective: scans J^m(.; z_star) over a log grid and checks that
// z_star dominates, including the z = 0 option which pays zero.
inline VerifyResult verify_manager_global_max(const ModelParams& P,
                                              TeamSize z_star) {
  auto obj = [&](double z) {
    return manager_objective(P, TeamSize(z), z_star);
  };
  const double boundary[] = {0.0};  // J^m(0) = 0, and J^m(0+) = -kappa0 <= 0
  return detail::grid_dominates(obj, z_star.value,
                                manager_objective(P, z_star, z_star),
                                boundary);
}

// ---------------------------------------------------------------------------
// Central planner regime
// ---------------------------------------------------------------------------

struct PlannerOutcome {
  enum class Kind {
    NoOptimum,        // supremum approached at a boundary, never attained
    UniqueZero,
    UniquePositive,
    ZeroAndPositive,  // zero and the positive stationary size tie
    AnyNonnegative,
    AnyPositive,
    Unclassified
  };
  enum class Limit { ZeroPlus, Infinity };

  struct Positive {
    double z_star;
    double v_central;
    std::optional<PowerProfile> effort;
  };

  Kind kind;
  std::optional<Limit> limit;      // set iff kind == NoOptimum
  std::optional<Positive> positive;
  std::optional<Diagnostics> diagnostics;
};

// Average member welfare net of per-capita size costs at unified size z > 0:
//   h(z) = K (1+beta)/2 z^{-eps} - kappa0 / z - k z^{delta-1}.
inline double planner_objective(const ModelParams& P, TeamSize z) {
  if (!(z.value > 0.0))
    throw std::domain_error("planner_objective: team size must be positive");
  return 0.5 * P.K * (1.0 + P.beta) * std::pow(z.value, -P.eps) -
         P.kappa0 / z.value - P.k * std::pow(z.value, P.delta - 1.0);
}

namespace detail {

inline Diagnostics scan_planner_objective(const ModelParams& P) {
  Diagnostics diag;
  double best_z = 0.0;
  double best_v = -inf;
  for (double z : log_grid(1e-4, 1e4, 400)) {
    const double v = planner_objective(P, TeamSize(z));
    diag.numeric_scan.emplace_back(z, v);
    if (v > best_v) {
      best_v = v;
      best_z = z;
    }
  }
  diag.best_candidate = best_z;
  return diag;
}

inline PlannerOutcome planner_unclassified(const ModelParams& P,
                                           std::string reason) {
  Diagnostics diag = scan_planner_objective(P);
  diag.reason = std::move(reason);
  return {PlannerOutcome::Kind::Unclassified, std::nullopt, std::nullopt,
          std::move(diag)};
}

}  // namespace detail

// Exhaustive classification of the planner's optimal unified team size.
// The pure schemes eps = 0 and eps = 1 are classified exhaustively;
// for mixed eps only the two regimes known to admit a unique positive
// optimum are classified, and the computed optimum is re-verified by a grid
// scan before being asserted. Everything else is Unclassified.
inline PlannerOutcome central_planner_optimum(const ModelParams& P) {
  using Kind = PlannerOutcome::Kind;
  using Limit = PlannerOutcome::Limit;
  const double gain = 0.5 * P.K * (1.0 + P.beta);  // K(1+beta)/2

  if (P.eps <= boundary_tol) {
    // Public good allocation scheme.
    if (P.delta < 1.0 - boundary_tol)
      return {Kind::NoOptimum, Limit::Infinity, std::nullopt, std::nullopt};
    if (std::abs(P.delta - 1.0) <= boundary_tol) {
      if (P.kappa0 > boundary_tol) {
        if (gain <= P.k + boundary_tol)
          return {Kind::UniqueZero, std::nullopt, std::nullopt, std::nullopt};
        return {Kind::NoOptimum, Limit::Infinity, std::nullopt, std::nullopt};
      }
      if (gain < P.k - boundary_tol)
        return {Kind::UniqueZero, std::nullopt, std::nullopt, std::nullopt};
      if (gain <= P.k + boundary_tol)
        return {Kind::AnyNonnegative, std::nullopt, std::nullopt,
                std::nullopt};
      return {Kind::AnyPositive, std::nullopt, std::nullopt, std::nullopt};
    }
    // delta > 1
    if (P.kappa0 <= boundary_tol)
      return {Kind::NoOptimum, Limit::ZeroPlus, std::nullopt, std::nullopt};
    const double z = std::pow(P.kappa0 / (P.k * (P.delta - 1.0)),
                              1.0 / P.delta);
    const double threshold =
        P.kappa0 * P.delta / (P.delta - 1.0) *
        std::pow(P.kappa0 / (P.k * (P.delta - 1.0)), -1.0 / P.delta);
    if (gain > threshold + boundary_tol) {
      PlannerOutcome::Positive sol{z, planner_objective(P, TeamSize(z)),
                                   best_response_effort(P, TeamSize(z), P.c)};
      return {Kind::UniquePositive, std::nullopt, sol, std::nullopt};
    }
    if (gain >= threshold - boundary_tol) {
      PlannerOutcome::Positive sol{z, planner_objective(P, TeamSize(z)),
                                   std::nullopt};
      return {Kind::ZeroAndPositive, std::nullopt, sol, std::nullopt};
    }
    return {Kind::UniqueZero, std::nullopt, std::nullopt, std::nullopt};
  }

  if (P.eps >= 1.0 - boundary_tol) {
    // Budget allocation scheme: the per-member reward cannot beat the
    // per-capita cost, so teams are never worth assembling.
    if (P.kappa0 >= gain - boundary_tol)
      return {Kind::UniqueZero, std::nullopt, std::nullopt, std::nullopt};
    return {Kind::NoOptimum, Limit::ZeroPlus, std::nullopt, std::nullopt};
  }

  // Mixed allocation scheme, 0 < eps < 1.
  const bool case_a = P.delta < 1.0 - boundary_tol &&
                      P.eps + P.delta < 1.0 - boundary_tol &&
                      P.kappa0 <= boundary_tol;
  const bool case_b = P.delta >= 1.0 - boundary_tol &&
                      P.kappa0 > boundary_tol &&
                      gain > P.k + P.kappa0 + boundary_tol;
  if (!case_a && !case_b)
    return detail::planner_unclassified(P, "mixed_eps_outside_known_cases");

  double z = 0.0;
  if (case_a) {
    z = std::pow(P.eps * gain / ((1.0 - P.delta) * P.k),
                 1.0 / (P.delta + P.eps - 1.0));
  } else {
    // Unique positive root of -eps K(1+beta)/2 z^{1-eps} + kappa0
    //                          - k (delta-1) z^delta = 0.
    auto g = [&](double x) {
      return -P.eps * gain * std::pow(x, 1.0 - P.eps) + P.kappa0 -
             P.k * (P.delta - 1.0) * std::pow(x, P.delta);
    };
    auto dg = [&](double x) {
      return -P.eps * (1.0 - P.eps) * gain * std::pow(x, -P.eps) -
             P.k * P.delta * (P.delta - 1.0) * std::pow(x, P.delta - 1.0);
    };
    double lo = 1.0;
    while (g(lo) <= 0.0 && lo > 1e-300) lo *= 0.5;
    if (g(lo) <= 0.0) {
      // For eps extremely close to 1 the positive root can sit below the
      // smallest representable double; refuse to assert it.
      return detail::planner_unclassified(P, "optimum_below_numeric_range");
    }
    double hi = 1.0;
    while (g(hi) >= 0.0 && hi < 1e300) hi *= 2.0;
    z = find_root(g, dg, lo, hi).x;
  }

  PlannerOutcome::Positive sol{z, planner_objective(P, TeamSize(z)),
                               best_response_effort(P, TeamSize(z), P.c)};

  // The uniqueness claims for the mixed scheme are stated without proof
  // details; re-verify the optimum numerically before asserting it.
  auto obj = [&](double x) { return planner_objective(P, TeamSize(x)); };
  const double boundary[] = {0.0};  // value of not assembling
  VerifyResult check =
      detail::grid_dominates(obj, z, sol.v_central, boundary);
  if (!check.passed) {
    check.diagnostics.reason = "mixed_eps_grid_scan_disagrees";
    return {Kind::Unclassified, std::nullopt, std::nullopt,
            std::move(check.diagnostics)};
  }
  return {Kind::UniquePositive, std::nullopt, sol, std::nullopt};
}

// Grid verification that z_star is the planner's global optimum, against
// the analytic boundary limits of h and the z = 0 option.
inline VerifyResult verify_planner_global_max(const ModelParams& P,
                                              TeamSize z_star) {
  if (!(z_star.value > 0.0))
    throw std::domain_error("verify_planner_global_max: z_star must be > 0");
  auto obj = [&](double z) { return planner_objective(P, TeamSize(z)); };
  // h(0+) is -inf whenever kappa0 > 0 (and for eps + delta < 1 when
  // kappa0 = 0); h(inf) is -inf for delta > 1 and 0 for delta < 1 limits.
  std::vector<double> boundary{0.0};
  if (P.kappa0 == 0.0 && P.eps == 0.0) {
    // h(0+) = K(1+beta)/2 - lim k z^{delta-1}
    if (P.delta > 1.0)
      boundary.push_back(0.5 * P.K * (1.0 + P.beta));
    else if (P.delta == 1.0)
      boundary.push_back(0.5 * P.K * (1.0 + P.beta) - P.k);
  }
  if (P.delta < 1.0)
    boundary.push_back(P.eps == 0.0 ? 0.5 * P.K * (1.0 + P.beta) : 0.0);
  return detail::grid_dominates(obj, z_star.value,
                                planner_objective(P, z_star), boundary);
}

// ---------------------------------------------------------------------------
// Partnership regime
// ---------------------------------------------------------------------------

struct PartnershipOutcome {
  enum class Kind { ZeroEquilibrium, UniquePositive, Unclassified };

  struct Positive {
    double z_star;
    double v_partner;
    PowerProfile effort;
  };

  Kind kind;
  std::optional<Positive> positive;
  std::optional<Diagnostics> diagnostics;
};

// Payoff of a size-z partnership team when the population equilibrium size
// is z_star:
//   H(z; z_star) = K(1+p)(1+beta) z^{2-2eps} / (2 z_star^{2-eps})
//                  * 1 / (p + (z/z_star)^{2-eps})  -  (kappa0 + k z^delta)/z.
// On the diagonal H(z; z) = K(1+beta)/2 z^{-eps} - (kappa0 + k z^delta)/z.
inline double partnership_objective(const ModelParams& P, TeamSize z,
                                    TeamSize z_star) {
  if (!(z.value > 0.0) || !(z_star.value > 0.0))
    throw std::domain_error("partnership_objective: sizes must be positive");
  const double ratio = std::pow(z.value / z_star.value, 2.0 - P.eps);
  const double gain = P.K * (1.0 + P.p) * (1.0 + P.beta) *
                      std::pow(z.value, 2.0 - 2.0 * P.eps) /
                      (2.0 * std::pow(z_star.value, 2.0 - P.eps) *
                       (P.p + ratio));
  return gain - (P.kappa0 + P.size_cost(z.value)) / z.value;
}

// Grid verification that the diagonal point z_star dominates H(.; z_star),
// including the z -> 0+ limit and the z = 0 option which pays zero.
inline VerifyResult verify_partnership_global_max(const ModelParams& P,
                                                  TeamSize z_star) {
  if (!(z_star.value > 0.0))
    throw std::domain_error(
        "verify_partnership_global_max: z_star must be > 0");
  auto obj = [&](double z) {
    return partnership_objective(P, TeamSize(z), z_star);
  };
  std::vector<double> boundary{0.0};
  if (P.kappa0 == 0.0) {
    // Without a fixed cost the z -> 0+ limit of H can be finite.
    double head = 0.0;
    if (P.eps == 1.0)
      head = P.K * (1.0 + P.p) * (1.0 + P.beta) /
             (2.0 * z_star.value * P.p);
    double tail;  // -k z^{delta-1} limit
    if (P.delta > 1.0)
      tail = 0.0;
    else if (P.delta == 1.0)
      tail = -P.k;
    else
      tail = -inf;
    boundary.push_back(head + tail);
  }
  return detail::grid_dominates(
      obj, z_star.value, partnership_objective(P, z_star, z_star), boundary);
}

namespace detail {

inline PartnershipOutcome partnership_unclassified(const ModelParams& P,
                                                   std::string reason) {
  Diagnostics diag;
  diag.reason = std::move(reason);
  double best_z = 0.0;
  double best_v = -inf;
  for (double z : log_grid(1e-4, 1e4, 400)) {
    const double v = partnership_objective(P, TeamSize(z), TeamSize(z));
    diag.numeric_scan.emplace_back(z, v);
    if (v > best_v) {
      best_v = v;
      best_z = z;
    }
  }
  diag.best_candidate = best_z;
  return {PartnershipOutcome::Kind::Unclassified, std::nullopt,
          std::move(diag)};
}

inline PartnershipOutcome partnership_positive(const ModelParams& P,
                                               double z, double v) {
  PartnershipOutcome::Positive sol{
      z, v, best_response_effort(P, TeamSize(z), P.c)};
  PartnershipOutcome out{PartnershipOutcome::Kind::UniquePositive, sol,
                         std::nullopt};
  // Uniqueness of the candidate is re-checked numerically before
  // the equilibrium is asserted.
  VerifyResult check = verify_partnership_global_max(P, TeamSize(z));
  if (!check.passed) {
    check.diagnostics.reason = "positive_candidate_failed_grid_check";
    return {PartnershipOutcome::Kind::Unclassified, std::nullopt,
            std::move(check.diagnostics)};
  }
  return out;
}

}  // namespace detail

// Classification of the partnership (public voting) equilibrium size.
// Only the pure allocation schemes eps = 0 and eps = 1 are covered by
// sufficient conditions; outside them the classifier refuses to guess.
inline PartnershipOutcome partnership_equilibrium(const ModelParams& P) {
  using Kind = PartnershipOutcome::Kind;
  const double team_gain = 0.5 * P.K * (1.0 + P.p) * (1.0 + P.beta);

  if (P.eps <= boundary_tol) {
    const bool zero_cost = P.kappa0 <= boundary_tol;
    // Zero-size equilibrium test. For delta < 1 the diagonal objective
    // increases towards the per-member team gain, which is positive, so
    // staying unassembled is never an equilibrium there.
    if (zero_cost || std::abs(P.delta - 1.0) <= boundary_tol) {
      if (std::abs(P.delta - 1.0) <= boundary_tol &&
          team_gain <= P.k + boundary_tol)
        return {Kind::ZeroEquilibrium, std::nullopt, std::nullopt};
    } else if (P.delta >= 2.0 - boundary_tol) {
      const double zero_score =
          std::pow(2.0, P.delta) * std::pow(P.kappa0, P.delta - 1.0) * P.k *
          std::pow(P.delta, P.delta) /
          (std::pow((1.0 + P.beta) * P.K * (1.0 + P.p), P.delta) *
           std::pow(P.delta - 1.0, P.delta - 1.0));
      if (zero_score >= 1.0 - boundary_tol)
        return {Kind::ZeroEquilibrium, std::nullopt, std::nullopt};
    }
    // Positive equilibrium: requires delta >= 3 and p >= 1/3.
    if (P.delta >= 3.0 - boundary_tol && P.p >= 1.0 / 3.0 - boundary_tol) {
      const double A = P.p * P.K * (1.0 + P.beta) / (1.0 + P.p);
      double z;
      if (zero_cost) {
        z = std::pow(A / (P.k * (P.delta - 1.0)), 1.0 / (P.delta - 1.0));
      } else {
        // gamma(x) = A x + k(1-delta) x^delta + kappa0 rises to its
        // stationary point then falls; the root lies beyond it.
        auto gamma = [&](double x) {
          return A * x + P.k * (1.0 - P.delta) * std::pow(x, P.delta) +
                 P.kappa0;
        };
        auto dgamma = [&](double x) {
          return A + P.k * P.delta * (1.0 - P.delta) *
                         std::pow(x, P.delta - 1.0);
        };
        const double x_peak =
            std::pow(A / (P.k * P.delta * (P.delta - 1.0)),
                     1.0 / (P.delta - 1.0));
        // gamma(x_peak) >= kappa0 > 0 in exact arithmetic; a non-positive
        // value here means the size scale overflowed double range.
        if (!std::isfinite(x_peak) || !(gamma(x_peak) > 0.0))
          return detail::partnership_unclassified(P,
                                                  "size_above_numeric_range");
        double hi = x_peak;
        while (gamma(hi) >= 0.0 && hi < 1e300) hi *= 2.0;
        z = find_root(gamma, dgamma, x_peak, hi, 1e-14, 3).x;
      }
      const double v = 0.5 * P.K * (1.0 + P.beta) - P.kappa0 / z -
                       P.k * std::pow(z, P.delta - 1.0);
      if (v >= -boundary_tol) return detail::partnership_positive(P, z, v);
      return detail::partnership_unclassified(P, "no_equilibrium");
    }
    return detail::partnership_unclassified(P, "eps0_outside_known_cases");
  }

  if (P.eps >= 1.0 - boundary_tol) {
    if (team_gain <= P.kappa0 + boundary_tol)
      return {Kind::ZeroEquilibrium, std::nullopt, std::nullopt};
    const double member_gain = 0.5 * P.K * (1.0 + P.beta) / (1.0 + P.p);
    if (P.delta >= 2.0 - boundary_tol &&
        2.0 * (1.0 + P.delta) > (1.0 + P.p) * (1.0 + P.p) + boundary_tol &&
        member_gain < P.kappa0 - boundary_tol) {
      const double z = std::pow(
          (P.kappa0 - member_gain) / (P.k * (P.delta - 1.0)), 1.0 / P.delta);
      const double v = (0.5 * P.K * (1.0 + P.beta) - P.kappa0) / z -
                       P.k * std::pow(z, P.delta - 1.0);
      if (v >= -boundary_tol) return detail::partnership_positive(P, z, v);
      return detail::partnership_unclassified(P, "no_equilibrium");
    }
    return detail::partnership_unclassified(P, "eps1_outside_known_cases");
  }

  return detail::partnership_unclassified(P, "mixed_eps_not_covered");
}

// ---------------------------------------------------------------------------
// Monotonicity of the partnership equilibrium in beta
// ---------------------------------------------------------------------------

// Stationary size of the partnership diagonal objective for delta > 1:
// the unique positive solution of
//   K a(eps, p) (1+beta) z^{1-eps} + kappa0 - k (delta-1) z^delta = 0,
// where a(eps, p) = 1 - eps - (2-eps) / (2(p+1)). Returns nullopt when no
// positive solution exists (a <= 0 with kappa0 = 0).
inline std::optional<double> partnership_stationary_size(const ModelParams& P,
                                                         double beta) {
  if (!(P.delta > 1.0))
    throw std::domain_error(
        "partnership_stationary_size: requires delta > 1");
  if (!(beta >= 0.0 && beta < 1.0))
    throw std::domain_error("partnership_stationary_size: beta in [0, 1)");
  const double a = 1.0 - P.eps - (2.0 - P.eps) / (2.0 * (P.p + 1.0));
  const double drive = P.K * a * (1.0 + beta);
  const double fall = P.k * (P.delta - 1.0);
  if (P.kappa0 <= 0.0) {
    if (drive <= 0.0) return std::nullopt;
    return std::pow(drive / fall, 1.0 / (P.delta + P.eps - 1.0));
  }
  auto phi = [&](double z) {
    return drive * std::pow(z, 1.0 - P.eps) + P.kappa0 -
           fall * std::pow(z, P.delta);
  };
  auto dphi = [&](double z) {
    return drive * (1.0 - P.eps) * std::pow(z, -P.eps) -
           fall * P.delta * std::pow(z, P.delta - 1.0);
  };
  double lo = 1.0;
  while (phi(lo) <= 0.0 && lo > 1e-300) lo *= 0.5;
  if (phi(lo) <= 0.0) return std::nullopt;  // drive swallows the fixed cost
  double hi = 1.0;
  while (phi(hi) >= 0.0 && hi < 1e300) hi *= 2.0;
  return find_root(phi, dphi, lo, hi).x;
}

struct MonotonicityReport {
  struct Point {
    double beta;
    double z_star;
    double v_partner;
  };
  std::vector<Point> points;
  std::vector<double> excluded_betas;  // grid values without a positive size
  int predicted_sign;    // sign of 2p - 2p*eps - eps
  int observed_z_sign;   // +1 increasing, -1 decreasing, 0 constant to 1e-9
  int observed_v_sign;
  bool z_direction_consistent;
};

namespace detail {

inline int direction_of(std::span<const double> xs, double tol) {
  bool up = false;
  bool down = false;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    const double d = xs[i] - xs[i - 1];
    if (d > tol) up = true;
    if (d < -tol) down = true;
  }
  if (up && down) return 2;  // non-monotone
  if (up) return 1;
  if (down) return -1;
  return 0;
}

}  // namespace detail

// Empirical direction of the partnership size and value across a beta grid,
// compared against the predicted direction sign(2p - 2p*eps - eps).
inline MonotonicityReport partnership_beta_monotonicity(
    const ModelParams& base, std::span<const double> beta_grid) {
  MonotonicityReport report{};
  const double crit = 2.0 * base.p - 2.0 * base.p * base.eps - base.eps;
  report.predicted_sign =
      std::abs(crit) <= boundary_tol ? 0 : (crit > 0.0 ? 1 : -1);

  for (double beta : beta_grid) {
    std::optional<double> z = partnership_stationary_size(base, beta);
    if (!z) {
      report.excluded_betas.push_back(beta);
      continue;
    }
    const double v = 0.5 * base.K * (1.0 + beta) * std::pow(*z, -base.eps) -
                     (base.kappa0 + base.size_cost(*z)) / *z;
    report.points.push_back({beta, *z, v});
  }

  std::vector<double> zs;
  std::vector<double> vs;
  zs.reserve(report.points.size());
  vs.reserve(report.points.size());
  for (const auto& pt : report.points) {
    zs.push_back(pt.z_star);
    vs.push_back(pt.v_partner);
  }
  report.observed_z_sign = detail::direction_of(zs, 1e-9);
  report.observed_v_sign = detail::direction_of(vs, 1e-9);
  report.z_direction_consistent =
      report.points.size() >= 2 &&
      report.observed_z_sign == report.predicted_sign;
  return report;
}

}  // namespace mft
