#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "mft/presets.hpp"
#include "mft/quadrature.hpp"
#include "mft/simulate.hpp"
#include "mft/solvers.hpp"

using mft::ManagerOutcome;
using mft::ModelParams;
using mft::PartnershipOutcome;
using mft::PlannerOutcome;
using mft::PowerProfile;
using mft::RankFraction;
using mft::TeamSize;

namespace {

ModelParams make_params(double K, double p, double eps, double beta,
                        double theta, double c, double kappa0, double k,
                        double delta) {
  return ModelParams(K, p, eps, beta, theta, c, kappa0, k, delta);
}

// Quadrature oracle for the expected rank reward: evaluates the terminal
// value v(0) of the rank-reward ODE as a double integral, with the outer
// endpoint regularised by u = (1-r)^p. Independent of the closed form.
double expected_rank_reward_quadrature(const ModelParams& P, double z,
                                       double z_star) {
  const double w = std::pow(z / z_star, -P.eps);       // G_z / G_{z_star}
  const double A = (z / z_star) * (z / z_star) * w;    // (z/z_star)^{2-eps}
  auto integrand = [&](double u) {
    return u <= 0.0 ? 0.0 : std::exp(A / P.p * std::log(u));
  };
  const double integral =
      mft::integrate_adaptive_simpson(integrand, 0.0, 1.0, 1e-12, 1e-15, 60);
  return A * P.K * (1.0 + P.p) * std::pow(z, -P.eps) / P.p * integral;
}

}  // namespace

// --------------------------------------------------------------------------
// expected_rank_reward / manager_objective
// --------------------------------------------------------------------------

TEST(ExpectedRankReward, EqualSizesEarnThePie) {
  const ModelParams P = make_params(3.7, 1.9, 0.0, 0.2, 0.5, 1, 0.5, 1, 3);
  EXPECT_NEAR(mft::expected_rank_reward(P, TeamSize(1.3), TeamSize(1.3)), P.K,
              1e-12);
}

TEST(ExpectedRankReward, PointValueAndQuadratureOracle) {
  const ModelParams P = make_params(1, 1, 0, 0, 0.5, 1, 0, 1, 1);
  EXPECT_NEAR(mft::expected_rank_reward(P, TeamSize(2), TeamSize(1)), 1.6,
              1e-12);
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> zd(0.3, 3.0);
  for (int trial = 0; trial < 6; ++trial) {
    const ModelParams Q =
        make_params(2.4, 1.7, trial % 2 ? 1.0 : 0.4, 0.1, 0.5, 1, 0.5, 1, 3);
    const double z = zd(rng);
    const double zs = zd(rng);
    EXPECT_NEAR(mft::expected_rank_reward(Q, TeamSize(z), TeamSize(zs)),
                expected_rank_reward_quadrature(Q, z, zs), 1e-9);
  }
}

TEST(ExpectedRankReward, VanishesForTinyDeviators) {
  const ModelParams P = make_params(2, 2, 0, 0, 0.5, 1, 0, 1, 1);
  EXPECT_LT(mft::expected_rank_reward(P, TeamSize(1e-8), TeamSize(1)), 1e-12);
  EXPECT_THROW(mft::expected_rank_reward(P, TeamSize(0), TeamSize(1)),
               std::domain_error);
}

TEST(ManagerObjective, ZeroSizePaysNothing) {
  const ModelParams P = mft::example1_params(0.5);
  EXPECT_DOUBLE_EQ(mft::manager_objective(P, TeamSize(0), TeamSize(1)), 0.0);
}

TEST(ManagerObjective, EqualsManagerValueAtEquilibrium) {
  const ModelParams P = mft::example1_params(0.5);
  const ManagerOutcome out = mft::manager_equilibrium(P);
  ASSERT_EQ(out.kind, ManagerOutcome::Kind::Interior);
  const double z = out.interior->z_star;
  EXPECT_NEAR(mft::manager_objective(P, TeamSize(z), TeamSize(z)),
              out.interior->v_manager, 1e-12);
  EXPECT_NEAR(out.interior->v_manager,
              P.K * P.theta - P.kappa0 - P.size_cost(z), 1e-12);
}

TEST(ManagerObjective, MatchesMonteCarloEstimate) {
  const ModelParams P = mft::example1_params(0.5);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> zd(0.5, 2.0);
  for (int trial = 0; trial < 3; ++trial) {
    const double z = zd(rng);
    const double zs = zd(rng);
    const double w = std::pow(z / zs, P.eps - 2.0);
    const std::uint64_t n = 400000;
    double sum = 0.0;
    double sumsq = 0.0;
    for (std::uint64_t i = 0; i < n; ++i) {
      const double Z = mft::unit_exponential_draw(555 + trial, i);
      const double sample = P.theta * P.K * (1.0 + P.p) *
                                std::exp(-P.p * w * Z) -
                            P.kappa0 - P.size_cost(z);
      sum += sample;
      sumsq += sample * sample;
    }
    const double mean = sum / n;
    const double sd = std::sqrt((sumsq - n * mean * mean) / (n - 1.0));
    const double se = sd / std::sqrt(static_cast<double>(n));
    EXPECT_NEAR(mft::manager_objective(P, TeamSize(z), TeamSize(zs)), mean,
                3.0 * se)
        << "z=" << z << " zs=" << zs;
  }
}

// --------------------------------------------------------------------------
// manager_equilibrium
// --------------------------------------------------------------------------

TEST(ManagerEquilibrium, Example1Trichotomy) {
  // theta <= 0.1: the pie share cannot cover the fixed cost.
  EXPECT_EQ(mft::manager_equilibrium(mft::example1_params(0.05)).kind,
            ManagerOutcome::Kind::ZeroTeam);
  EXPECT_EQ(mft::manager_equilibrium(mft::example1_params(0.1)).kind,
            ManagerOutcome::Kind::ZeroTeam);
  // 0.1 < theta < 0.45: no equilibrium.
  EXPECT_EQ(mft::manager_equilibrium(mft::example1_params(0.3)).kind,
            ManagerOutcome::Kind::NoEquilibrium);
  EXPECT_EQ(mft::manager_equilibrium(mft::example1_params(0.44)).kind,
            ManagerOutcome::Kind::NoEquilibrium);
  // theta >= 0.45: interior equilibrium with the closed-form size.
  const ManagerOutcome out = mft::manager_equilibrium(mft::example1_params(0.5));
  ASSERT_EQ(out.kind, ManagerOutcome::Kind::Interior);
  EXPECT_NEAR(out.interior->z_star, std::pow(20.0 * 0.5 / 9.0, 0.25), 1e-12);
  EXPECT_NEAR(out.interior->v_worker, 14.0 / 3.0 * (1.0 - 0.5), 1e-12);
  const double z = out.interior->z_star;
  EXPECT_NEAR(out.interior->effort.coeff,
              20.0 * (1.0 - 0.4) * (1.0 - 0.5) * z / 2.0, 1e-12);
  // Equivalent closed form of the manager value:
  //   K theta [p (eps + delta - 2) + delta] / (delta (1+p)) - kappa0.
  const mft::ModelParams P = mft::example1_params(0.5);
  const double vm_closed = P.K * P.theta *
                               (P.p * (P.eps + P.delta - 2.0) + P.delta) /
                               (P.delta * (1.0 + P.p)) -
                           P.kappa0;
  EXPECT_NEAR(out.interior->v_manager, vm_closed, 1e-12);
}

TEST(ManagerEquilibrium, Example1CaseBoundaries) {
  EXPECT_EQ(mft::manager_equilibrium(mft::example1_params(0.45)).kind,
            ManagerOutcome::Kind::Interior);
  EXPECT_EQ(mft::manager_equilibrium(mft::example1_params(0.45 - 1e-9)).kind,
            ManagerOutcome::Kind::NoEquilibrium);
}

TEST(ManagerEquilibrium, Example2InteriorSize) {
  const ManagerOutcome out = mft::manager_equilibrium(mft::example2_params(0.0));
  ASSERT_EQ(out.kind, ManagerOutcome::Kind::Interior);
  EXPECT_NEAR(out.interior->z_star, 0.863, 1e-3);
  EXPECT_NEAR(out.interior->z_star, std::pow(5.0 / 9.0, 0.25), 1e-12);
}

TEST(ManagerEquilibrium, ExactBoundaryTieGoesToZeroTeam) {
  // K (1+p) theta == kappa0 exactly: the "<=" side of the trichotomy.
  const ModelParams P = make_params(1, 1, 0, 0, 0.5, 1, 1.0, 1, 4);
  EXPECT_EQ(mft::manager_equilibrium(P).kind, ManagerOutcome::Kind::ZeroTeam);
}

TEST(ManagerEquilibrium, CostInvariance) {
  // Equilibrium size and both values are independent of c; only the effort
  // coefficient scales as 1/c.
  const ManagerOutcome base = mft::manager_equilibrium(mft::example1_params(0.6));
  ASSERT_EQ(base.kind, ManagerOutcome::Kind::Interior);
  for (double c : {0.5, 2.0, 10.0}) {
    ModelParams P = mft::example1_params(0.6);
    const ModelParams Pc =
        make_params(P.K, P.p, P.eps, P.beta, P.theta, c, P.kappa0, P.k, P.delta);
    const ManagerOutcome out = mft::manager_equilibrium(Pc);
    ASSERT_EQ(out.kind, ManagerOutcome::Kind::Interior);
    EXPECT_DOUBLE_EQ(out.interior->z_star, base.interior->z_star);
    EXPECT_DOUBLE_EQ(out.interior->v_manager, base.interior->v_manager);
    EXPECT_DOUBLE_EQ(out.interior->v_worker, base.interior->v_worker);
    EXPECT_NEAR(out.interior->effort.coeff * c,
                base.interior->effort.coeff * 1.0,
                1e-12 * base.interior->effort.coeff);
  }
}

TEST(ManagerEquilibrium, SalarySplitInvariance) {
  // z_m and V^m do not depend on beta; V^w and the effort do.
  const ManagerOutcome base = mft::manager_equilibrium(mft::example1_params(0.6));
  ASSERT_EQ(base.kind, ManagerOutcome::Kind::Interior);
  ModelParams P0 = mft::example1_params(0.6);
  for (double beta : {0.0, 0.2, 0.7}) {
    const ModelParams P = make_params(P0.K, P0.p, P0.eps, beta, P0.theta,
                                      P0.c, P0.kappa0, P0.k, P0.delta);
    const ManagerOutcome out = mft::manager_equilibrium(P);
    ASSERT_EQ(out.kind, ManagerOutcome::Kind::Interior);
    EXPECT_DOUBLE_EQ(out.interior->z_star, base.interior->z_star);
    EXPECT_DOUBLE_EQ(out.interior->v_manager, base.interior->v_manager);
    EXPECT_NEAR(out.interior->v_worker,
                base.interior->v_worker * (1.0 + beta) / (1.0 + P0.beta),
                1e-12 * base.interior->v_worker);
  }
}

TEST(ManagerEquilibrium, MonotoneInManagerShare) {
  double prev_z = 0.0;
  double prev_vm = -1.0;
  for (double theta = 0.45; theta < 0.96; theta += 0.05) {
    const ManagerOutcome out =
        mft::manager_equilibrium(mft::example1_params(theta));
    ASSERT_EQ(out.kind, ManagerOutcome::Kind::Interior) << theta;
    EXPECT_GT(out.interior->z_star, prev_z);
    EXPECT_GT(out.interior->v_manager, prev_vm);
    prev_z = out.interior->z_star;
    prev_vm = out.interior->v_manager;
  }
}

TEST(ManagerEquilibrium, StationarityOfInteriorSize) {
  for (double theta : {0.5, 0.7, 0.9}) {
    const ModelParams P = mft::example1_params(theta);
    const ManagerOutcome out = mft::manager_equilibrium(P);
    ASSERT_EQ(out.kind, ManagerOutcome::Kind::Interior);
    const double z = out.interior->z_star;
    const double h = 1e-5 * z;
    const double d = (mft::manager_objective(P, TeamSize(z + h), TeamSize(z)) -
                      mft::manager_objective(P, TeamSize(z - h), TeamSize(z))) /
                     (2.0 * h);
    EXPECT_LT(std::abs(d) * z / (std::abs(out.interior->v_manager) + 1.0),
              1e-6);
  }
}

TEST(VerifyManagerGlobalMax, AcceptsAndRejects) {
  // Interior case: the candidate dominates the whole grid.
  const ManagerOutcome ok = mft::manager_equilibrium(mft::example1_params(0.5));
  ASSERT_EQ(ok.kind, ManagerOutcome::Kind::Interior);
  EXPECT_TRUE(
      mft::verify_manager_global_max(mft::example1_params(0.5),
                                     TeamSize(ok.interior->z_star))
          .passed);

  // No-equilibrium case: the stationary candidate exists but assembling at
  // it loses money, so the maximum sits at the z = 0 boundary.
  const ModelParams P3 = mft::example1_params(0.3);
  const double candidate = std::pow(
      P3.K * P3.theta * P3.p * (2.0 - P3.eps) / (P3.k * P3.delta * (1.0 + P3.p)),
      1.0 / P3.delta);
  const mft::VerifyResult rejected =
      mft::verify_manager_global_max(P3, TeamSize(candidate));
  EXPECT_FALSE(rejected.passed);

  // Steep size costs keep the interior candidate globally optimal.
  const ModelParams steep = make_params(20.0 / 3.0, 2, 0, 0.4, 0.9, 1, 2, 1, 50);
  const ManagerOutcome out = mft::manager_equilibrium(steep);
  ASSERT_EQ(out.kind, ManagerOutcome::Kind::Interior);
  EXPECT_TRUE(
      mft::verify_manager_global_max(steep, TeamSize(out.interior->z_star))
          .passed);
}

// --------------------------------------------------------------------------
// planner
// --------------------------------------------------------------------------

TEST(PlannerObjective, Example1ValueAndLimits) {
  const ModelParams P = mft::example1_params(0.5);
  const double z_c = std::pow(2.0 / 3.0, 0.25);
  EXPECT_NEAR(mft::planner_objective(P, TeamSize(z_c)), 1.716, 1e-3);
  // Budget scheme with cheap fixed cost: h blows up as z -> 0+.
  const ModelParams Q = make_params(4, 1, 1, 0, 0.5, 1, 0.5, 1, 2);
  EXPECT_GT(mft::planner_objective(Q, TeamSize(1e-12)), 1e10);
  // Convex size costs dominate for large z.
  EXPECT_LT(mft::planner_objective(P, TeamSize(1e6)), -1e15);
}

TEST(CentralPlanner, Example1UniquePositive) {
  const PlannerOutcome out = mft::central_planner_optimum(mft::example1_params(0.5));
  ASSERT_EQ(out.kind, PlannerOutcome::Kind::UniquePositive);
  EXPECT_NEAR(out.positive->z_star, 0.904, 1e-3);
  EXPECT_NEAR(out.positive->z_star, std::pow(2.0 / 3.0, 0.25), 1e-12);
  EXPECT_NEAR(out.positive->v_central, 1.716, 1e-3);
  ASSERT_TRUE(out.positive->effort.has_value());
  EXPECT_NEAR(out.positive->effort->coeff,
              20.0 * (1.0 - 0.4) * out.positive->z_star / 2.0, 1e-12);
}

TEST(CentralPlanner, BudgetSchemeCases) {
  // kappa0 >= K(1+beta)/2, including the exact tie: zero is uniquely optimal.
  EXPECT_EQ(mft::central_planner_optimum(
                make_params(2, 1, 1, 0, 0.5, 1, 1.0, 1, 2))
                .kind,
            PlannerOutcome::Kind::UniqueZero);
  EXPECT_EQ(mft::central_planner_optimum(
                make_params(2, 1, 1, 0, 0.5, 1, 2.0, 1, 2))
                .kind,
            PlannerOutcome::Kind::UniqueZero);
  // kappa0 below the member gain: supremum at z -> 0+, never attained.
  const PlannerOutcome zero_plus = mft::central_planner_optimum(
      make_params(2, 1, 1, 0, 0.5, 1, 0.5, 1, 2));
  EXPECT_EQ(zero_plus.kind, PlannerOutcome::Kind::NoOptimum);
  EXPECT_EQ(zero_plus.limit, PlannerOutcome::Limit::ZeroPlus);
}

TEST(CentralPlanner, PublicGoodCases) {
  // Sub-linear size costs: growing without bound is always better.
  const PlannerOutcome inf_case = mft::central_planner_optimum(
      make_params(2, 1, 0, 0, 0.5, 1, 0.5, 1, 0.5));
  EXPECT_EQ(inf_case.kind, PlannerOutcome::Kind::NoOptimum);
  EXPECT_EQ(inf_case.limit, PlannerOutcome::Limit::Infinity);

  // delta = 1, kappa0 = 0: the objective is flat in z.
  EXPECT_EQ(mft::central_planner_optimum(
                make_params(2, 1, 0, 0, 0.5, 1, 0, 1, 1))
                .kind,
            PlannerOutcome::Kind::AnyNonnegative);
  EXPECT_EQ(mft::central_planner_optimum(
                make_params(1.5, 1, 0, 0, 0.5, 1, 0, 1, 1))
                .kind,
            PlannerOutcome::Kind::UniqueZero);
  EXPECT_EQ(mft::central_planner_optimum(
                make_params(3, 1, 0, 0, 0.5, 1, 0, 1, 1))
                .kind,
            PlannerOutcome::Kind::AnyPositive);

  // delta = 1, kappa0 > 0.
  EXPECT_EQ(mft::central_planner_optimum(
                make_params(1.5, 1, 0, 0, 0.5, 1, 0.5, 1, 1))
                .kind,
            PlannerOutcome::Kind::UniqueZero);
  const PlannerOutcome drift = mft::central_planner_optimum(
      make_params(3, 1, 0, 0, 0.5, 1, 0.5, 1, 1));
  EXPECT_EQ(drift.kind, PlannerOutcome::Kind::NoOptimum);
  EXPECT_EQ(drift.limit, PlannerOutcome::Limit::Infinity);

  // delta > 1, kappa0 = 0: supremum at z -> 0+.
  const PlannerOutcome zp = mft::central_planner_optimum(
      make_params(2, 1, 0, 0, 0.5, 1, 0, 1, 3));
  EXPECT_EQ(zp.kind, PlannerOutcome::Kind::NoOptimum);
  EXPECT_EQ(zp.limit, PlannerOutcome::Limit::ZeroPlus);

  // delta > 1, kappa0 > 0, gain below the threshold: zero wins.
  EXPECT_EQ(mft::central_planner_optimum(
                make_params(0.5, 2, 0, 0.4, 0.5, 1, 2, 1, 4))
                .kind,
            PlannerOutcome::Kind::UniqueZero);
}

TEST(CentralPlanner, ZeroAndPositiveTie) {
  // K tuned so that K(1+beta)/2 equals the positive-optimum threshold.
  const double threshold =
      2.0 * 4.0 / 3.0 * std::pow(2.0 / 3.0, -0.25);  // kappa0=2, k=1, delta=4
  const ModelParams P =
      make_params(2.0 * threshold, 2, 0, 0.0, 0.5, 1, 2, 1, 4);
  const PlannerOutcome out = mft::central_planner_optimum(P);
  ASSERT_EQ(out.kind, PlannerOutcome::Kind::ZeroAndPositive);
  EXPECT_NEAR(out.positive->z_star, std::pow(2.0 / 3.0, 0.25), 1e-12);
  EXPECT_NEAR(out.positive->v_central, 0.0, 1e-9);
}

TEST(CentralPlanner, MixedCaseClosedForm) {
  // 0 < eps, delta < 1, eps + delta < 1, kappa0 = 0.
  const ModelParams P = make_params(2, 1, 0.3, 0.2, 0.5, 1, 0, 1, 0.4);
  const PlannerOutcome out = mft::central_planner_optimum(P);
  ASSERT_EQ(out.kind, PlannerOutcome::Kind::UniquePositive);
  const double gain = 0.5 * P.K * (1.0 + P.beta);
  const double expected_z = std::pow(P.eps * gain / ((1.0 - P.delta) * P.k),
                                     1.0 / (P.delta + P.eps - 1.0));
  EXPECT_NEAR(out.positive->z_star, expected_z, 1e-9 * expected_z);
  const double expected_v = gain * std::pow(expected_z, -P.eps) -
                            P.k * std::pow(expected_z, P.delta - 1.0);
  EXPECT_NEAR(out.positive->v_central, expected_v, 1e-9);
}

TEST(CentralPlanner, MixedCaseRootFound) {
  // 0 < eps < 1, delta >= 1, kappa0 > 0, K(1+beta)/2 > k + kappa0.
  const ModelParams P = make_params(4, 1, 0.5, 0.0, 0.5, 1, 0.5, 1, 2);
  const PlannerOutcome out = mft::central_planner_optimum(P);
  ASSERT_EQ(out.kind, PlannerOutcome::Kind::UniquePositive);
  const double z = out.positive->z_star;
  const double gain = 0.5 * P.K * (1.0 + P.beta);
  // The root equation itself.
  EXPECT_NEAR(-P.eps * gain * std::pow(z, 1.0 - P.eps) + P.kappa0 -
                  P.k * (P.delta - 1.0) * std::pow(z, P.delta),
              0.0, 1e-10);
  // The alternative closed expression for the value.
  const double alt = P.kappa0 * (1.0 / P.eps - 1.0) / z -
                     P.k * (1.0 + (P.delta - 1.0) / P.eps) *
                         std::pow(z, P.delta - 1.0);
  EXPECT_NEAR(out.positive->v_central, alt, 1e-9);
  EXPECT_GT(out.positive->v_central, 0.0);
}

TEST(CentralPlanner, MixedCaseRootBelowFloatingRangeIsUnclassified) {
  // For eps this close to 1 the stationary size sits below the smallest
  // representable double; the classifier must refuse rather than guess.
  const ModelParams P = make_params(11.874, 3.326, 0.9995, 0.6403, 0.5, 1.0,
                                    2.7913, 4.8343, 2.9236);
  const PlannerOutcome out = mft::central_planner_optimum(P);
  ASSERT_EQ(out.kind, PlannerOutcome::Kind::Unclassified);
  EXPECT_EQ(out.diagnostics->reason, "optimum_below_numeric_range");
}

TEST(CentralPlanner, MixedCaseOutsideCoverage) {
  const PlannerOutcome out = mft::central_planner_optimum(
      make_params(2, 1, 0.5, 0, 0.5, 1, 0, 1, 2));
  ASSERT_EQ(out.kind, PlannerOutcome::Kind::Unclassified);
  ASSERT_TRUE(out.diagnostics.has_value());
  EXPECT_FALSE(out.diagnostics->numeric_scan.empty());
  EXPECT_TRUE(out.diagnostics->best_candidate.has_value());
}

TEST(CentralPlanner, StationarityOfPositiveOptimum) {
  for (const ModelParams& P :
       {mft::example1_params(0.5), make_params(4, 1, 0.5, 0, 0.5, 1, 0.5, 1, 2),
        make_params(2, 1, 0.3, 0.2, 0.5, 1, 0, 1, 0.4)}) {
    const PlannerOutcome out = mft::central_planner_optimum(P);
    ASSERT_EQ(out.kind, PlannerOutcome::Kind::UniquePositive);
    const double z = out.positive->z_star;
    const double h = 1e-5 * z;
    const double d = (mft::planner_objective(P, TeamSize(z + h)) -
                      mft::planner_objective(P, TeamSize(z - h))) /
                     (2.0 * h);
    EXPECT_LT(std::abs(d) * z / (std::abs(out.positive->v_central) + 1.0),
              1e-6);
  }
}

TEST(VerifyPlannerGlobalMax, AcceptsTheOptimum) {
  const ModelParams P = mft::example1_params(0.5);
  const PlannerOutcome out = mft::central_planner_optimum(P);
  ASSERT_EQ(out.kind, PlannerOutcome::Kind::UniquePositive);
  EXPECT_TRUE(
      mft::verify_planner_global_max(P, TeamSize(out.positive->z_star)).passed);
  EXPECT_FALSE(
      mft::verify_planner_global_max(P, TeamSize(1.7 * out.positive->z_star))
          .passed);
}

// --------------------------------------------------------------------------
// partnership
// --------------------------------------------------------------------------

TEST(PartnershipObjective, DiagonalIdentity) {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> zd(0.1, 5.0);
  const ModelParams P = make_params(3, 2, 0.6, 0.3, 0.5, 1, 1.2, 0.8, 3);
  for (int trial = 0; trial < 25; ++trial) {
    const double z = zd(rng);
    const double diagonal =
        mft::partnership_objective(P, TeamSize(z), TeamSize(z));
    const double direct = 0.5 * P.K * (1.0 + P.beta) * std::pow(z, -P.eps) -
                          (P.kappa0 + P.size_cost(z)) / z;
    EXPECT_NEAR(diagonal, direct, 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST(PartnershipObjective, Example1DiagonalValueAndTailLimit) {
  const ModelParams P = mft::example1_params(0.5);
  const PartnershipOutcome out = mft::partnership_equilibrium(P);
  ASSERT_EQ(out.kind, PartnershipOutcome::Kind::UniquePositive);
  const double z = out.positive->z_star;
  EXPECT_NEAR(mft::partnership_objective(P, TeamSize(z), TeamSize(z)), 0.644,
              1e-3);
  EXPECT_LT(mft::partnership_objective(P, TeamSize(1e5), TeamSize(z)), -1e12);
}

TEST(PartnershipEquilibrium, Example1RootAndValue) {
  const PartnershipOutcome out =
      mft::partnership_equilibrium(mft::example1_params(0.5));
  ASSERT_EQ(out.kind, PartnershipOutcome::Kind::UniquePositive);
  const double z = out.positive->z_star;
  EXPECT_NEAR(z, 1.368, 1e-3);
  // z solves -3 z^4 + (56/9) z + 2 = 0.
  EXPECT_NEAR(-3.0 * std::pow(z, 4) + 56.0 / 9.0 * z + 2.0, 0.0, 1e-10);
  EXPECT_NEAR(out.positive->v_partner, 0.644, 1e-3);
  EXPECT_NEAR(out.positive->effort.coeff, 20.0 * (1.0 - 0.4) * z / 2.0, 1e-9);
}

TEST(PartnershipEquilibrium, BudgetSchemeZeroEquilibrium) {
  // (1+beta)/2 K (1+p) = 1 <= kappa0 = 2.
  const ModelParams P = make_params(1, 1, 1, 0, 0.5, 1, 2, 1, 2);
  EXPECT_EQ(mft::partnership_equilibrium(P).kind,
            PartnershipOutcome::Kind::ZeroEquilibrium);
}

TEST(PartnershipEquilibrium, Example2ClosedForm) {
  const PartnershipOutcome out =
      mft::partnership_equilibrium(mft::example2_params(0.6));
  ASSERT_EQ(out.kind, PartnershipOutcome::Kind::UniquePositive);
  EXPECT_NEAR(out.positive->z_star, 0.522, 1e-3);
  EXPECT_NEAR(out.positive->z_star, std::pow(2.0 / 27.0, 0.25), 1e-12);
  EXPECT_NEAR(out.positive->v_partner, 6.247, 1e-3);
  // eps = 1: the equilibrium effort coefficient carries z^{1-eps} = 1.
  EXPECT_NEAR(out.positive->effort.coeff, 20.0 * (1.0 - 0.6) / 2.0, 1e-12);
}

TEST(PartnershipEquilibrium, Example2SizeFormulaAcrossBeta) {
  for (int i = 0; i <= 7; ++i) {
    const double beta = i / 10.0;
    const PartnershipOutcome out =
        mft::partnership_equilibrium(mft::example2_params(beta));
    ASSERT_EQ(out.kind, PartnershipOutcome::Kind::UniquePositive) << beta;
    EXPECT_NEAR(out.positive->z_star,
                std::pow((8.0 - 10.0 * beta) / 27.0, 0.25), 1e-12);
  }
}

TEST(PartnershipEquilibrium, MixedSchemeUnclassified) {
  const ModelParams P = make_params(2, 1, 0.5, 0.2, 0.5, 1, 0.5, 1, 3);
  const PartnershipOutcome out = mft::partnership_equilibrium(P);
  ASSERT_EQ(out.kind, PartnershipOutcome::Kind::Unclassified);
  ASSERT_TRUE(out.diagnostics.has_value());
  EXPECT_FALSE(out.diagnostics->numeric_scan.empty());
}

TEST(PartnershipEquilibrium, ProvenNonexistence) {
  // Neither zero nor the positive candidate is an equilibrium: the zero
  // score is below 1 while the candidate value is negative.
  const ModelParams P = make_params(1, 1, 0, 0, 0.5, 1, 0.3, 0.5, 3);
  const PartnershipOutcome out = mft::partnership_equilibrium(P);
  ASSERT_EQ(out.kind, PartnershipOutcome::Kind::Unclassified);
  EXPECT_EQ(out.diagnostics->reason, "no_equilibrium");

  // Budget-scheme analogue: kappa0 between the value threshold and the
  // zero-equilibrium threshold.
  const ModelParams Q = make_params(1, 1, 1, 0, 0.5, 1, 0.7, 1, 4);
  const PartnershipOutcome out2 = mft::partnership_equilibrium(Q);
  ASSERT_EQ(out2.kind, PartnershipOutcome::Kind::Unclassified);
  EXPECT_EQ(out2.diagnostics->reason, "no_equilibrium");
}

TEST(PartnershipEquilibrium, AbsurdCostScaleRefusesCleanly) {
  // A variable cost coefficient this small pushes the candidate size past
  // double range; the classifier must refuse instead of crashing.
  const ModelParams P = make_params(10, 1, 0, 0, 0.5, 1, 1.0, 1e-250, 3);
  const PartnershipOutcome out = mft::partnership_equilibrium(P);
  ASSERT_EQ(out.kind, PartnershipOutcome::Kind::Unclassified);
  EXPECT_EQ(out.diagnostics->reason, "size_above_numeric_range");

  // A merely tiny coefficient still resolves to a huge but representable
  // equilibrium size.
  const ModelParams Q = make_params(10, 1, 0, 0, 0.5, 1, 1.0, 1e-150, 3);
  const PartnershipOutcome ok = mft::partnership_equilibrium(Q);
  ASSERT_EQ(ok.kind, PartnershipOutcome::Kind::UniquePositive);
  EXPECT_GT(ok.positive->z_star, 1e70);
}

TEST(PartnershipEquilibrium, PublicGoodZeroEquilibriumScore) {
  // delta in [2, 3): covered by the zero test but not the positive one.
  const ModelParams P = make_params(1, 1, 0, 0, 0.5, 1, 2, 1, 2.5);
  EXPECT_EQ(mft::partnership_equilibrium(P).kind,
            PartnershipOutcome::Kind::ZeroEquilibrium);
}

TEST(PartnershipEquilibrium, SublinearCostsNeverStayUnassembled) {
  // delta < 1 with a fixed cost: the diagonal objective rises towards the
  // positive team gain, so zero is not an equilibrium; with no positive
  // case covered either, the classifier reports unclassified.
  const ModelParams P = make_params(1, 1, 0, 0, 0.5, 1, 5.0, 1, 0.5);
  const PartnershipOutcome out = mft::partnership_equilibrium(P);
  ASSERT_EQ(out.kind, PartnershipOutcome::Kind::Unclassified);
  EXPECT_EQ(out.diagnostics->reason, "eps0_outside_known_cases");
}

TEST(PartnershipEquilibrium, StationarityOfPositiveSize) {
  for (const ModelParams& P :
       {mft::example1_params(0.5), mft::example2_params(0.6),
        mft::example2_params(0.1)}) {
    const PartnershipOutcome out = mft::partnership_equilibrium(P);
    ASSERT_EQ(out.kind, PartnershipOutcome::Kind::UniquePositive);
    const double z = out.positive->z_star;
    const double h = 1e-5 * z;
    const double d =
        (mft::partnership_objective(P, TeamSize(z + h), TeamSize(z)) -
         mft::partnership_objective(P, TeamSize(z - h), TeamSize(z))) /
        (2.0 * h);
    EXPECT_LT(std::abs(d) * z / (std::abs(out.positive->v_partner) + 1.0),
              1e-6);
  }
}

TEST(PartnershipEquilibrium, RootIsUniqueOnLogGrid) {
  // gamma changes sign exactly once across six decades around the root.
  for (const ModelParams& P :
       {mft::example1_params(0.5), make_params(5, 0.5, 0, 0.3, 0.5, 1, 1, 2, 3),
        make_params(8, 2, 0, 0.1, 0.5, 1, 0.4, 1, 5)}) {
    const PartnershipOutcome out = mft::partnership_equilibrium(P);
    ASSERT_EQ(out.kind, PartnershipOutcome::Kind::UniquePositive);
    const double A = P.p * P.K * (1.0 + P.beta) / (1.0 + P.p);
    auto gamma = [&](double x) {
      return A * x + P.k * (1.0 - P.delta) * std::pow(x, P.delta) + P.kappa0;
    };
    const double z = out.positive->z_star;
    int sign_changes = 0;
    double prev = gamma(z * 1e-3);
    for (int i = 1; i < 1000; ++i) {
      const double x = z * 1e-3 * std::pow(1e6, i / 999.0);
      const double g = gamma(x);
      if ((g > 0.0) != (prev > 0.0)) ++sign_changes;
      prev = g;
    }
    EXPECT_EQ(sign_changes, 1);
  }
}

TEST(VerifyPartnershipGlobalMax, AcceptsAndRejects) {
  const ModelParams P1 = mft::example1_params(0.5);
  const PartnershipOutcome out1 = mft::partnership_equilibrium(P1);
  ASSERT_EQ(out1.kind, PartnershipOutcome::Kind::UniquePositive);
  EXPECT_TRUE(
      mft::verify_partnership_global_max(P1, TeamSize(out1.positive->z_star))
          .passed);

  const ModelParams P2 = mft::example2_params(0.6);
  const PartnershipOutcome out2 = mft::partnership_equilibrium(P2);
  ASSERT_EQ(out2.kind, PartnershipOutcome::Kind::UniquePositive);
  EXPECT_TRUE(
      mft::verify_partnership_global_max(P2, TeamSize(out2.positive->z_star))
          .passed);

  // A perturbed candidate is not stationary and fails the scan.
  const mft::VerifyResult off = mft::verify_partnership_global_max(
      P1, TeamSize(1.2 * out1.positive->z_star));
  EXPECT_FALSE(off.passed);
  EXPECT_TRUE(off.diagnostics.best_candidate.has_value());
}

// --------------------------------------------------------------------------
// ordering and monotonicity
// --------------------------------------------------------------------------

TEST(RegimeOrdering, PlannerWeaklyDominatesPartnership) {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> Kd(2.0, 12.0), pd(0.4, 3.0),
      dd(3.0, 6.0), kd(0.5, 2.0), k0d(0.1, 1.5), bd(0.0, 0.8);
  int found = 0;
  for (int attempt = 0; attempt < 600 && found < 50; ++attempt) {
    const ModelParams P = make_params(Kd(rng), pd(rng), 0.0, bd(rng), 0.5,
                                      1.0, k0d(rng), kd(rng), dd(rng));
    const PlannerOutcome planner = mft::central_planner_optimum(P);
    const PartnershipOutcome partnership = mft::partnership_equilibrium(P);
    if (planner.kind != PlannerOutcome::Kind::UniquePositive) continue;
    if (partnership.kind != PartnershipOutcome::Kind::UniquePositive) continue;
    ++found;
    EXPECT_GE(planner.positive->v_central,
              partnership.positive->v_partner - 1e-9)
        << "K=" << P.K << " p=" << P.p << " kappa0=" << P.kappa0
        << " k=" << P.k << " delta=" << P.delta << " beta=" << P.beta;
  }
  ASSERT_GE(found, 50);
}

TEST(PartnershipMonotonicity, IncreasingWhenPublicGood) {
  // Grid restricted to betas where the equilibrium value is nonnegative
  // (near beta = 0 the stationary size exists but loses money).
  const std::vector<double> grid{0.2, 0.35, 0.5, 0.65};
  const mft::MonotonicityReport report = mft::partnership_beta_monotonicity(
      mft::example1_params(0.5), grid);
  EXPECT_EQ(report.predicted_sign, 1);
  EXPECT_EQ(report.observed_z_sign, 1);
  EXPECT_TRUE(report.z_direction_consistent);
  EXPECT_EQ(report.observed_v_sign, 1);
  EXPECT_TRUE(report.excluded_betas.empty());
  // Every grid point is also a classified equilibrium here.
  for (double beta : grid) {
    ModelParams P = mft::example1_params(0.5);
    const ModelParams Pb = make_params(P.K, P.p, P.eps, beta, P.theta, P.c,
                                       P.kappa0, P.k, P.delta);
    EXPECT_EQ(mft::partnership_equilibrium(Pb).kind,
              PartnershipOutcome::Kind::UniquePositive);
  }
}

TEST(PartnershipMonotonicity, DecreasingWhenBudget) {
  const std::vector<double> grid{0.0, 0.2, 0.4, 0.6};
  const mft::MonotonicityReport report = mft::partnership_beta_monotonicity(
      mft::example2_params(0.0), grid);
  EXPECT_EQ(report.predicted_sign, -1);
  EXPECT_EQ(report.observed_z_sign, -1);
  EXPECT_TRUE(report.z_direction_consistent);
  EXPECT_EQ(report.observed_v_sign, 1);  // worker value still rises
}

TEST(PartnershipMonotonicity, ConstantAtCriticalMix) {
  // eps = 2p/(2p+1) makes the size independent of beta.
  const ModelParams P = make_params(3, 1, 2.0 / 3.0, 0.0, 0.5, 1, 2, 1, 4);
  const std::vector<double> grid{0.0, 0.2, 0.4, 0.6, 0.8};
  const mft::MonotonicityReport report =
      mft::partnership_beta_monotonicity(P, grid);
  EXPECT_EQ(report.predicted_sign, 0);
  EXPECT_EQ(report.observed_z_sign, 0);
  EXPECT_TRUE(report.z_direction_consistent);
  ASSERT_GE(report.points.size(), 2u);
  for (std::size_t i = 1; i < report.points.size(); ++i) {
    EXPECT_NEAR(report.points[i].z_star, report.points[0].z_star, 1e-9);
  }
  EXPECT_EQ(report.observed_v_sign, 1);
}

TEST(PartnershipMonotonicity, FlagsBetasWithoutPositiveSize) {
  // Public good, kappa0 = 0 and negative drive: no positive stationary size.
  const ModelParams P = make_params(1, 0.2, 0.9, 0.0, 0.5, 1, 0, 1, 4);
  // 2p - 2p*eps - eps = 0.4 - 0.36 - 0.9 < 0 and kappa0 = 0.
  const std::vector<double> grid{0.0, 0.5};
  const mft::MonotonicityReport report =
      mft::partnership_beta_monotonicity(P, grid);
  EXPECT_EQ(report.points.size(), 0u);
  EXPECT_EQ(report.excluded_betas.size(), 2u);
  EXPECT_FALSE(report.z_direction_consistent);
}
