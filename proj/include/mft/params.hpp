#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mft {

// Absolute tolerance for comparisons at classification case boundaries.
// Equality branches of the classifiers trigger within this band.
inline constexpr double boundary_tol = 1e-12;

inline constexpr double inf = std::numeric_limits<double>::infinity();

namespace detail {
inline void require(bool ok, const char* msg) {
  if (!ok) throw std::invalid_argument(msg);
}
}  // namespace detail

// The nine scalar parameters of the team competition game.
struct ModelParams {
  double K;       // reward pie size, > 0
  double p;       // reward convexity, > 0
  double eps;     // intra-team division exponent, in [0, 1]
  double beta;    // fixed-salary proportion, in [0, 1)
  double theta;   // manager share of the team reward, in (0, 1)
  double c;       // effort cost coefficient, > 0
  double kappa0;  // fixed cost of assembling a team, >= 0
  double k;       // variable size cost coefficient, > 0
  double delta;   // variable size cost exponent, > 0

  ModelParams(double K_, double p_, double eps_, double beta_, double theta_,
              double c_, double kappa0_, double k_, double delta_)
      : K(K_), p(p_), eps(eps_), beta(beta_), theta(theta_), c(c_),
        kappa0(kappa0_), k(k_), delta(delta_) {
    detail::require(std::isfinite(K) && K > 0.0, "K must be > 0");
    detail::require(std::isfinite(p) && p > 0.0, "p must be > 0");
    detail::require(std::isfinite(eps) && eps >= 0.0 && eps <= 1.0,
                    "eps must lie in [0, 1]");
    detail::require(std::isfinite(beta) && beta >= 0.0 && beta < 1.0,
                    "beta must lie in [0, 1)");
    detail::require(std::isfinite(theta) && theta > 0.0 && theta < 1.0,
                    "theta must lie in (0, 1)");
    detail::require(std::isfinite(c) && c > 0.0, "c must be > 0");
    detail::require(std::isfinite(kappa0) && kappa0 >= 0.0,
                    "kappa0 must be >= 0");
    detail::require(std::isfinite(k) && k > 0.0, "k must be > 0");
    detail::require(std::isfinite(delta) && delta > 0.0, "delta must be > 0");
  }

  // Cost of assembling a team of size z on top of the fixed cost.
  double size_cost(double z) const { return k * std::pow(z, delta); }
};

// Team size in population units. Zero means the team is not assembled;
// the associated effort convention is the zero profile.
struct TeamSize {
  double value;
  explicit TeamSize(double z) : value(z) {
    detail::require(std::isfinite(z) && z >= 0.0, "team size must be >= 0");
  }
};

// Proportion of teams that have already completed, in [0, 1].
struct RankFraction {
  double value;
  explicit RankFraction(double r) : value(r) {
    detail::require(std::isfinite(r) && r >= 0.0 && r <= 1.0,
                    "rank fraction must lie in [0, 1]");
  }
};

// x -> coeff * (1 - x)^exponent on [0, 1]. Every equilibrium effort and
// team intensity lives in this family; a profile with coeff > 0 is an
// admissible feedback control (strictly positive on [0, 1) with the
// required endpoint integrability).
struct PowerProfile {
  double coeff;
  double exponent;

  PowerProfile(double coeff_, double exponent_)
      : coeff(coeff_), exponent(exponent_) {
    detail::require(std::isfinite(coeff) && coeff >= 0.0,
                    "profile coefficient must be >= 0");
    detail::require(std::isfinite(exponent) && exponent > 0.0,
                    "profile exponent must be > 0");
  }

  double operator()(double x) const {
    return coeff * std::pow(1.0 - x, exponent);
  }

  bool is_zero() const { return coeff == 0.0; }
};

}  // namespace mft
