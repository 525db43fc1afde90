#pragma once

#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mft/parallel.hpp"
#include "mft/params.hpp"
#include "mft/solvers.hpp"

namespace mft {

// Formats a double with 17 significant digits so that parsing the text
// recovers the exact bit pattern.
inline std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// One grid point of a sweep: the variable value and the classification of
// all three regimes at that point.
struct SweepRow {
  double value;
  ManagerOutcome manager;
  PlannerOutcome planner;
  PartnershipOutcome partnership;
};

struct SweepTable {
  std::string variable;  // "theta" or "beta"
  std::vector<SweepRow> rows;  // ascending in value
};

inline ModelParams with_variable(const ModelParams& base,
                                 const std::string& variable, double value) {
  ModelParams p = base;
  if (variable == "theta")
    p.theta = value;
  else if (variable == "beta")
    p.beta = value;
  else
    throw std::invalid_argument("sweep variable must be theta or beta");
  return ModelParams(p.K, p.p, p.eps, p.beta, p.theta, p.c, p.kappa0, p.k,
                     p.delta);  // re-validate
}

// Evaluates all three regimes on a midpoint grid of [lo, hi]: the first
// point sits half a step inside each end, which keeps open-interval
// variables (theta = 0, theta = 1, beta = 1) off the grid.
inline SweepTable run_sweep(const ModelParams& base,
                            const std::string& variable, double lo, double hi,
                            int steps) {
  if (!(steps >= 1)) throw std::invalid_argument("sweep needs >= 1 steps");
  if (!(lo < hi)) throw std::invalid_argument("sweep needs lo < hi");
  const double h = (hi - lo) / steps;

  SweepTable table;
  table.variable = variable;
  table.rows.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double v = lo + h * (i + 0.5);
    const ModelParams probe = with_variable(base, variable, v);  // validates
    table.rows.push_back({v,
                          ManagerOutcome{},
                          PlannerOutcome{},
                          PartnershipOutcome{}});
    (void)probe;
  }

  for_each_chunk(static_cast<std::uint64_t>(steps), 64,
                 [&](std::uint64_t, std::uint64_t begin, std::uint64_t end) {
                   for (std::uint64_t i = begin; i < end; ++i) {
                     SweepRow& row = table.rows[i];
                     const ModelParams P =
                         with_variable(base, variable, row.value);
                     row.manager = manager_equilibrium(P);
                     row.planner = central_planner_optimum(P);
                     row.partnership = partnership_equilibrium(P);
                   }
                 });
  return table;
}

namespace detail {

// Sentinel tokens: explicit markers, never silent zeros.
inline constexpr const char* kNotApplicable = "NA";
inline constexpr const char* kNoEquilibrium = "NOEQ";
inline constexpr const char* kNoOptimum = "NOOPT";

struct Cell {
  bool numeric;
  double value;
  const char* sentinel;
};

inline Cell num(double v) { return {true, v, nullptr}; }
inline Cell sentinel(const char* s) { return {false, 0.0, s}; }

inline std::string cell_text(const Cell& c) {
  return c.numeric ? format_full(c.value) : c.sentinel;
}

inline const char* manager_variant_name(ManagerOutcome::Kind k) {
  switch (k) {
    case ManagerOutcome::Kind::ZeroTeam: return "zero_team";
    case ManagerOutcome::Kind::Interior: return "interior";
    case ManagerOutcome::Kind::NoEquilibrium: return "no_equilibrium";
  }
  return "?";
}

inline const char* planner_variant_name(const PlannerOutcome& o) {
  switch (o.kind) {
    case PlannerOutcome::Kind::NoOptimum:
      return o.limit == PlannerOutcome::Limit::ZeroPlus
                 ? "no_optimum_zero_plus"
                 : "no_optimum_infinity";
    case PlannerOutcome::Kind::UniqueZero: return "unique_zero";
    case PlannerOutcome::Kind::UniquePositive: return "unique_positive";
    case PlannerOutcome::Kind::ZeroAndPositive: return "zero_and_positive";
    case PlannerOutcome::Kind::AnyNonnegative: return "any_nonnegative";
    case PlannerOutcome::Kind::AnyPositive: return "any_positive";
    case PlannerOutcome::Kind::Unclassified: return "unclassified";
  }
  return "?";
}

inline const char* partnership_variant_name(PartnershipOutcome::Kind k) {
  switch (k) {
    case PartnershipOutcome::Kind::ZeroEquilibrium: return "zero_equilibrium";
    case PartnershipOutcome::Kind::UniquePositive: return "unique_positive";
    case PartnershipOutcome::Kind::Unclassified: return "unclassified";
  }
  return "?";
}

inline void manager_cells(const ManagerOutcome& o, Cell& z, Cell& vw,
                          Cell& vm) {
  switch (o.kind) {
    case ManagerOutcome::Kind::ZeroTeam:
      z = num(0.0);
      vw = num(0.0);
      vm = num(0.0);
      return;
    case ManagerOutcome::Kind::Interior:
      z = num(o.interior->z_star);
      vw = num(o.interior->v_worker);
      vm = num(o.interior->v_manager);
      return;
    case ManagerOutcome::Kind::NoEquilibrium:
      z = sentinel(kNoEquilibrium);
      vw = sentinel(kNoEquilibrium);
      vm = sentinel(kNoEquilibrium);
      return;
  }
}

inline void planner_cells(const PlannerOutcome& o, Cell& z, Cell& vc) {
  switch (o.kind) {
    case PlannerOutcome::Kind::UniqueZero:
      z = num(0.0);
      vc = num(0.0);
      return;
    case PlannerOutcome::Kind::UniquePositive:
    case PlannerOutcome::Kind::ZeroAndPositive:
      z = num(o.positive->z_star);
      vc = num(o.positive->v_central);
      return;
    case PlannerOutcome::Kind::NoOptimum:
      z = sentinel(kNoOptimum);
      vc = sentinel(kNoOptimum);
      return;
    default:
      z = sentinel(kNotApplicable);
      vc = sentinel(kNotApplicable);
      return;
  }
}

inline void partnership_cells(const PartnershipOutcome& o, Cell& z,
                              Cell& vp) {
  switch (o.kind) {
    case PartnershipOutcome::Kind::ZeroEquilibrium:
      z = num(0.0);
      vp = num(0.0);
      return;
    case PartnershipOutcome::Kind::UniquePositive:
      z = num(o.positive->z_star);
      vp = num(o.positive->v_partner);
      return;
    case PartnershipOutcome::Kind::Unclassified:
      z = sentinel(kNotApplicable);
      vp = sentinel(kNotApplicable);
      return;
  }
}

}  // namespace detail

// Comma-separated, '.' decimal, 17 significant digits, LF line endings.
inline void write_sweep_csv(std::ostream& os, const SweepTable& table) {
  os << table.variable
     << ",manager_variant,z_m,v_worker,v_manager"
        ",planner_variant,z_c,v_central"
        ",partnership_variant,z_p,v_partner\n";
  for (const SweepRow& row : table.rows) {
    detail::Cell zm{}, vw{}, vm{}, zc{}, vc{}, zp{}, vp{};
    detail::manager_cells(row.manager, zm, vw, vm);
    detail::planner_cells(row.planner, zc, vc);
    detail::partnership_cells(row.partnership, zp, vp);
    os << format_full(row.value) << ','
       << detail::manager_variant_name(row.manager.kind) << ','
       << detail::cell_text(zm) << ',' << detail::cell_text(vw) << ','
       << detail::cell_text(vm) << ','
       << detail::planner_variant_name(row.planner) << ','
       << detail::cell_text(zc) << ',' << detail::cell_text(vc) << ','
       << detail::partnership_variant_name(row.partnership.kind) << ','
       << detail::cell_text(zp) << ',' << detail::cell_text(vp) << '\n';
  }
}

}  // namespace mft
