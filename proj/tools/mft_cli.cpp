// Command-line front end: point solves of the three team-size regimes,
// parameter sweeps with CSV/SVG output, and Monte Carlo validation runs.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mft/mft.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUnclassified = 2;

struct ParamFlags {
  std::optional<double> K, p, eps, beta, theta, c, kappa0, k, delta;
  std::string preset;
};

void add_param_options(CLI::App* cmd, ParamFlags& f) {
  cmd->add_option("--K", f.K, "reward pie size (> 0)");
  cmd->add_option("--p", f.p, "reward convexity (> 0)");
  cmd->add_option("--eps", f.eps, "intra-team division exponent [0, 1]");
  cmd->add_option("--beta", f.beta, "fixed-salary proportion [0, 1)");
  cmd->add_option("--theta", f.theta, "manager share (0, 1)");
  cmd->add_option("--c", f.c, "effort cost coefficient (> 0)");
  cmd->add_option("--kappa0", f.kappa0, "fixed team cost (>= 0)");
  cmd->add_option("--k", f.k, "variable cost coefficient (> 0)");
  cmd->add_option("--delta", f.delta, "variable cost exponent (> 0)");
  cmd->add_option("--preset", f.preset, "named scenario (example1, example2)")
      ->check(CLI::IsMember({"example1", "example2"}));
}

mft::ModelParams resolve_params(const ParamFlags& f) {
  std::optional<mft::ModelParams> base;
  if (!f.preset.empty()) base = mft::find_preset(f.preset)->params;

  auto pick = [&](const std::optional<double>& flag, double preset_value,
                  const char* name) {
    if (flag) return *flag;
    if (base) return preset_value;
    throw std::invalid_argument(std::string("missing --") + name +
                                " (no preset given)");
  };
  const mft::ModelParams b =
      base.value_or(mft::ModelParams(1, 1, 0, 0, 0.5, 1, 0, 1, 1));
  return mft::ModelParams(
      pick(f.K, b.K, "K"), pick(f.p, b.p, "p"), pick(f.eps, b.eps, "eps"),
      pick(f.beta, b.beta, "beta"), pick(f.theta, b.theta, "theta"),
      pick(f.c, b.c, "c"), pick(f.kappa0, b.kappa0, "kappa0"),
      pick(f.k, b.k, "k"), pick(f.delta, b.delta, "delta"));
}

void print_kv(const char* key, const std::string& value) {
  std::printf("%s=%s\n", key, value.c_str());
}
void print_kv(const char* key, double value) {
  print_kv(key, mft::format_full(value));
}
void print_kv(const char* key, const char* value) {
  print_kv(key, std::string(value));
}

void print_effort(const mft::PowerProfile& effort) {
  print_kv("effort_coeff", effort.coeff);
  print_kv("effort_exponent", effort.exponent);
}

int solve_manager(const mft::ModelParams& P) {
  const mft::ManagerOutcome out = mft::manager_equilibrium(P);
  print_kv("regime", "manager");
  print_kv("variant", mft::detail::manager_variant_name(out.kind));
  switch (out.kind) {
    case mft::ManagerOutcome::Kind::ZeroTeam:
      print_kv("z_star", 0.0);
      print_kv("v_manager", 0.0);
      print_kv("v_worker", 0.0);
      break;
    case mft::ManagerOutcome::Kind::Interior: {
      const auto& sol = *out.interior;
      print_kv("z_star", sol.z_star);
      print_kv("v_manager", sol.v_manager);
      print_kv("v_worker", sol.v_worker);
      print_effort(sol.effort);
      const mft::VerifyResult check =
          mft::verify_manager_global_max(P, mft::TeamSize(sol.z_star));
      print_kv("global_max_verified", check.passed ? "true" : "false");
      break;
    }
    case mft::ManagerOutcome::Kind::NoEquilibrium:
      break;
  }
  return kExitOk;
}

int solve_planner(const mft::ModelParams& P) {
  const mft::PlannerOutcome out = mft::central_planner_optimum(P);
  print_kv("regime", "planner");
  print_kv("variant", mft::detail::planner_variant_name(out));
  using Kind = mft::PlannerOutcome::Kind;
  switch (out.kind) {
    case Kind::UniqueZero:
      print_kv("z_star", 0.0);
      print_kv("v_central", 0.0);
      break;
    case Kind::UniquePositive:
    case Kind::ZeroAndPositive: {
      print_kv("z_star", out.positive->z_star);
      print_kv("v_central", out.positive->v_central);
      if (out.positive->effort) print_effort(*out.positive->effort);
      const mft::VerifyResult check = mft::verify_planner_global_max(
          P, mft::TeamSize(out.positive->z_star));
      print_kv("global_max_verified", check.passed ? "true" : "false");
      break;
    }
    case Kind::Unclassified:
      print_kv("reason", out.diagnostics->reason);
      if (out.diagnostics->best_candidate)
        print_kv("best_candidate", *out.diagnostics->best_candidate);
      return kExitUnclassified;
    default:
      break;
  }
  return kExitOk;
}

int solve_partnership(const mft::ModelParams& P) {
  const mft::PartnershipOutcome out = mft::partnership_equilibrium(P);
  print_kv("regime", "partnership");
  print_kv("variant", mft::detail::partnership_variant_name(out.kind));
  switch (out.kind) {
    case mft::PartnershipOutcome::Kind::ZeroEquilibrium:
      print_kv("z_star", 0.0);
      print_kv("v_partner", 0.0);
      break;
    case mft::PartnershipOutcome::Kind::UniquePositive: {
      print_kv("z_star", out.positive->z_star);
      print_kv("v_partner", out.positive->v_partner);
      print_effort(out.positive->effort);
      const mft::VerifyResult check = mft::verify_partnership_global_max(
          P, mft::TeamSize(out.positive->z_star));
      print_kv("global_max_verified", check.passed ? "true" : "false");
      break;
    }
    case mft::PartnershipOutcome::Kind::Unclassified:
      print_kv("reason", out.diagnostics->reason);
      if (out.diagnostics->best_candidate)
        print_kv("best_candidate", *out.diagnostics->best_candidate);
      return kExitUnclassified;
  }
  return kExitOk;
}

int run_solve(const std::string& regime, const ParamFlags& flags) {
  const mft::ModelParams P = resolve_params(flags);
  if (regime == "manager") return solve_manager(P);
  if (regime == "planner") return solve_planner(P);
  return solve_partnership(P);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open output file: " + path);
  return os;
}

// Sentinel-aware y values for charting: numeric cells map to their value,
// sentinels to NaN (rendered as gaps).
double cell_y(const mft::detail::Cell& c) {
  return c.numeric ? c.value : std::numeric_limits<double>::quiet_NaN();
}

struct CurveSet {
  std::vector<double> x;
  std::vector<double> z_m, v_w, v_m, z_c, v_c, z_p, v_p;
};

CurveSet extract_curves(const mft::SweepTable& table) {
  CurveSet cs;
  for (const mft::SweepRow& row : table.rows) {
    mft::detail::Cell zm{}, vw{}, vm{}, zc{}, vc{}, zp{}, vp{};
    mft::detail::manager_cells(row.manager, zm, vw, vm);
    mft::detail::planner_cells(row.planner, zc, vc);
    mft::detail::partnership_cells(row.partnership, zp, vp);
    cs.x.push_back(row.value);
    cs.z_m.push_back(cell_y(zm));
    cs.v_w.push_back(cell_y(vw));
    cs.v_m.push_back(cell_y(vm));
    cs.z_c.push_back(cell_y(zc));
    cs.v_c.push_back(cell_y(vc));
    cs.z_p.push_back(cell_y(zp));
    cs.v_p.push_back(cell_y(vp));
  }
  return cs;
}

int run_sweep_cmd(const std::string& variable, const ParamFlags& flags,
                  std::optional<double> from, std::optional<double> to,
                  int steps, const std::string& out_path,
                  const std::string& svg_prefix) {
  if (variable != "theta" && variable != "beta")
    throw std::invalid_argument("sweep variable must be theta or beta");
  const double lo = from.value_or(0.0);
  const double hi = to.value_or(variable == "theta" ? 1.0 : 0.8);
  if (variable == "theta" && !(lo >= 0.0 && hi <= 1.0))
    throw std::invalid_argument("theta range must lie within [0, 1]");
  if (variable == "beta" && !(lo >= 0.0 && hi <= 1.0))
    throw std::invalid_argument("beta range must lie within [0, 1]");

  const mft::ModelParams P = resolve_params(flags);
  const mft::SweepTable table = mft::run_sweep(P, variable, lo, hi, steps);

  if (out_path.empty()) {
    mft::write_sweep_csv(std::cout, table);
  } else {
    std::ofstream os = open_output(out_path);
    mft::write_sweep_csv(os, table);
  }

  if (!svg_prefix.empty()) {
    const CurveSet cs = extract_curves(table);
    {
      std::ofstream os = open_output(svg_prefix + "_values.svg");
      mft::write_line_chart(os, "Worker values by regime", variable, "value",
                            {{"V^w (manager)", cs.x, cs.v_w},
                             {"V^c (planner)", cs.x, cs.v_c},
                             {"V^p (partnership)", cs.x, cs.v_p}});
    }
    {
      std::ofstream os = open_output(svg_prefix + "_sizes.svg");
      mft::write_line_chart(os, "Equilibrium / optimal team sizes", variable,
                            "team size",
                            {{"z_m (manager)", cs.x, cs.z_m},
                             {"z_c (planner)", cs.x, cs.z_c},
                             {"z_p (partnership)", cs.x, cs.z_p}});
    }
  }
  return kExitOk;
}

struct SimTarget {
  double z;
  double effective_cost;
  double payoff_scale;  // 1, or (1-theta) under a manager
};

SimTarget resolve_sim_target(const mft::ModelParams& P,
                             const std::string& regime,
                             std::optional<double> z_flag) {
  if (regime.empty()) {
    if (!z_flag)
      throw std::invalid_argument("simulate needs --regime or an explicit --z");
    return {*z_flag, P.c, 1.0};
  }
  if (regime == "manager") {
    const mft::ManagerOutcome out = mft::manager_equilibrium(P);
    if (out.kind != mft::ManagerOutcome::Kind::Interior) {
      std::fprintf(stderr,
                   "manager regime has no positive equilibrium size here\n");
      std::exit(kExitUnclassified);
    }
    return {out.interior->z_star, P.c / (1.0 - P.theta), 1.0 - P.theta};
  }
  if (regime == "planner") {
    const mft::PlannerOutcome out = mft::central_planner_optimum(P);
    if (!out.positive) {
      std::fprintf(stderr, "planner regime has no positive optimal size here\n");
      std::exit(kExitUnclassified);
    }
    return {out.positive->z_star, P.c, 1.0};
  }
  const mft::PartnershipOutcome out = mft::partnership_equilibrium(P);
  if (out.kind != mft::PartnershipOutcome::Kind::UniquePositive) {
    std::fprintf(stderr,
                 "partnership regime has no positive equilibrium size here\n");
    std::exit(kExitUnclassified);
  }
  return {out.positive->z_star, P.c, 1.0};
}

int run_simulate(const ParamFlags& flags, const std::string& regime,
                 std::uint64_t teams, std::uint64_t seed,
                 std::optional<double> z_flag, double deviation,
                 const std::string& out_path) {
  if (teams < 1) throw std::invalid_argument("--teams must be >= 1");
  const mft::ModelParams P = resolve_params(flags);
  const SimTarget target = resolve_sim_target(P, regime, z_flag);

  // The intra-team game under a manager is the standard game at effective
  // cost c/(1-theta), with member payoffs scaled by (1-theta).
  const mft::ModelParams sim_params(P.K, P.p, P.eps, P.beta, P.theta,
                                    target.effective_cost, P.kappa0, P.k,
                                    P.delta);
  const mft::TeamSize z(target.z);
  const mft::PowerProfile effort =
      mft::best_response_effort(sim_params, z, target.effective_cost);
  const mft::PowerProfile intensity(target.z * effort.coeff, effort.exponent);
  const mft::SimulationConfig cfg{teams, seed, sim_params, z, intensity,
                                  deviation};
  const mft::SimulationReport report = mft::run_simulation(cfg);

  print_kv("n_teams", mft::format_full(static_cast<double>(teams)));
  print_kv("seed", std::to_string(seed));
  print_kv("z", target.z);
  print_kv("intensity_coeff", intensity.coeff);
  print_kv("intensity_exponent", intensity.exponent);
  print_kv("mean_team_reward", report.team_reward.mean);
  print_kv("stderr_team_reward", report.team_reward.std_error);
  print_kv("mean_member_payoff", report.member_payoff.mean);
  print_kv("stderr_member_payoff", report.member_payoff.std_error);
  print_kv("mean_effort_cost", report.effort_cost.mean);
  print_kv("stderr_effort_cost", report.effort_cost.std_error);
  print_kv("probe_member_payoff", report.probe_payoff.mean);
  print_kv("stderr_probe_payoff", report.probe_payoff.std_error);
  print_kv("std_errors_defined", report.std_errors_defined ? "true" : "false");
  print_kv("ks_distance_vs_rho", report.ks_distance_vs_rho);
  print_kv("analytic_team_reward", P.K);
  print_kv("analytic_member_payoff",
           mft::symmetric_member_value(sim_params, z, mft::RankFraction(0.0)));
  if (target.payoff_scale != 1.0) {
    print_kv("worker_value_mean",
             target.payoff_scale * report.member_payoff.mean);
    print_kv("worker_value_analytic",
             target.payoff_scale * mft::symmetric_member_value(
                                       sim_params, z, mft::RankFraction(0.0)));
  }

  if (!out_path.empty()) {
    std::ofstream os = open_output(out_path);
    os << "tau,empirical_cdf,model_cdf\n";
    const double n = static_cast<double>(report.completion_times.size());
    for (std::size_t i = 0; i < report.completion_times.size(); ++i) {
      const double t = report.completion_times[i];
      os << mft::format_full(t) << ','
         << mft::format_full(static_cast<double>(i + 1) / n) << ','
         << mft::format_full(mft::rho_closed_form(intensity, t)) << '\n';
    }
  }
  return kExitOk;
}

void write_figure_csv(const std::string& path, const std::string& variable,
                      const std::vector<std::string>& headers,
                      const mft::SweepTable& table,
                      const std::vector<int>& columns) {
  // Column ids: 0 z_m, 1 v_w, 2 v_m, 3 z_c, 4 v_c, 5 z_p, 6 v_p.
  std::ofstream os = open_output(path);
  os << variable;
  for (const std::string& h : headers) os << ',' << h;
  os << '\n';
  for (const mft::SweepRow& row : table.rows) {
    mft::detail::Cell cells[7];
    mft::detail::manager_cells(row.manager, cells[0], cells[1], cells[2]);
    mft::detail::planner_cells(row.planner, cells[3], cells[4]);
    mft::detail::partnership_cells(row.partnership, cells[5], cells[6]);
    os << mft::format_full(row.value);
    for (int cid : columns) os << ',' << mft::detail::cell_text(cells[cid]);
    os << '\n';
  }
}

int run_figures(const ParamFlags& flags, const std::string& out_dir,
                int steps) {
  if (flags.preset.empty())
    throw std::invalid_argument("figures requires --preset");
  const mft::ScenarioPreset preset = *mft::find_preset(flags.preset);
  const mft::ModelParams P = resolve_params(flags);
  std::filesystem::create_directories(out_dir);
  const auto path = [&](const char* name) {
    return (std::filesystem::path(out_dir) / name).string();
  };

  const mft::SweepTable table = mft::run_sweep(
      P, preset.sweep_variable, preset.sweep_lo, preset.sweep_hi, steps);
  const CurveSet cs = extract_curves(table);
  const std::string& var = preset.sweep_variable;

  if (preset.name == "example1") {
    write_figure_csv(path("figure1.csv"), var,
                     {"v_worker", "v_central", "v_partner"}, table, {1, 4, 6});
    write_figure_csv(path("figure2.csv"), var, {"z_m", "z_c", "z_p"}, table,
                     {0, 3, 5});
    {
      std::ofstream os = open_output(path("figure1.svg"));
      mft::write_line_chart(os, "Worker values by regime", var, "value",
                            {{"V^w (manager)", cs.x, cs.v_w},
                             {"V^c (planner)", cs.x, cs.v_c},
                             {"V^p (partnership)", cs.x, cs.v_p}});
    }
    {
      std::ofstream os = open_output(path("figure2.svg"));
      mft::write_line_chart(os, "Team sizes by regime", var, "team size",
                            {{"z_m (manager)", cs.x, cs.z_m},
                             {"z_c (planner)", cs.x, cs.z_c},
                             {"z_p (partnership)", cs.x, cs.z_p}});
    }
  } else {
    write_figure_csv(path("figure3.csv"), var, {"v_worker", "v_partner"},
                     table, {1, 6});
    write_figure_csv(path("figure4.csv"), var, {"z_m", "z_p"}, table, {0, 5});
    {
      std::ofstream os = open_output(path("figure3.svg"));
      mft::write_line_chart(os, "Worker values by regime", var, "value",
                            {{"V^w (manager)", cs.x, cs.v_w},
                             {"V^p (partnership)", cs.x, cs.v_p}});
    }
    {
      std::ofstream os = open_output(path("figure4.svg"));
      mft::write_line_chart(os, "Team sizes by regime", var, "team size",
                            {{"z_m (manager)", cs.x, cs.z_m},
                             {"z_p (partnership)", cs.x, cs.z_p}});
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Equilibrium and optimal team sizes for rank-rewarded team "
      "competitions, with Monte Carlo validation"};
  app.require_subcommand(1);

  // solve
  std::string solve_regime;
  ParamFlags solve_flags;
  CLI::App* solve = app.add_subcommand(
      "solve", "classify one regime at a single parameter point");
  solve->add_option("regime", solve_regime, "manager | planner | partnership")
      ->required()
      ->check(CLI::IsMember({"manager", "planner", "partnership"}));
  add_param_options(solve, solve_flags);

  // sweep
  std::string sweep_variable;
  ParamFlags sweep_flags;
  std::optional<double> sweep_from, sweep_to;
  int sweep_steps = 200;
  std::string sweep_out, sweep_svg;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "sweep theta or beta and write a CSV of all three regimes");
  sweep->add_option("variable", sweep_variable, "theta | beta")
      ->required()
      ->check(CLI::IsMember({"theta", "beta"}));
  add_param_options(sweep, sweep_flags);
  sweep->add_option("--from", sweep_from, "sweep range start");
  sweep->add_option("--to", sweep_to, "sweep range end");
  sweep->add_option("--steps", sweep_steps, "number of grid points");
  sweep->add_option("--out", sweep_out, "CSV output path (default: stdout)");
  sweep->add_option("--svg", sweep_svg,
                    "also write <prefix>_values.svg and <prefix>_sizes.svg");

  // simulate
  ParamFlags sim_flags;
  std::string sim_regime;
  std::uint64_t sim_teams = 100000;
  std::uint64_t sim_seed = 0;
  std::optional<double> sim_z;
  double sim_deviation = 1.0;
  std::string sim_out;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "finite-population Monte Carlo run at an equilibrium");
  add_param_options(simulate, sim_flags);
  simulate->add_option("--regime", sim_regime,
                       "equilibrium to simulate: manager|planner|partnership")
      ->check(CLI::IsMember({"manager", "planner", "partnership"}));
  simulate->add_option("--teams", sim_teams, "number of teams (>= 1)");
  simulate->add_option("--seed", sim_seed, "random seed (default 0)");
  simulate->add_option("--z", sim_z, "team size override (skip the solver)");
  simulate->add_option("--deviation", sim_deviation,
                       "probe member effort multiplier (default 1)");
  simulate->add_option("--out", sim_out, "write empirical CDF CSV here");

  // figures
  ParamFlags fig_flags;
  std::string fig_out = "figures";
  int fig_steps = 400;
  CLI::App* figures = app.add_subcommand(
      "figures", "emit the preset's value/size figure data and SVG charts");
  add_param_options(figures, fig_flags);
  figures->add_option("--out", fig_out, "output directory");
  figures->add_option("--steps", fig_steps, "sweep resolution");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return run_solve(solve_regime, solve_flags);
    if (sweep->parsed())
      return run_sweep_cmd(sweep_variable, sweep_flags, sweep_from, sweep_to,
                           sweep_steps, sweep_out, sweep_svg);
    if (simulate->parsed())
      return run_simulate(sim_flags, sim_regime, sim_teams, sim_seed, sim_z,
                          sim_deviation, sim_out);
    if (figures->parsed()) return run_figures(fig_flags, fig_out, fig_steps);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitOk;
}
