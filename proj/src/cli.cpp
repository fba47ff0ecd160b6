#include "lerc/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "lerc/ce_controller.hpp"
#include "lerc/certify.hpp"
#include "lerc/errors.hpp"
#include "lerc/io.hpp"
#include "lerc/observer.hpp"
#include "lerc/riccati.hpp"
#include "lerc/verify/adversary.hpp"
#include "lerc/verify/oracle.hpp"
#include "lerc/verify/simulate.hpp"

namespace lerc::cli {
namespace {

using io::json;

// Writes `text` to `path`, or to `out` when no path was given.
void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  require(static_cast<bool>(file), fmt::format("cannot open '{}' for writing", path));
  file << text;
  require(static_cast<bool>(file), fmt::format("failed writing '{}'", path));
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double h = n > 1 ? (hi - lo) / (n - 1) : 0.0;
  for (int i = 0; i < n; ++i) grid[i] = i + 1 == n && n > 1 ? hi : lo + i * h;
  return grid;
}

struct RiccatiArgs {
  double a = 0.0, gamma = 0.0, c = 1.0;
};

struct CertifyArgs {
  double a = 0.0, gamma = 0.0;
};

struct GammaStarArgs {
  double a = 0.0, tol = 1e-6;
};

struct SweepArgs {
  double a_min = 0.0, a_max = 0.0, tol = 1e-6;
  int steps = 0;
  std::string out;
};

struct SimulateArgs {
  double a = 0.0, b_true = 1.0, gamma = 0.0, x0 = 0.0, amplitude = 1.0;
  int horizon = 0, restarts = 20;
  std::string disturbance = "impulse";
  std::uint64_t seed = 0;
  std::string out;
};

struct VerifyArgs {
  int trials = 100, horizon = 6;
  double gamma = 4.0;
  std::uint64_t seed = 0;
  std::string models;
  std::string out;
};

struct FigureArgs {
  std::string which;
  double a = 1.0, gamma = 4.0, x_hat = 1.0, l1 = 0.0, y_min = 0.3, y_max = 0.9;
  std::optional<double> lm1;
  int points = 121;
  double tol = 1e-6;
  std::string out;
};

int do_riccati(const RiccatiArgs& args, std::ostream& out) {
  const RiccatiResult r = solve_riccati(Model::make(args.a, 1.0, args.c), args.gamma);
  if (const auto* bad = std::get_if<Infeasible>(&r)) {
    out << dump(json{{"feasible", false}, {"reason", bad->reason}});
    return kExitNegative;
  }
  out << dump(io::to_json(std::get<SolvedModel>(r)));
  return kExitOk;
}

int do_certify(const CertifyArgs& args, std::ostream& out) {
  const CertificationReport r = certify(args.a, args.gamma);
  out << dump(io::to_json(r));
  return r.certified ? kExitOk : kExitNegative;
}

int do_gamma_star(const GammaStarArgs& args, std::ostream& out) {
  const GammaStarSearch s = find_gamma_star(args.a, args.tol);
  out << dump(io::to_json(s));
  return s.gamma && s.within_bounds ? kExitOk : kExitNegative;
}

int write_sweep(const std::vector<SweepRow>& rows, const std::string& path,
                std::ostream& out) {
  std::ostringstream csv;
  io::write_sweep_csv(csv, rows);
  emit(csv.str(), path, out);
  const bool clean = std::all_of(rows.begin(), rows.end(),
                                 [](const SweepRow& r) { return r.error.empty(); });
  return clean ? kExitOk : kExitNegative;
}

int do_sweep(const SweepArgs& args, std::ostream& out) {
  return write_sweep(sweep(args.a_min, args.a_max, args.steps, args.tol), args.out, out);
}

int do_simulate(const SimulateArgs& args, std::ostream& out) {
  const auto kind = verify::parse_disturbance_kind(args.disturbance);
  require(kind.has_value(), fmt::format("unknown disturbance '{}'", args.disturbance));
  require(args.horizon >= 0, "horizon must be nonnegative");

  SimulationTrace trace;
  if (*kind == verify::DisturbanceKind::kAdversarial) {
    verify::AdversaryOptions options;
    options.b_values = {args.b_true};
    const verify::AdversarialResult worst = verify::adversarial_gain(
        args.a, args.gamma, args.horizon, args.restarts, args.seed, options);
    trace = verify::simulate_with_signals(args.a, args.b_true, args.gamma, worst.x0,
                                          worst.w, worst.v,
                                          std::string(verify::kPrngName));
  } else {
    // White plans draw w from seed and v from seed + 1. Other kinds act on w
    // only and leave v at zero.
    const bool white = *kind == verify::DisturbanceKind::kWhite;
    const auto plan_w = verify::DisturbancePlan::make(*kind, args.seed, args.amplitude,
                                                      args.horizon);
    const auto plan_v = verify::DisturbancePlan::make(
        white ? *kind : verify::DisturbanceKind::kZero, args.seed + 1, args.amplitude,
        args.horizon);
    trace = verify::simulate_closed_loop(args.a, args.b_true, args.gamma, args.x0,
                                         plan_w, plan_v, args.horizon);
  }

  std::ostringstream csv;
  io::write_trace_csv(csv, trace);
  const double max_alpha = *std::max_element(trace.alpha.begin(), trace.alpha.end());
  const bool ok = max_alpha <= kPastCostSlack;
  if (args.out.empty()) {
    out << csv.str();
  } else {
    emit(csv.str(), args.out, out);
    json meta = io::trace_meta(trace);
    meta["disturbance"] = args.disturbance;
    meta["seed"] = args.seed;
    meta["amplitude"] = args.amplitude;
    meta["x0"] = trace.x.front();
    emit(dump(meta), args.out + ".meta.json", out);
    out << dump(json{{"max_alpha", max_alpha}, {"finite_gain", ok}});
  }
  return ok ? kExitOk : kExitNegative;
}

int do_verify(const VerifyArgs& args, std::ostream& out) {
  std::vector<Model> models;
  if (args.models.empty()) {
    for (double a : {0.0, 0.5, 1.0, 2.0}) {
      for (double b : {1.0, -1.0}) models.push_back(Model::make(a, b, 1.0));
    }
  } else {
    std::ifstream file(args.models);
    require(static_cast<bool>(file), fmt::format("cannot open '{}'", args.models));
    const ModelSet loaded = io::model_set_from_json(json::parse(file));
    models.assign(loaded.models().begin(), loaded.models().end());
  }
  const verify::OracleReport report = verify::run_oracle_trials(
      ModelSet(std::move(models)), args.gamma, args.trials, args.horizon, args.seed);
  emit(dump(io::to_json(report)), args.out, out);
  return report.failures.empty() ? kExitOk : kExitNegative;
}

int do_figure(const FigureArgs& args, std::ostream& out) {
  require(args.points >= 2, "figure: --points must be at least 2");
  if (args.which == "gammascaling") {
    return write_sweep(sweep_points(linspace(-6.0, 6.0, args.points), args.tol),
                       args.out, out);
  }
  require(args.which == "quadfuns", fmt::format("figure: unknown --which '{}'", args.which));
  const CeController ctrl = CeController::make(args.a, args.gamma);
  const double lm1 = args.lm1.value_or(-ctrl.P / (ctrl.P - 1.0));
  const auto rows = figure_quadfuns(args.a, args.gamma, args.x_hat, args.l1, lm1,
                                    linspace(args.y_min, args.y_max, args.points));
  std::ostringstream csv;
  io::write_quadfuns_csv(csv, rows);
  emit(csv.str(), args.out, out);
  return kExitOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimax adaptive control for scalar systems with unknown input sign",
               "lerc"};
  app.require_subcommand(1);

  RiccatiArgs riccati_args;
  auto* riccati = app.add_subcommand("riccati", "Stationary Riccati solution and gains");
  riccati->add_option("--a", riccati_args.a, "pole")->required();
  riccati->add_option("--gamma", riccati_args.gamma, "gain bound")->required();
  riccati->add_option("--c", riccati_args.c, "output gain")->capture_default_str();

  CertifyArgs certify_args;
  auto* certify_cmd = app.add_subcommand("certify", "Check the gain certificate");
  certify_cmd->add_option("--a", certify_args.a, "pole")->required();
  certify_cmd->add_option("--gamma", certify_args.gamma, "gain bound")->required();

  GammaStarArgs gs_args;
  auto* gs = app.add_subcommand("gamma-star", "Smallest certified gain bound");
  gs->add_option("--a", gs_args.a, "pole")->required();
  gs->add_option("--tol", gs_args.tol, "bisection tolerance")->capture_default_str();

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "gamma-star over a grid of poles");
  sweep_cmd->add_option("--a-min", sweep_args.a_min, "first pole")->required();
  sweep_cmd->add_option("--a-max", sweep_args.a_max, "last pole")->required();
  sweep_cmd->add_option("--steps", sweep_args.steps, "grid points (>= 2)")->required();
  sweep_cmd->add_option("--tol", sweep_args.tol, "bisection tolerance")
      ->capture_default_str();
  sweep_cmd->add_option("--out", sweep_args.out, "CSV path (default stdout)");

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate", "Closed-loop simulation trace");
  sim->add_option("--a", sim_args.a, "pole")->required();
  sim->add_option("--b-true", sim_args.b_true, "hidden input gain, +1 or -1")
      ->required()
      ->check(CLI::IsMember({1.0, -1.0}));
  sim->add_option("--gamma", sim_args.gamma, "gain bound")->required();
  sim->add_option("--horizon", sim_args.horizon, "T")->required();
  sim->add_option("--disturbance", sim_args.disturbance, "signal kind")
      ->check(CLI::IsMember({"zero", "impulse", "white", "sine", "adversarial"}))
      ->capture_default_str();
  sim->add_option("--seed", sim_args.seed, "PRNG seed")->capture_default_str();
  sim->add_option("--x0", sim_args.x0, "initial state")->capture_default_str();
  sim->add_option("--amplitude", sim_args.amplitude, "signal amplitude")
      ->capture_default_str();
  sim->add_option("--restarts", sim_args.restarts, "adversary restarts")
      ->capture_default_str();
  sim->add_option("--out", sim_args.out, "CSV path; also writes <out>.meta.json");

  VerifyArgs verify_args;
  auto* ver = app.add_subcommand("verify-lemma", "Past-cost recursion vs QP oracle");
  ver->add_option("--trials", verify_args.trials, "trials per model")
      ->capture_default_str();
  ver->add_option("--horizon", verify_args.horizon, "largest horizon (<= 8)")
      ->capture_default_str();
  ver->add_option("--seed", verify_args.seed, "PRNG seed")->capture_default_str();
  ver->add_option("--gamma", verify_args.gamma, "gain bound")->capture_default_str();
  ver->add_option("--models", verify_args.models, "model set JSON");
  ver->add_option("--out", verify_args.out, "JSON path (default stdout)");

  FigureArgs fig_args;
  auto* fig = app.add_subcommand("figure", "Plot-ready data");
  fig->add_option("--which", fig_args.which, "quadfuns or gammascaling")
      ->required()
      ->check(CLI::IsMember({"quadfuns", "gammascaling"}));
  fig->add_option("--a", fig_args.a, "pole")->capture_default_str();
  fig->add_option("--gamma", fig_args.gamma, "gain bound")->capture_default_str();
  fig->add_option("--xhat", fig_args.x_hat, "merged estimate")->capture_default_str();
  fig->add_option("--l1", fig_args.l1, "past cost, b = +1")->capture_default_str();
  fig->add_option("--lm1", fig_args.lm1, "past cost, b = -1 (default -P/(P-1))");
  fig->add_option("--y-min", fig_args.y_min, "first y")->capture_default_str();
  fig->add_option("--y-max", fig_args.y_max, "last y")->capture_default_str();
  fig->add_option("--points", fig_args.points, "grid points")->capture_default_str();
  fig->add_option("--tol", fig_args.tol, "bisection tolerance")->capture_default_str();
  fig->add_option("--out", fig_args.out, "CSV path (default stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitError;
  }

  try {
    if (*riccati) return do_riccati(riccati_args, out);
    if (*certify_cmd) return do_certify(certify_args, out);
    if (*gs) return do_gamma_star(gs_args, out);
    if (*sweep_cmd) return do_sweep(sweep_args, out);
    if (*sim) return do_simulate(sim_args, out);
    if (*ver) return do_verify(verify_args, out);
    if (*fig) return do_figure(fig_args, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace lerc::cli
