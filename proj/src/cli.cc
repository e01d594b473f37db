// Copyright 2026 The Utildesign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "utildesign/cli.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "utildesign/dynamics.h"
#include "utildesign/error.h"
#include "utildesign/experiments.h"
#include "utildesign/game.h"
#include "utildesign/json_io.h"
#include "utildesign/lp.h"
#include "utildesign/mechanism.h"
#include "utildesign/welfare.h"

namespace utildesign {
namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string FormatReal(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double ParseReal(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end) {
    throw UsageError("not a number: '" + s + "'");
  }
  return v;
}

void Emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
  file << text;
}

struct Options {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

  // mechanism
  double alpha = -1.0;
  int beta = 0;
  int n = 0;
  std::string welfare_path;
  std::string kind = "universal";
  double c = 1.0;

  // poa-lp / verify
  bool relaxed = false;
  std::vector<std::string> verify_pair;
  std::string utility_path;
  double rho = 0.0;

  // analyze / dynamics
  std::string game_path;
  std::uint64_t budget = kDefaultEnumerationBudget;
  int steps = 100;
  std::string start = "first";

  // fig2 / fig3
  std::string pgrid = "0:1:0.1";
  int fig_n = 10;
  std::string out_path;
  std::string p_list = "0.5,0.6,0.7";
  int instances = 1000;
  std::uint64_t seed = 0;
  std::string mechanisms = "universal,identical_interest,equal_shares";
  bool shared_starts = false;
  bool resample_duplicates = false;
};

std::vector<std::string> SplitCommas(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

Json CmdMechanism(const Options& o, CLI::App& cmd) {
  const bool coverage = cmd.count("--alpha") + cmd.count("--beta") > 0;
  if (coverage == !o.welfare_path.empty()) {
    throw UsageError("mechanism needs either --alpha/--beta/--n or --welfare");
  }
  if (coverage) {
    if (cmd.count("--alpha") == 0 || cmd.count("--beta") == 0 || cmd.count("--n") == 0) {
      throw UsageError("coverage mode needs --alpha, --beta and --n");
    }
    const MechanismResult r = CoverageUtility(CoverageParams(o.alpha, o.beta), o.n);
    return Json{{"utility", ToJson(r.utility)}, {"rho", r.rho}, {"poa", r.poa}};
  }
  const WelfareTable w = WelfareFromJson(ReadJsonFile(o.welfare_path));
  UtilityTable f = [&] {
    if (o.kind == "universal") return UniversalUtility(w, o.c);
    if (o.kind == "equal_shares") return EqualSharesUtility(w);
    if (o.kind == "marginal") return MarginalContributionUtility(w);
    throw UsageError("--kind must be universal, equal_shares or marginal");
  }();
  const double rho = MinFeasibleRho(w, f);
  return Json{{"utility", ToJson(f)}, {"rho", rho}, {"poa", 1.0 / rho}};
}

Json CmdPoaLp(const Options& o) {
  const WelfareTable w = WelfareFromJson(ReadJsonFile(o.welfare_path));
  if (!o.verify_pair.empty()) {
    const UtilityTable f = UtilityFromJson(ReadJsonFile(o.verify_pair[0]));
    return ToJson(VerifyFeasibility(w, f, ParseReal(o.verify_pair[1])));
  }
  return ToJson(o.relaxed ? SolveRelaxed(w) : SolveOptimalMechanism(w));
}

Json CmdVerify(const Options& o) {
  const WelfareTable w = WelfareFromJson(ReadJsonFile(o.welfare_path));
  const UtilityTable f = UtilityFromJson(ReadJsonFile(o.utility_path));
  return ToJson(VerifyFeasibility(w, f, o.rho));
}

Json CmdAnalyze(const Options& o) {
  const GameInstance g = GameFromJson(ReadJsonFile(o.game_path));
  const PoaResult r = ExactPoa(g, o.budget);
  return Json{
      {"optimum", {{"allocation", ToJson(r.optimum)}, {"welfare", r.optimum_welfare}}},
      {"nash_count", r.nash_count},
      {"poa", r.poa},
      {"worst_ne",
       {{"allocation", ToJson(r.worst_equilibrium)}, {"welfare", r.worst_welfare}}}};
}

Json CmdDynamics(const Options& o) {
  const GameInstance g = GameFromJson(ReadJsonFile(o.game_path));
  Allocation start;
  if (o.start == "first") {
    start = FirstActionStart(g);
  } else if (o.start.rfind("random:", 0) == 0) {
    const std::string seed_text = o.start.substr(7);
    std::uint64_t seed = 0;
    const auto res =
        std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
    if (res.ec != std::errc() || res.ptr != seed_text.data() + seed_text.size()) {
      throw UsageError("--start random:<seed> needs an unsigned integer seed");
    }
    start = RandomStart(g, seed);
  } else {
    throw UsageError("--start must be 'first' or 'random:<seed>'");
  }
  const Trajectory traj = RunRoundRobin(g, start, o.steps);
  Json out{{"steps", o.steps},
           {"start", ToJson(start)},
           {"final", ToJson(traj.final_state())},
           {"final_welfare", traj.welfare_series.back()},
           {"welfare_series", traj.welfare_series},
           {"converged", traj.converged_at.has_value()}};
  if (traj.converged_at) {
    out["converged_at"] = *traj.converged_at;
    out["settled_at"] = *traj.settled_at(g.num_players());
    out["efficiency"] = EquilibriumEfficiency(g, traj, o.budget);
  } else {
    out["converged_at"] = nullptr;
  }
  return out;
}

std::string CmdFig2(const Options& o) {
  const std::vector<double> grid = ParseGrid(o.pgrid);
  std::string csv = "p,optimal,universal,bound\n";
  for (const Figure2Row& row : Figure2Sweep(grid, o.fig_n)) {
    csv += FormatReal(row.p) + "," + FormatReal(row.poa_optimal) + "," +
           FormatReal(row.poa_universal) + "," + FormatReal(row.lower_bound) + "\n";
  }
  return csv;
}

Json CmdFig3(const Options& o, std::ostream& err) {
  std::vector<Mechanism> mechanisms;
  for (const std::string& name : SplitCommas(o.mechanisms)) {
    mechanisms.push_back(ParseMechanism(name));
  }
  if (mechanisms.empty()) throw UsageError("--mechanisms must name at least one mechanism");
  std::vector<double> ps;
  for (const std::string& p : SplitCommas(o.p_list)) ps.push_back(ParseReal(p));
  if (ps.empty()) throw UsageError("--p must list at least one value");

  Json results = Json::array();
  for (double p : ps) {
    VehicleTargetConfig cfg;
    cfg.n_vehicles = o.fig_n;
    cfg.p = p;
    cfg.master_seed = o.seed;
    cfg.instances = o.instances;
    cfg.iterations = o.steps;
    cfg.shared_starts = o.shared_starts;
    cfg.resample_duplicates = o.resample_duplicates;
    const std::vector<MechanismRun> runs = RunMonteCarlo(cfg, mechanisms, o.threads);
    Json per = Json::object();
    for (const MechanismRun& run : runs) {
      Json entry{{"ratios", run.ratios}, {"nonconverged", run.nonconverged}};
      entry["stats"] = run.ratios.empty() ? Json(nullptr) : ToJson(ComputeBoxStats(run.ratios));
      per[std::string(MechanismName(run.mechanism))] = std::move(entry);
    }
    results.push_back(Json{{"p", p}, {"mechanisms", std::move(per)}});
    err << "fig3: p=" << FormatReal(p) << " done (" << o.instances << " instances)\n";
  }
  return Json{{"config",
               {{"n", o.fig_n},
                {"instances", o.instances},
                {"seed", o.seed},
                {"T", o.steps},
                {"shared_starts", o.shared_starts},
                {"resample_duplicates", o.resample_duplicates}}},
              {"results", std::move(results)}};
}

}  // namespace

std::vector<double> ParseGrid(const std::string& spec) {
  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("grid must look like start:stop:step");
    const double start = ParseReal(parts[0]);
    const double stop = ParseReal(parts[1]);
    const double step = ParseReal(parts[2]);
    if (!(step > 0.0) || stop < start) throw UsageError("grid needs step > 0 and stop >= start");
    const long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
    for (long i = 0; i < count; ++i) {
      // Snap to the step's decimal grid so 0.1 * 3 prints as 0.3.
      const double v = start + i * step;
      grid.push_back(std::round(v * 1e12) / 1e12);
    }
    return grid;
  }
  for (const std::string& item : SplitCommas(spec)) grid.push_back(ParseReal(item));
  if (grid.empty()) throw UsageError("grid is empty");
  return grid;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Utility design for resource allocation games", "utildesign"};
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "Worker threads (1 forces serial execution)")
      ->check(CLI::PositiveNumber);

  auto* mechanism = app.add_subcommand(
      "mechanism", "Local utility for a coverage function or a welfare table");
  mechanism->add_option("--alpha", o.alpha, "Coverage alpha in [0, 1]");
  mechanism->add_option("--beta", o.beta, "Coverage beta >= 1");
  mechanism->add_option("--n", o.n, "Maximum number of players");
  mechanism->add_option("--welfare", o.welfare_path, "Welfare table JSON");
  mechanism->add_option("--kind", o.kind, "universal | equal_shares | marginal")
      ->capture_default_str();
  mechanism->add_option("--c", o.c, "Curvature bound for the universal mechanism")
      ->capture_default_str();

  auto* poa_lp = app.add_subcommand("poa-lp", "Optimal local utility by linear programming");
  poa_lp->add_option("--welfare", o.welfare_path, "Welfare table JSON")->required();
  poa_lp->add_flag("--relaxed", o.relaxed, "Solve the relaxed program");
  poa_lp->add_option("--verify", o.verify_pair, "Check a (utility JSON, rho) pair instead")
      ->expected(2);

  auto* verify = app.add_subcommand("verify", "Check (F, rho) against every LP constraint");
  verify->add_option("--welfare", o.welfare_path, "Welfare table JSON")->required();
  verify->add_option("--utility", o.utility_path, "Utility table JSON")->required();
  verify->add_option("--rho", o.rho, "Efficiency multiplier")->required();

  auto* analyze = app.add_subcommand("analyze", "Exact pure-Nash price of anarchy of a game");
  analyze->add_option("--game", o.game_path, "Game JSON")->required();
  analyze->add_option("--budget", o.budget, "Enumeration budget")->capture_default_str();

  auto* dynamics = app.add_subcommand("dynamics", "Round-robin best-response dynamics");
  dynamics->add_option("--game", o.game_path, "Game JSON")->required();
  dynamics->add_option("--T", o.steps, "Iterations")->capture_default_str()->check(
      CLI::PositiveNumber);
  dynamics->add_option("--start", o.start, "first | random:<seed>")->capture_default_str();
  dynamics->add_option("--budget", o.budget, "Enumeration budget")->capture_default_str();

  auto* fig2 = app.add_subcommand("fig2", "Price of anarchy sweep over p (CSV)");
  fig2->add_option("--pgrid", o.pgrid, "start:stop:step or comma list")->capture_default_str();
  fig2->add_option("--n", o.fig_n, "Number of players")->capture_default_str()->check(
      CLI::PositiveNumber);
  fig2->add_option("--out", o.out_path, "Output CSV (stdout when omitted)");

  auto* fig3 = app.add_subcommand("fig3", "Monte Carlo equilibrium efficiency study (JSON)");
  fig3->add_option("--p", o.p_list, "Comma-separated p values")->capture_default_str();
  fig3->add_option("--instances", o.instances, "Instances per p")->capture_default_str()->check(
      CLI::PositiveNumber);
  fig3->add_option("--seed", o.seed, "Master seed")->capture_default_str();
  fig3->add_option("--T", o.steps, "Best-response iterations")->capture_default_str()->check(
      CLI::PositiveNumber);
  fig3->add_option("--n", o.fig_n, "Vehicles")->capture_default_str()->check(
      CLI::PositiveNumber);
  fig3->add_option("--mechanisms", o.mechanisms, "Comma-separated mechanisms")
      ->capture_default_str();
  fig3->add_flag("--shared-starts", o.shared_starts,
                 "Use one start allocation per instance for all mechanisms");
  fig3->add_flag("--resample-duplicates", o.resample_duplicates,
                 "Redraw duplicate target pairs");
  fig3->add_option("--out", o.out_path, "Output JSON (stdout when omitted)");

  // CLI11 consumes a reversed argument list; args[0] is the program name.
  std::vector<std::string> rest;
  if (!args.empty()) rest.assign(args.rbegin(), args.rend() - 1);
  try {
    app.parse(rest);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (mechanism->parsed()) {
      out << DumpJson(CmdMechanism(o, *mechanism));
    } else if (poa_lp->parsed()) {
      out << DumpJson(CmdPoaLp(o));
    } else if (verify->parsed()) {
      out << DumpJson(CmdVerify(o));
    } else if (analyze->parsed()) {
      out << DumpJson(CmdAnalyze(o));
    } else if (dynamics->parsed()) {
      out << DumpJson(CmdDynamics(o));
    } else if (fig2->parsed()) {
      Emit(CmdFig2(o), o.out_path, out);
    } else if (fig3->parsed()) {
      Emit(DumpJson(CmdFig3(o, err)), o.out_path, out);
    }
  } catch (const std::invalid_argument& e) {
    err << e.what() << "\n\n" << app.help();
    return 2;
  } catch (const Error& e) {
    err << Json{{"error", ErrorCodeName(e.code())}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    err << Json{{"error", ErrorCodeName(ErrorCode::kInvalidArgument)}, {"message", e.what()}}
               .dump()
        << "\n";
    return 1;
  }
  return 0;
}

}  // namespace utildesign
