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

#include "utildesign/experiments.h"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include "utildesign/dynamics.h"
#include "utildesign/error.h"
#include "utildesign/lp.h"
#include "utildesign/mechanism.h"

namespace utildesign {
namespace {

constexpr std::uint64_t kInstanceTag = 0x1000;
constexpr std::uint64_t kSharedStartTag = 0x2000;
constexpr std::uint64_t kStartTagBase = 0x3000;

struct InstanceOutcome {
  double ratio = 0.0;
  int settle_step = 0;
  bool converged = false;
};

}  // namespace

void VehicleTargetConfig::Validate() const {
  if (n_vehicles < 1) throw Error(ErrorCode::kInvalidArgument, "n_vehicles must be >= 1");
  if (!(p > 0.0 && p <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "p must lie in (0, 1]");
  if (!(value_lo >= 0.0 && value_hi > value_lo)) {
    throw Error(ErrorCode::kInvalidArgument, "value range must satisfy 0 <= lo < hi");
  }
  if (instances < 1) throw Error(ErrorCode::kInvalidArgument, "instances must be >= 1");
  if (iterations < 1) throw Error(ErrorCode::kInvalidArgument, "iterations must be >= 1");
}

std::string_view MechanismName(Mechanism m) {
  switch (m) {
    case Mechanism::kUniversal:
      return "universal";
    case Mechanism::kIdenticalInterest:
      return "identical_interest";
    case Mechanism::kEqualShares:
      return "equal_shares";
  }
  return "unknown";
}

Mechanism ParseMechanism(std::string_view name) {
  if (name == "universal") return Mechanism::kUniversal;
  if (name == "identical_interest") return Mechanism::kIdenticalInterest;
  if (name == "equal_shares") return Mechanism::kEqualShares;
  throw Error(ErrorCode::kInvalidArgument, "unknown mechanism '" + std::string(name) + "'");
}

std::uint64_t SubstreamSeed(std::uint64_t master, std::uint64_t index, std::uint64_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    static_cast<std::uint32_t>(tag)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

GameInstance GenerateInstance(const VehicleTargetConfig& cfg, int index) {
  cfg.Validate();
  if (index < 0) throw Error(ErrorCode::kInvalidArgument, "instance index must be >= 0");
  std::mt19937_64 rng(SubstreamSeed(cfg.master_seed, static_cast<std::uint64_t>(index),
                                    kInstanceTag));
  const int n = cfg.n_vehicles;
  const int targets = cfg.n_targets();
  std::uniform_int_distribution<int> pick(0, targets - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<std::vector<Action>> actions(n);
  for (int i = 0; i < n; ++i) {
    const int j = pick(rng);
    int k = pick(rng);
    while (cfg.resample_duplicates && targets > 1 && k == j) k = pick(rng);
    actions[i].push_back({j});
    if (k != j) actions[i].push_back({k});
  }
  std::vector<std::string> names;
  std::vector<WelfareTable> welfare;
  names.reserve(targets);
  welfare.reserve(targets);
  const double q = 1.0 - cfg.p;
  for (int t = 0; t < targets; ++t) {
    // hi - (hi - lo) U[0,1) lies in (lo, hi], so v_t > 0.
    const double v = cfg.value_hi - (cfg.value_hi - cfg.value_lo) * unit(rng);
    names.push_back("t" + std::to_string(t + 1));
    welfare.push_back(WelfareTable::FromFunction(
        n, [&](int x) { return x == 0 ? 0.0 : v * (1.0 - std::pow(q, x)); }));
  }
  return GameInstance::IdenticalInterest(std::move(names), std::move(actions),
                                         std::move(welfare));
}

GameInstance ApplyMechanism(const GameInstance& g, Mechanism m) {
  if (m == Mechanism::kIdenticalInterest) return g.WithIdenticalInterest();
  std::vector<UtilityTable> utilities;
  utilities.reserve(g.num_resources());
  for (const WelfareTable& w : g.welfare()) {
    utilities.push_back(m == Mechanism::kUniversal ? UniversalUtility(w, 1.0)
                                                   : EqualSharesUtility(w));
  }
  return g.WithLocalUtilities(std::move(utilities));
}

std::vector<MechanismRun> RunMonteCarlo(const VehicleTargetConfig& cfg,
                                        std::span<const Mechanism> mechanisms,
                                        int threads) {
  cfg.Validate();
  const int count = cfg.instances;
  const std::size_t mech_count = mechanisms.size();
  std::vector<std::vector<InstanceOutcome>> outcomes(
      mech_count, std::vector<InstanceOutcome>(count));

  std::atomic<int> next{0};
  std::mutex error_mu;
  std::optional<Error> first_error;
  auto worker = [&] {
    while (true) {
      const int index = next.fetch_add(1);
      if (index >= count) return;
      try {
        const GameInstance base = GenerateInstance(cfg, index);
        const double optimum = ExhaustiveOptimum(base).welfare;
        for (std::size_t k = 0; k < mech_count; ++k) {
          const GameInstance g = ApplyMechanism(base, mechanisms[k]);
          const std::uint64_t tag =
              cfg.shared_starts ? kSharedStartTag
                                : kStartTagBase + static_cast<std::uint64_t>(mechanisms[k]);
          const Allocation start = RandomStart(
              g, SubstreamSeed(cfg.master_seed, static_cast<std::uint64_t>(index), tag));
          const Trajectory traj = RunRoundRobin(g, start, cfg.iterations);
          InstanceOutcome& out = outcomes[k][index];
          out.converged = traj.converged_at.has_value();
          if (out.converged) {
            out.ratio = EquilibriumEfficiency(g, traj, optimum);
            out.settle_step = *traj.settled_at(g.num_players());
          }
        }
      } catch (const Error& e) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!first_error) first_error = e;
        return;
      }
    }
  };
  const int workers = std::max(1, std::min(threads, count));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (first_error) throw *first_error;

  std::vector<MechanismRun> runs;
  runs.reserve(mech_count);
  for (std::size_t k = 0; k < mech_count; ++k) {
    MechanismRun run{mechanisms[k], {}, {}, {}};
    for (int index = 0; index < count; ++index) {
      const InstanceOutcome& out = outcomes[k][index];
      if (out.converged) {
        run.ratios.push_back(out.ratio);
        run.settle_steps.push_back(out.settle_step);
      } else {
        run.nonconverged.push_back(index);
      }
    }
    runs.push_back(std::move(run));
  }
  return runs;
}

BoxStats ComputeBoxStats(std::span<const double> values) {
  if (values.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "box statistics need at least one value");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  auto quantile = [&](double q) {
    const double h = (sorted.size() - 1) * q;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= sorted.size()) return sorted.back();
    return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
  };
  return BoxStats{sorted.front(), quantile(0.25), quantile(0.5), quantile(0.75),
                  sorted.back()};
}

std::vector<Figure2Row> Figure2Sweep(std::span<const double> p_grid, int n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  std::vector<Figure2Row> rows;
  rows.reserve(p_grid.size());
  for (double p : p_grid) {
    if (!(p >= 0.0 && p <= 1.0)) {
      std::ostringstream os;
      os << "p = " << p << " outside [0, 1]";
      throw Error(ErrorCode::kInvalidArgument, os.str());
    }
    try {
      const WelfareTable w =
          p == 0.0 ? WelfareTable::Identity(n)
                   : WelfareTable::FromFunction(n, [p](int x) {
                       return x == 0 ? 0.0 : 1.0 - std::pow(1.0 - p, x);
                     });
      const double c = Curvature(w) == 0.0 ? 0.0 : 1.0;
      Figure2Row row;
      row.p = p;
      row.poa_optimal = SolveOptimalMechanism(w).poa();
      row.poa_universal = UniversalPoa(w, c);
      row.lower_bound = 1.0 - 1.0 / std::numbers::e;
      rows.push_back(row);
    } catch (const Error& e) {
      std::ostringstream os;
      os << "p = " << p << ": " << e.what();
      throw Error(e.code(), os.str());
    }
  }
  return rows;
}

}  // namespace utildesign
