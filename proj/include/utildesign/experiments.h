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

#ifndef UTILDESIGN_EXPERIMENTS_H_
#define UTILDESIGN_EXPERIMENTS_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "utildesign/game.h"

namespace utildesign {

// Randomized vehicle-target assignment study. Each vehicle gets two singleton
// target assignments drawn uniformly from n+1 targets; target t carries
// W_t(x) = v_t (1 - (1-p)^x) with v_t uniform on (value_lo, value_hi].
struct VehicleTargetConfig {
  int n_vehicles = 10;
  double p = 0.5;
  double value_lo = 0.0;
  double value_hi = 1.0;
  std::uint64_t master_seed = 0;
  int instances = 1000;
  int iterations = 100;
  // Redraw the second target until it differs from the first. Off by default:
  // a duplicate draw leaves the vehicle with a single action.
  bool resample_duplicates = false;
  // Start every mechanism from the same random allocation per instance.
  bool shared_starts = false;

  int n_targets() const { return n_vehicles + 1; }
  void Validate() const;
};

enum class Mechanism { kUniversal, kIdenticalInterest, kEqualShares };

std::string_view MechanismName(Mechanism m);
// Accepts "universal", "identical_interest", "equal_shares".
Mechanism ParseMechanism(std::string_view name);

// Seed of the named substream (index, tag) under `master`.
std::uint64_t SubstreamSeed(std::uint64_t master, std::uint64_t index, std::uint64_t tag);

// Instance `index` of the study, in identical-interest mode; it depends only
// on (cfg, index).
GameInstance GenerateInstance(const VehicleTargetConfig& cfg, int index);

// Universal mechanism uses curvature bound c = 1.
GameInstance ApplyMechanism(const GameInstance& g, Mechanism m);

struct MechanismRun {
  Mechanism mechanism;
  // Efficiency per converged instance, in instance order.
  std::vector<double> ratios;
  // Step at which each converged run reached its final state.
  std::vector<int> settle_steps;
  std::vector<int> nonconverged;
};

// Runs every (instance, mechanism) pair; `threads` workers share the
// instance range and results do not depend on the worker count.
std::vector<MechanismRun> RunMonteCarlo(const VehicleTargetConfig& cfg,
                                        std::span<const Mechanism> mechanisms,
                                        int threads = 1);

struct BoxStats {
  double min = 0.0;
  double q25 = 0.0;
  double median = 0.0;
  double q75 = 0.0;
  double max = 0.0;
};

// Quartiles by linear interpolation between order statistics
// (position (N-1) q).
BoxStats ComputeBoxStats(std::span<const double> values);

struct Figure2Row {
  double p = 0.0;
  double poa_optimal = 0.0;
  double poa_universal = 0.0;
  double lower_bound = 0.0;
};

// Price of anarchy per p for W(x) = 1 - (1-p)^x on n players: the optimal
// mechanism's LP value and the universal mechanism's certified value (smallest
// feasible rho by bisection). p = 0 uses the limiting linear welfare W(x) = x.
std::vector<Figure2Row> Figure2Sweep(std::span<const double> p_grid, int n);

}  // namespace utildesign

#endif  // UTILDESIGN_EXPERIMENTS_H_
