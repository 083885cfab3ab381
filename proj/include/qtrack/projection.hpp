// Copyright 2026 The qtrack Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qtrack/hilbert.hpp"

namespace qtrack {

/// Seeded uniform stream with a pinned algorithm, so draws reproduce across
/// implementations: the engine is std::mt19937_64 (its output sequence is
/// fixed by the C++ standard) and each uniform is u = (x >> 11) * 2^-53,
/// the top 53 bits of one engine output mapped to [0, 1).
/// std::uniform_real_distribution is deliberately not used; its mapping is
/// implementation-defined.
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  /// Next uniform in [0, 1), consuming exactly one engine output.
  double next() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Decorrelated per-trajectory seed: splitmix64 applied to
/// master_seed + index * golden-gamma. Trajectory i of an ensemble owns
/// UniformStream(derive_stream_seed(master_seed, i)).
std::uint64_t derive_stream_seed(std::uint64_t master_seed, std::uint64_t index);

/// One entry of the Born distribution over distinct eigenvalues.
struct OutcomeWeight {
  double eigenvalue;
  double probability;
};

/// Born weights of psi over the distinct eigenvalues of A, ascending.
/// Eigenvalues closer than 1e-9 are merged into one outcome (their eigenspace
/// is treated as degenerate); probabilities are squared eigenspace projection
/// norms and sum to 1. Outcomes whose weight is at squared-roundoff level
/// (<= 1e-28) are omitted: the state carries no amplitude there, so an
/// eigenstate reports the single pair (its eigenvalue, 1).
std::vector<OutcomeWeight> outcome_distribution(const Observable& A,
                                                const StateVector& psi);

struct MeasurementOutcome {
  double eigenvalue;
  StateVector post_state;
  double probability;
  int outcome_index;  ///< index into the distinct-eigenvalue list
};

/// Projective measurement of A on psi. The outcome index is drawn by
/// inverse-CDF over the ascending distinct eigenvalues (one uniform per
/// call); the post state is the normalized eigenspace projection of psi
/// (Lueders rule for degenerate outcomes).
MeasurementOutcome measure(const Observable& A, const StateVector& psi,
                           UniformStream& rng);

/// One stochastic run: per-step collapse data plus the fidelity against the
/// deterministic Schroedinger evolution. Row 0 is the initial state with its
/// prepared eigenvalue; row k is the state after the k-th collapse.
struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<double> on_track_fidelity;
  std::vector<double> outcomes;
  std::uint64_t seed;
};

/// Models evolution as a chain of projection-postulate collapses: at each
/// step k the state is measured in the eigenbasis of the tracked observable
/// A(t_k) = tracked_observable(H, A0, t_k), which is the quantity the
/// evolution keeps well defined. psi0 must be an eigenstate of A0 (residual
/// <= 1e-8). As dt -> 0 the chain converges to the deterministic evolution.
TrajectoryRecord stochastic_trajectory(const Observable& H,
                                       const Observable& A0,
                                       const StateVector& psi0, double dt,
                                       double t_final, double hbar,
                                       std::uint64_t seed);

struct EnsembleStats {
  double mean_final_infidelity;
  double standard_error;  ///< sample standard deviation / sqrt(count)
  int trajectories;
};

/// Runs `trajectories` independent chains (stream i seeded with
/// derive_stream_seed(master_seed, i)) and aggregates the final infidelity
/// 1 - on_track_fidelity.back(). Results are merged in trajectory-index
/// order, so the statistics are reproducible for a given master seed.
EnsembleStats trajectory_ensemble(const Observable& H, const Observable& A0,
                                  const StateVector& psi0, double dt,
                                  double t_final, double hbar,
                                  std::uint64_t master_seed, int trajectories);

}  // namespace qtrack
