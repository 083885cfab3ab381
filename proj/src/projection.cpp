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

#include "qtrack/projection.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qtrack/evolution.hpp"

namespace qtrack {

namespace {

constexpr double kEigenvalueMergeTol = 1e-9;

// Born weights at or below squared roundoff correspond to eigenspaces the
// state has no amplitude in; they are dropped from the outcome list, so an
// eigenstate yields the single pair (alpha, 1) and the inverse CDF can never
// land on an outcome whose post state would not normalize.
constexpr double kNegligibleWeight = 1e-28;

struct OutcomeGroups {
  SpectralDecomposition eig;
  std::vector<std::pair<Eigen::Index, Eigen::Index>> ranges;  // [first, last]
  std::vector<OutcomeWeight> weights;
};

// Groups near-degenerate eigenvalues (chain merge within 1e-9) and computes
// the Born weight of each eigenspace.
OutcomeGroups group_outcomes(const Observable& A, const StateVector& psi) {
  OutcomeGroups g{spectral_decompose(A), {}, {}};
  const RealVector& lambda = g.eig.eigenvalues;
  const Matrix& v = g.eig.eigenvectors.entries();
  const Vector coeffs = v.adjoint() * psi.amplitudes();

  Eigen::Index first = 0;
  for (Eigen::Index k = 0; k < lambda.size(); ++k) {
    const bool last_of_group = (k + 1 == lambda.size()) ||
                               (lambda(k + 1) - lambda(k) > kEigenvalueMergeTol);
    if (!last_of_group) continue;
    double prob = 0.0;
    double value = 0.0;
    for (Eigen::Index j = first; j <= k; ++j) {
      prob += std::norm(coeffs(j));
      value += lambda(j);
    }
    value /= static_cast<double>(k - first + 1);
    if (prob > kNegligibleWeight) {
      g.ranges.emplace_back(first, k);
      g.weights.push_back(OutcomeWeight{value, prob});
    }
    first = k + 1;
  }
  return g;
}

}  // namespace

std::uint64_t derive_stream_seed(std::uint64_t master_seed,
                                 std::uint64_t index) {
  // splitmix64 of master_seed advanced `index + 1` gamma steps.
  std::uint64_t z = master_seed + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<OutcomeWeight> outcome_distribution(const Observable& A,
                                                const StateVector& psi) {
  detail::require_same_dim(A.dim(), psi.dim(), "outcome_distribution");
  return group_outcomes(A, psi).weights;
}

MeasurementOutcome measure(const Observable& A, const StateVector& psi,
                           UniformStream& rng) {
  detail::require_same_dim(A.dim(), psi.dim(), "measure");
  const OutcomeGroups groups = group_outcomes(A, psi);
  const double u = rng.next();

  int selected = -1;
  double cumulative = 0.0;
  for (std::size_t i = 0; i < groups.weights.size(); ++i) {
    cumulative += groups.weights[i].probability;
    if (u < cumulative) {
      selected = static_cast<int>(i);
      break;
    }
  }
  if (selected < 0) {
    // u landed past the accumulated total by roundoff; take the last
    // outcome that has any weight.
    for (std::size_t i = groups.weights.size(); i-- > 0;) {
      if (groups.weights[i].probability > 0.0) {
        selected = static_cast<int>(i);
        break;
      }
    }
  }

  const auto [first, last] = groups.ranges[static_cast<std::size_t>(selected)];
  const Matrix& v = groups.eig.eigenvectors.entries();
  const auto block = v.middleCols(first, last - first + 1);
  const Vector projected = block * (block.adjoint() * psi.amplitudes());
  if (projected.norm() < 1e-14) {
    throw std::runtime_error(
        "measure: selected eigenspace carries no amplitude");
  }
  return MeasurementOutcome{
      groups.weights[static_cast<std::size_t>(selected)].eigenvalue,
      StateVector::normalized(projected),
      groups.weights[static_cast<std::size_t>(selected)].probability, selected};
}

TrajectoryRecord stochastic_trajectory(const Observable& H,
                                       const Observable& A0,
                                       const StateVector& psi0, double dt,
                                       double t_final, double hbar,
                                       std::uint64_t seed) {
  detail::require_same_dim(H.dim(), A0.dim(), "stochastic_trajectory");
  detail::require_same_dim(H.dim(), psi0.dim(), "stochastic_trajectory");
  if (!(dt > 0.0) || !(t_final > 0.0)) {
    throw std::invalid_argument(
        "stochastic_trajectory: dt and t_final must be positive");
  }

  // The system must start with the tracked quantity well defined.
  const double alpha0 = expectation(A0, psi0);
  const double residual =
      (A0.entries() * psi0.amplitudes() - alpha0 * psi0.amplitudes()).norm();
  if (residual > 1e-8) {
    std::ostringstream msg;
    msg << "stochastic_trajectory: psi0 is not an eigenstate of A0 "
           "(||A0 psi - <A0> psi|| = "
        << residual << ", tolerance 1e-8)";
    throw std::invalid_argument(msg.str());
  }

  UniformStream rng(seed);
  const auto steps =
      static_cast<std::size_t>(std::floor(t_final / dt + 1e-9));

  TrajectoryRecord record;
  record.seed = seed;
  record.times.reserve(steps + 1);
  record.states.reserve(steps + 1);
  record.on_track_fidelity.reserve(steps + 1);
  record.outcomes.reserve(steps + 1);

  record.times.push_back(0.0);
  record.states.push_back(psi0);
  record.on_track_fidelity.push_back(1.0);
  record.outcomes.push_back(alpha0);

  StateVector current = psi0;
  for (std::size_t k = 1; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const Observable tracked = tracked_observable(H, A0, t, hbar);
    const MeasurementOutcome outcome = measure(tracked, current, rng);
    current = outcome.post_state;

    record.times.push_back(t);
    record.states.push_back(current);
    record.on_track_fidelity.push_back(
        fidelity(current, evolve(H, psi0, t, hbar)));
    record.outcomes.push_back(outcome.eigenvalue);
  }
  return record;
}

EnsembleStats trajectory_ensemble(const Observable& H, const Observable& A0,
                                  const StateVector& psi0, double dt,
                                  double t_final, double hbar,
                                  std::uint64_t master_seed, int trajectories) {
  if (trajectories < 1) {
    throw std::invalid_argument(
        "trajectory_ensemble: need at least one trajectory");
  }
  std::vector<double> finals;
  finals.reserve(static_cast<std::size_t>(trajectories));
  for (int i = 0; i < trajectories; ++i) {
    const std::uint64_t seed =
        derive_stream_seed(master_seed, static_cast<std::uint64_t>(i));
    const TrajectoryRecord record =
        stochastic_trajectory(H, A0, psi0, dt, t_final, hbar, seed);
    finals.push_back(1.0 - record.on_track_fidelity.back());
  }

  const auto m = static_cast<double>(finals.size());
  double mean = 0.0;
  for (double f : finals) mean += f;
  mean /= m;
  double var = 0.0;
  for (double f : finals) var += (f - mean) * (f - mean);
  var = (finals.size() > 1) ? var / (m - 1.0) : 0.0;
  return EnsembleStats{mean, std::sqrt(var / m), trajectories};
}

}  // namespace qtrack
