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

#include <span>
#include <vector>

#include "qtrack/hilbert.hpp"

namespace qtrack {

/// Time-stepping parameters for driver code.
struct EvolutionConfig {
  double hbar = 1.0;
  double dt = 0.0;
  double t_final = 0.0;
  bool renormalize_steps = false;

  void validate() const;  // hbar > 0, 0 < dt < t_final
};

/// Overlap diagnostics between a state and its exact evolution over dt.
///
/// forward_overlap = <psi(t+dt)|psi(t)> and epsilon = (1 - forward)/dt, so
/// that forward = 1 - epsilon*dt holds by construction. As dt -> 0, epsilon
/// converges to -i<Omega> with Omega = H/hbar; at finite dt it carries a real
/// part of order dt (bounded by <Omega^2> dt / 2).
struct OverlapReport {
  Complex forward_overlap;
  Complex backward_overlap;  // = conj(forward_overlap) within 1e-12
  Complex epsilon;
  double omega_expectation;  // <H>/hbar
};

/// exp(-i H t / hbar), computed through the spectral decomposition of H, so
/// unitarity holds to eigen-solver accuracy. Satisfies the group law
/// propagator(H,s) propagator(H,t) = propagator(H,s+t).
UnitaryMatrix propagator(const Observable& H, double t, double hbar = 1.0);

/// Exact solution psi(t) = exp(-i H t / hbar) psi0.
StateVector evolve(const Observable& H, const StateVector& psi0, double t,
                   double hbar = 1.0);

/// One first-order step (I - i H dt / hbar) psi, returned raw: the squared
/// norm of the result is 1 + <Omega^2> dt^2, not 1.
Vector euler_step(const Observable& H, const StateVector& psi, double dt,
                  double hbar = 1.0);

/// Same step followed by renormalization, for chaining.
StateVector euler_step_normalized(const Observable& H, const StateVector& psi,
                                  double dt, double hbar = 1.0);

/// Computes the overlap pair between psi and its exact dt-evolution and
/// extracts epsilon. Errors when dt is large enough that |forward| <= 0.9.
OverlapReport overlap_report(const Observable& H, const StateVector& psi,
                             double dt, double hbar = 1.0);

/// The observable that stays well defined along the evolution:
/// A(t) = exp(-i H t / hbar) A0 exp(+i H t / hbar).
/// For an eigenpair A0 psi0 = alpha psi0, A(t) psi(t) = alpha psi(t) with
/// psi(t) = evolve(H, psi0, t); the spectrum equals A0's for every t.
/// Note the conjugation order: the forward propagator stands on the left.
Observable tracked_observable(const Observable& H, const Observable& A0,
                              double t, double hbar = 1.0);

struct ConservationSample {
  double time;
  double norm;
  double energy_expectation;
};

/// Norm and <H> along the exact evolution at the given ascending times.
std::vector<ConservationSample> conservation_report(const Observable& H,
                                                    const StateVector& psi0,
                                                    std::span<const double> times,
                                                    double hbar = 1.0);

}  // namespace qtrack
