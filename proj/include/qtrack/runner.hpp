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
#include <iosfwd>
#include <string>

namespace qtrack {

enum class Scenario {
  kSpinPrecession,  ///< expectations of Sx, Sy, Sz along the evolved |+x>
  kSpinTracked,     ///< frame coefficients of the tracked Sx under H = w Sz
  kFreeParticle,    ///< Gaussian-packet tracking residuals on the grid
  kStochastic,      ///< collapse-chain infidelity vs dt (dt, dt/2, ...)
  kOverlapSweep,    ///< epsilon extraction vs dt (dt, dt/10, ...)
};

/// Parses the scenario names used on the command line and in config files:
/// spin-precession, spin-tracked, free-particle, stochastic, overlap-sweep.
Scenario parse_scenario(const std::string& name);
std::string scenario_name(Scenario scenario);

/// Full description of one run. Every scenario reads the fields it needs and
/// ignores the rest; validate() checks only what the scenario uses.
struct RunConfig {
  Scenario scenario = Scenario::kSpinPrecession;

  // Shared physics parameters.
  double omega = 1.0;
  double hbar = 1.0;
  double dt = 0.01;
  double t_final = 1.0;

  // Free-particle grid and packet.
  int n_points = 256;
  double box_length = 20.0;
  double mass = 1.0;
  double x0 = -2.0;
  double p0 = 1.0;
  double sigma = 1.0;

  // Stochastic ensemble. The seed is mandatory for stochastic runs; row h of
  // the sweep uses dt / 2^h and the derived master derive_stream_seed(seed, h).
  int trajectories = 200;
  int halvings = 4;
  bool seed_set = false;
  std::uint64_t seed = 0;

  // Overlap sweep: row d uses dt / 10^d; state is "plus-z" or "plus-x".
  int decades = 4;
  std::string overlap_state = "plus-z";

  std::string output_path;

  /// Throws std::invalid_argument with a field-level message on the first
  /// violated constraint.
  void validate() const;
};

/// Runs the configured scenario and writes its CSV to output_path.
/// Returns 0 on success, 2 on a configuration error, 3 on an I/O error;
/// error text goes to `diagnostics`. Identical config and seed produce a
/// byte-identical file.
int run(const RunConfig& config, std::ostream& diagnostics);

}  // namespace qtrack
