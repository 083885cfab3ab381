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

#include <iostream>

#include <CLI11.hpp>

#include "qtrack/runner.hpp"

namespace {

using qtrack::RunConfig;
using qtrack::Scenario;

/// Flags shared by every scenario. Values may also come from the key-value
/// config file passed via the top-level --config option (a [scenario]
/// section per subcommand); explicit flags override file values.
void add_common_options(CLI::App* sub, RunConfig* config) {
  sub->fallthrough();  // lets --config appear after the subcommand name
  sub->add_option("--out", config->output_path, "Output CSV path")
      ->required();
  sub->add_option("--hbar", config->hbar, "Reduced Planck constant")
      ->capture_default_str();
  sub->add_option("--dt", config->dt, "Time step")->capture_default_str();
}

void add_spin_options(CLI::App* sub, RunConfig* config) {
  sub->add_option("--omega", config->omega, "Precession frequency")
      ->capture_default_str();
  sub->add_option("--t-final", config->t_final, "Final time")
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qtrack: deterministic and collapse-chain dynamics of tracked "
      "observables in finite-dimensional quantum systems"};
  app.require_subcommand(1);
  app.set_config("--config", "",
                 "Key-value config file with one [scenario] section per "
                 "subcommand; flags override file values");

  RunConfig config;

  CLI::App* precession = app.add_subcommand(
      "spin-precession",
      "Expectations of Sx, Sy, Sz along the evolved |+x> under H = omega Sz");
  add_common_options(precession, &config);
  add_spin_options(precession, &config);

  CLI::App* tracked = app.add_subcommand(
      "spin-tracked",
      "Frame coefficients (I, Sx, Sy, Sz) of the tracked Sx under H = omega "
      "Sz");
  add_common_options(tracked, &config);
  add_spin_options(tracked, &config);

  CLI::App* particle = app.add_subcommand(
      "free-particle",
      "Gaussian-packet position-tracking residuals on the periodic Fourier "
      "grid");
  add_common_options(particle, &config);
  particle->add_option("--t-final", config.t_final, "Final time")
      ->capture_default_str();
  particle->add_option("--n-points", config.n_points,
                       "Grid points (power of two, >= 16)")
      ->capture_default_str();
  particle->add_option("--box-length", config.box_length, "Periodic box length")
      ->capture_default_str();
  particle->add_option("--mass", config.mass, "Particle mass")
      ->capture_default_str();
  particle->add_option("--x0", config.x0, "Packet center position")
      ->capture_default_str();
  particle->add_option("--p0", config.p0, "Packet center momentum")
      ->capture_default_str();
  particle->add_option("--sigma", config.sigma, "Packet position width")
      ->capture_default_str();

  CLI::App* stochastic = app.add_subcommand(
      "stochastic",
      "Collapse-chain ensemble: mean final infidelity for dt, dt/2, ...");
  add_common_options(stochastic, &config);
  add_spin_options(stochastic, &config);
  stochastic
      ->add_option("--trajectories", config.trajectories,
                   "Trajectories per dt value")
      ->capture_default_str();
  stochastic
      ->add_option("--halvings", config.halvings,
                   "Number of dt values (each half the previous)")
      ->capture_default_str();
  stochastic->add_option("--seed", config.seed, "Master RNG seed (required)")
      ->required();

  CLI::App* sweep = app.add_subcommand(
      "overlap-sweep",
      "Overlap-deficit extraction: epsilon for dt, dt/10, ...");
  add_common_options(sweep, &config);
  sweep->add_option("--omega", config.omega, "Precession frequency")
      ->capture_default_str();
  sweep->add_option("--decades", config.decades,
                    "Number of dt values (each a tenth of the previous)")
      ->capture_default_str();
  sweep->add_option("--state", config.overlap_state,
                    "Initial state: plus-z or plus-x")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (precession->parsed()) {
    config.scenario = Scenario::kSpinPrecession;
  } else if (tracked->parsed()) {
    config.scenario = Scenario::kSpinTracked;
  } else if (particle->parsed()) {
    config.scenario = Scenario::kFreeParticle;
  } else if (stochastic->parsed()) {
    config.scenario = Scenario::kStochastic;
    config.seed_set = true;
  } else {
    config.scenario = Scenario::kOverlapSweep;
  }

  return qtrack::run(config, std::cerr);
}
