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

#include "qtrack/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "qtrack/evolution.hpp"
#include "qtrack/projection.hpp"
#include "qtrack/scenarios.hpp"

namespace qtrack {

namespace {

/// 17 significant digits round-trip any double exactly, making the CSV
/// byte-reproducible across runs.
std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require(bool ok, const char* message) {
  if (!ok) {
    throw std::invalid_argument(message);
  }
}

/// Inclusive step count of the grid {0, dt, 2 dt, ..., <= t_final}; the
/// epsilon absorbs roundoff when t_final is an exact multiple of dt.
long step_count(double dt, double t_final) {
  return static_cast<long>(std::floor(t_final / dt + 1e-9));
}

StateVector plus_x_state() {
  Vector amplitudes(2);
  amplitudes << 1.0, 1.0;
  return StateVector::normalized(std::move(amplitudes));
}

StateVector plus_z_state() {
  Vector amplitudes(2);
  amplitudes << 1.0, 0.0;
  return StateVector(std::move(amplitudes));
}

void run_spin_precession(const RunConfig& config, std::ostream& out) {
  const SpinSystem sys = spin_system(config.omega, config.hbar);
  const StateVector psi0 = plus_x_state();
  out << "t,sx_expect,sy_expect,sz_expect\n";
  const long steps = step_count(config.dt, config.t_final);
  for (long k = 0; k <= steps; ++k) {
    const double t = k * config.dt;
    const StateVector psi_t = evolve(sys.H, psi0, t, config.hbar);
    out << format_double(t) << ',' << format_double(expectation(sys.Sx, psi_t))
        << ',' << format_double(expectation(sys.Sy, psi_t)) << ','
        << format_double(expectation(sys.Sz, psi_t)) << '\n';
  }
}

void run_spin_tracked(const RunConfig& config, std::ostream& out) {
  const SpinSystem sys = spin_system(config.omega, config.hbar);
  out << "t,c_I,c_x,c_y,c_z\n";
  const long steps = step_count(config.dt, config.t_final);
  for (long k = 0; k <= steps; ++k) {
    const double t = k * config.dt;
    const Observable a_t = tracked_observable(sys.H, sys.Sx, t, config.hbar);
    const SpinCoefficients c = spin_decompose(a_t, config.hbar);
    out << format_double(t) << ',' << format_double(c.c_i) << ','
        << format_double(c.c_x) << ',' << format_double(c.c_y) << ','
        << format_double(c.c_z) << '\n';
  }
}

void run_free_particle(const RunConfig& config, std::ostream& out) {
  const GridSystem grid = free_particle_grid(config.n_points,
                                             config.box_length, config.mass,
                                             config.hbar);
  const WavePacket packet =
      gaussian_packet(grid, config.x0, config.p0, config.sigma);
  const double window = tracking_window(grid, packet);
  if (config.t_final > window) {
    std::ostringstream msg;
    msg << "t_final: " << config.t_final
        << " exceeds the packet's tracking window " << window
        << " (the packet would reach the periodic boundary); shorten t_final "
           "or widen the packet";
    throw std::invalid_argument(msg.str());
  }

  std::vector<double> times;
  const long steps = step_count(config.dt, config.t_final);
  times.reserve(static_cast<std::size_t>(steps) + 1);
  for (long k = 0; k <= steps; ++k) {
    times.push_back(k * config.dt);
  }
  const TrackingReport report =
      verify_free_particle_tracking(grid, packet, times);

  out << "t,x_expect,drift,momentum_case_residual\n";
  for (const TrackingSample& s : report.samples) {
    out << format_double(s.time) << ',' << format_double(s.x_expect) << ','
        << format_double(s.drift) << ',' << format_double(s.momentum_residual)
        << '\n';
  }
}

void run_stochastic(const RunConfig& config, std::ostream& out) {
  const SpinSystem sys = spin_system(config.omega, config.hbar);
  const StateVector psi0 = plus_x_state();
  out << "dt,mean_final_infidelity,stderr,trajectories\n";
  for (int h = 0; h < config.halvings; ++h) {
    const double dt_h = std::ldexp(config.dt, -h);
    const std::uint64_t master =
        derive_stream_seed(config.seed, static_cast<std::uint64_t>(h));
    const EnsembleStats stats =
        trajectory_ensemble(sys.H, sys.Sx, psi0, dt_h, config.t_final,
                            config.hbar, master, config.trajectories);
    out << format_double(dt_h) << ','
        << format_double(stats.mean_final_infidelity) << ','
        << format_double(stats.standard_error) << ',' << stats.trajectories
        << '\n';
  }
}

void run_overlap_sweep(const RunConfig& config, std::ostream& out) {
  const SpinSystem sys = spin_system(config.omega, config.hbar);
  const StateVector psi =
      config.overlap_state == "plus-z" ? plus_z_state() : plus_x_state();
  out << "dt,re_eps,im_eps,omega_expectation\n";
  double dt_d = config.dt;
  for (int d = 0; d < config.decades; ++d, dt_d /= 10.0) {
    const OverlapReport report = overlap_report(sys.H, psi, dt_d, config.hbar);
    out << format_double(dt_d) << ',' << format_double(report.epsilon.real())
        << ',' << format_double(report.epsilon.imag()) << ','
        << format_double(report.omega_expectation) << '\n';
  }
}

}  // namespace

Scenario parse_scenario(const std::string& name) {
  if (name == "spin-precession") return Scenario::kSpinPrecession;
  if (name == "spin-tracked") return Scenario::kSpinTracked;
  if (name == "free-particle") return Scenario::kFreeParticle;
  if (name == "stochastic") return Scenario::kStochastic;
  if (name == "overlap-sweep") return Scenario::kOverlapSweep;
  throw std::invalid_argument(
      "scenario: unknown name '" + name +
      "' (expected spin-precession, spin-tracked, free-particle, stochastic "
      "or overlap-sweep)");
}

std::string scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::kSpinPrecession:
      return "spin-precession";
    case Scenario::kSpinTracked:
      return "spin-tracked";
    case Scenario::kFreeParticle:
      return "free-particle";
    case Scenario::kStochastic:
      return "stochastic";
    case Scenario::kOverlapSweep:
      return "overlap-sweep";
  }
  throw std::invalid_argument("scenario: unknown enum value");
}

void RunConfig::validate() const {
  require(!output_path.empty(), "output_path: required (pass --out)");
  require(std::isfinite(omega), "omega: must be finite");
  require(hbar > 0.0 && std::isfinite(hbar), "hbar: must be positive");
  require(dt > 0.0 && std::isfinite(dt), "dt: must be positive");
  require(t_final >= 0.0 && std::isfinite(t_final),
          "t_final: must be nonnegative");

  switch (scenario) {
    case Scenario::kSpinPrecession:
    case Scenario::kSpinTracked:
      break;
    case Scenario::kFreeParticle:
      require(n_points >= 16 && (n_points & (n_points - 1)) == 0,
              "n_points: must be a power of two, at least 16");
      require(box_length > 0.0 && std::isfinite(box_length),
              "box_length: must be positive");
      require(mass > 0.0 && std::isfinite(mass), "mass: must be positive");
      require(sigma > 0.0 && std::isfinite(sigma), "sigma: must be positive");
      require(std::isfinite(x0), "x0: must be finite");
      require(std::isfinite(p0), "p0: must be finite");
      break;
    case Scenario::kStochastic:
      require(trajectories >= 1, "trajectories: must be at least 1");
      require(halvings >= 1, "halvings: must be at least 1");
      require(seed_set, "seed: required for stochastic runs (pass --seed)");
      require(dt <= t_final, "dt: must not exceed t_final");
      break;
    case Scenario::kOverlapSweep:
      require(decades >= 1, "decades: must be at least 1");
      require(overlap_state == "plus-z" || overlap_state == "plus-x",
              "state: must be plus-z or plus-x");
      break;
  }
}

int run(const RunConfig& config, std::ostream& diagnostics) {
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    diagnostics << "config error: " << e.what() << '\n';
    return 2;
  }

  std::ofstream out(config.output_path, std::ios::binary);
  if (!out) {
    diagnostics << "i/o error: cannot open '" << config.output_path
                << "' for writing\n";
    return 3;
  }

  try {
    switch (config.scenario) {
      case Scenario::kSpinPrecession:
        run_spin_precession(config, out);
        break;
      case Scenario::kSpinTracked:
        run_spin_tracked(config, out);
        break;
      case Scenario::kFreeParticle:
        run_free_particle(config, out);
        break;
      case Scenario::kStochastic:
        run_stochastic(config, out);
        break;
      case Scenario::kOverlapSweep:
        run_overlap_sweep(config, out);
        break;
    }
  } catch (const std::exception& e) {
    diagnostics << "config error: " << e.what() << '\n';
    return 2;
  }

  out.flush();
  if (!out) {
    diagnostics << "i/o error: failed writing '" << config.output_path
                << "'\n";
    return 3;
  }
  return 0;
}

}  // namespace qtrack
