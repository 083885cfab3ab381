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

#include "qtrack/evolution.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qtrack {

void EvolutionConfig::validate() const {
  if (!(hbar > 0.0)) {
    throw std::invalid_argument("EvolutionConfig: hbar must be positive");
  }
  if (!(dt > 0.0)) {
    throw std::invalid_argument("EvolutionConfig: dt must be positive");
  }
  if (!(dt < t_final)) {
    throw std::invalid_argument("EvolutionConfig: dt must be less than t_final");
  }
}

namespace {

void require_hbar(double hbar) {
  if (!(hbar > 0.0)) {
    throw std::invalid_argument("hbar must be positive");
  }
}

}  // namespace

UnitaryMatrix propagator(const Observable& H, double t, double hbar) {
  require_hbar(hbar);
  const SpectralDecomposition eig = spectral_decompose(H);
  const Eigen::Index n = H.dim();
  Vector phases(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    phases(k) = std::exp(Complex(0.0, -eig.eigenvalues(k) * t / hbar));
  }
  const Matrix& v = eig.eigenvectors.entries();
  return UnitaryMatrix(v * phases.asDiagonal() * v.adjoint());
}

StateVector evolve(const Observable& H, const StateVector& psi0, double t,
                   double hbar) {
  detail::require_same_dim(H.dim(), psi0.dim(), "evolve");
  const UnitaryMatrix u = propagator(H, t, hbar);
  // Renormalize away the eigen-solver's last-digit noise.
  return StateVector::normalized(u.entries() * psi0.amplitudes());
}

Vector euler_step(const Observable& H, const StateVector& psi, double dt,
                  double hbar) {
  detail::require_same_dim(H.dim(), psi.dim(), "euler_step");
  require_hbar(hbar);
  if (!(dt > 0.0)) {
    throw std::invalid_argument("euler_step: dt must be positive");
  }
  const Complex step(0.0, -dt / hbar);
  return psi.amplitudes() + step * (H.entries() * psi.amplitudes());
}

StateVector euler_step_normalized(const Observable& H, const StateVector& psi,
                                  double dt, double hbar) {
  return StateVector::normalized(euler_step(H, psi, dt, hbar));
}

OverlapReport overlap_report(const Observable& H, const StateVector& psi,
                             double dt, double hbar) {
  const StateVector stepped = evolve(H, psi, dt, hbar);
  const Complex forward = inner_product(stepped, psi);
  const Complex backward = inner_product(psi, stepped);
  if (std::abs(forward) <= 0.9) {
    std::ostringstream msg;
    msg << "overlap_report: |<psi(t+dt)|psi(t)>| = " << std::abs(forward)
        << " <= 0.9; dt = " << dt
        << " is too large for a first-order overlap, use a smaller dt";
    throw std::invalid_argument(msg.str());
  }
  if (std::abs(backward - std::conj(forward)) > 1e-12) {
    throw std::runtime_error(
        "overlap_report: backward overlap is not the conjugate of forward");
  }
  OverlapReport report;
  report.forward_overlap = forward;
  report.backward_overlap = backward;
  report.epsilon = (1.0 - forward) / dt;
  report.omega_expectation = expectation(H, psi) / hbar;
  return report;
}

Observable tracked_observable(const Observable& H, const Observable& A0,
                              double t, double hbar) {
  detail::require_same_dim(H.dim(), A0.dim(), "tracked_observable");
  return conjugate_observable(propagator(H, t, hbar), A0);
}

std::vector<ConservationSample> conservation_report(
    const Observable& H, const StateVector& psi0, std::span<const double> times,
    double hbar) {
  detail::require_same_dim(H.dim(), psi0.dim(), "conservation_report");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (times[i] < 0.0 || (i > 0 && times[i] < times[i - 1])) {
      throw std::invalid_argument(
          "conservation_report: times must be nonnegative ascending");
    }
  }
  const SpectralDecomposition eig = spectral_decompose(H);
  const Matrix& v = eig.eigenvectors.entries();
  const Vector coeffs = v.adjoint() * psi0.amplitudes();

  std::vector<ConservationSample> samples;
  samples.reserve(times.size());
  for (double t : times) {
    Vector phased(coeffs.size());
    for (Eigen::Index k = 0; k < coeffs.size(); ++k) {
      phased(k) =
          coeffs(k) * std::exp(Complex(0.0, -eig.eigenvalues(k) * t / hbar));
    }
    const Vector amplitudes = v * phased;
    const double nrm = amplitudes.norm();
    const Complex bracket = amplitudes.dot(H.entries() * amplitudes);
    samples.push_back(ConservationSample{t, nrm, bracket.real()});
  }
  return samples;
}

}  // namespace qtrack
