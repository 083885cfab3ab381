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

#include "qtrack/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qtrack/evolution.hpp"

namespace qtrack {

namespace {

constexpr Complex kI{0.0, 1.0};

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0.0, -kI, kI, 0.0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

/// tr(B^dag A) / tr(B^dag B), real for Hermitian A and B.
double frame_coefficient(const Matrix& basis, const Matrix& a) {
  const Complex num = (basis.adjoint() * a).trace();
  const Complex den = (basis.adjoint() * basis).trace();
  return num.real() / den.real();
}

}  // namespace

SpinSystem spin_system(double omega, double hbar) {
  if (!(hbar > 0.0)) {
    throw std::invalid_argument("spin_system: hbar must be positive");
  }
  const double half = hbar / 2.0;
  Observable sx(half * pauli_x());
  Observable sy(half * pauli_y());
  Observable sz(half * pauli_z());
  Observable h(omega * sz.entries());
  return SpinSystem{omega, hbar, std::move(h), std::move(sx), std::move(sy),
                    std::move(sz)};
}

SpinCoefficients spin_decompose(const Observable& A, double hbar) {
  if (!(hbar > 0.0)) {
    throw std::invalid_argument("spin_decompose: hbar must be positive");
  }
  if (A.dim() != 2) {
    throw std::invalid_argument("spin_decompose: observable must be 2x2");
  }
  const double half = hbar / 2.0;
  const Matrix identity = Matrix::Identity(2, 2);
  return SpinCoefficients{
      frame_coefficient(identity, A.entries()),
      frame_coefficient(half * pauli_x(), A.entries()),
      frame_coefficient(half * pauli_y(), A.entries()),
      frame_coefficient(half * pauli_z(), A.entries()),
  };
}

namespace {

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// Signed DFT frequency for row a of an n-point grid: 0..n/2-1, then
/// -n/2..-1, matching the standard FFT ordering.
int signed_frequency(int a, int n) { return a < n / 2 ? a : a - n; }

}  // namespace

GridSystem free_particle_grid(int n_points, double box_length, double mass,
                              double hbar) {
  if (!power_of_two(n_points) || n_points < 16) {
    throw std::invalid_argument(
        "free_particle_grid: n_points must be a power of two, at least 16");
  }
  if (!(box_length > 0.0)) {
    throw std::invalid_argument("free_particle_grid: box_length must be positive");
  }
  if (!(mass > 0.0)) {
    throw std::invalid_argument("free_particle_grid: mass must be positive");
  }
  if (!(hbar > 0.0)) {
    throw std::invalid_argument("free_particle_grid: hbar must be positive");
  }

  const int n = n_points;
  const double dx = box_length / n;
  const double two_pi = 2.0 * std::numbers::pi;

  RealVector positions(n);
  for (int j = 0; j < n; ++j) {
    positions[j] = -box_length / 2.0 + j * dx;
  }

  RealVector wavenumbers(n);
  for (int a = 0; a < n; ++a) {
    wavenumbers[a] = two_pi * signed_frequency(a, n) / box_length;
  }

  // Analysis DFT against the plane waves exp(i k_a x) sampled on the grid;
  // row a of F reads off the k_a amplitude of a position-space vector.
  Matrix f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (int a = 0; a < n; ++a) {
    for (int j = 0; j < n; ++j) {
      f(a, j) = scale * std::exp(-kI * (wavenumbers[a] * positions[j]));
    }
  }
  UnitaryMatrix fourier(f);

  Observable x(positions.cast<Complex>().asDiagonal().toDenseMatrix());

  // P and H are built from the same diagonal frame, then symmetrized to
  // scrub roundoff; sharing the frame keeps [H, P] at machine precision.
  Vector k_diag = (hbar * wavenumbers).cast<Complex>();
  Vector e_diag(n);
  for (int a = 0; a < n; ++a) {
    const double k = wavenumbers[a];
    e_diag[a] = hbar * hbar * k * k / (2.0 * mass);
  }
  Matrix p_raw = f.adjoint() * k_diag.asDiagonal() * f;
  Matrix h_raw = f.adjoint() * e_diag.asDiagonal() * f;
  Observable p(((p_raw + p_raw.adjoint().eval()) / 2.0).eval());
  Observable h(((h_raw + h_raw.adjoint().eval()) / 2.0).eval());

  return GridSystem{n,
                    box_length,
                    mass,
                    hbar,
                    std::move(positions),
                    std::move(wavenumbers),
                    std::move(fourier),
                    std::move(x),
                    std::move(p),
                    std::move(h)};
}

Matrix central_band_projector(const GridSystem& grid) {
  const int n = grid.n_points;
  Vector mask(n);
  for (int a = 0; a < n; ++a) {
    const int f = signed_frequency(a, n);
    mask[a] = (f >= -n / 4 && f < n / 4) ? 1.0 : 0.0;
  }
  const Matrix& f = grid.fourier.entries();
  Matrix pi = f.adjoint() * mask.asDiagonal() * f;
  return ((pi + pi.adjoint().eval()) / 2.0).eval();
}

WavePacket gaussian_packet(const GridSystem& grid, double x0, double p0,
                           double sigma) {
  const double L = grid.box_length;
  const double dx = L / grid.n_points;
  if (std::abs(x0) > 0.3 * L) {
    std::ostringstream msg;
    msg << "gaussian_packet: |x0| = " << std::abs(x0)
        << " exceeds 0.3 * box_length = " << 0.3 * L;
    throw std::invalid_argument(msg.str());
  }
  if (!(sigma >= 3.0 * dx)) {
    std::ostringstream msg;
    msg << "gaussian_packet: packet too narrow: sigma = " << sigma
        << " is below 3 * dx = " << 3.0 * dx;
    throw std::invalid_argument(msg.str());
  }

  const int n = grid.n_points;
  Vector raw(n);
  for (int j = 0; j < n; ++j) {
    const double x = grid.positions[j];
    const double d = x - x0;
    raw[j] = std::exp(-d * d / (4.0 * sigma * sigma)) *
             std::exp(kI * (p0 * x / grid.hbar));
  }
  StateVector state = StateVector::normalized(std::move(raw));

  // The grid represents the packet faithfully only if its momentum support
  // stays out of the outer 10% of the k-range and its tails clear the
  // periodic boundary; both failure modes surface as construction errors.
  Vector k_amplitudes = grid.fourier.entries() * state.amplitudes();
  double outer_mass = 0.0;
  for (int a = 0; a < n; ++a) {
    if (std::abs(signed_frequency(a, n)) >= 0.45 * n) {
      outer_mass += std::norm(k_amplitudes[a]);
    }
  }
  if (outer_mass > 1e-8) {
    std::ostringstream msg;
    msg << "gaussian_packet: packet too narrow for the grid: outer 10% of the "
           "momentum range carries mass "
        << outer_mass << " (limit 1e-8)";
    throw std::runtime_error(msg.str());
  }

  const double scale = std::max({1.0, std::abs(x0), std::abs(p0)});
  const double x_err = std::abs(expectation(grid.X, state) - x0);
  const double p_err = std::abs(expectation(grid.P, state) - p0);
  if (x_err > 1e-6 * scale || p_err > 1e-6 * scale) {
    std::ostringstream msg;
    msg << "gaussian_packet: center too near the boundary: |<X> - x0| = "
        << x_err << ", |<P> - p0| = " << p_err << " (limit " << 1e-6 * scale
        << ")";
    throw std::runtime_error(msg.str());
  }

  return WavePacket{x0, p0, sigma, std::move(state)};
}

double tracking_window(const GridSystem& grid, const WavePacket& packet) {
  const double spread_speed = 3.0 * grid.hbar / packet.sigma;
  return grid.mass * (grid.box_length / 4.0) /
         (std::abs(packet.p0) + spread_speed);
}

TrackingReport verify_free_particle_tracking(const GridSystem& grid,
                                             const WavePacket& packet,
                                             std::span<const double> times) {
  detail::require_same_dim(grid.X.dim(), packet.state.dim(),
                           "verify_free_particle_tracking");
  const double window = tracking_window(grid, packet);
  for (double t : times) {
    if (!(t >= 0.0) || t > window) {
      std::ostringstream msg;
      msg << "verify_free_particle_tracking: time " << t
          << " outside the tracking window [0, " << window << "]";
      throw std::invalid_argument(msg.str());
    }
  }

  const Matrix pi = central_band_projector(grid);
  TrackingReport report;
  report.window = window;
  report.samples.reserve(times.size());

  for (double t : times) {
    const UnitaryMatrix u = propagator(grid.H, t, grid.hbar);
    const StateVector psi_t =
        StateVector::normalized(u.entries() * packet.state.amplitudes());
    const Observable a_x = conjugate_observable(u, grid.X);
    const Observable a_p = conjugate_observable(u, grid.P);

    const double x_expect = expectation(grid.X, psi_t);
    const double p_expect = expectation(grid.P, psi_t);
    const double drift =
        std::abs(x_expect - (t / grid.mass) * p_expect - packet.x0);

    // The tracked position must act like the classical pullback X - tP/m on
    // the band-limited packet; compare actions on psi_t inside the band,
    // where the periodic copies of X are invisible.
    const Matrix classical =
        grid.X.entries() - (t / grid.mass) * grid.P.entries();
    const Matrix delta = pi * (a_x.entries() - classical) * pi;
    const double operator_residual =
        (delta * psi_t.amplitudes()).cwiseAbs().maxCoeff();

    const double momentum_residual =
        (a_p.entries() - grid.P.entries()).cwiseAbs().maxCoeff();

    report.samples.push_back(TrackingSample{t, x_expect, drift,
                                            operator_residual,
                                            momentum_residual});
  }
  return report;
}

}  // namespace qtrack
