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

/// Spin-1/2 in a constant z-axis field: H = omega * Sz, with
/// S_i = (hbar/2) * Pauli_i.
struct SpinSystem {
  double omega;
  double hbar;
  Observable H;
  Observable Sx;
  Observable Sy;
  Observable Sz;
};

SpinSystem spin_system(double omega, double hbar = 1.0);

/// Coefficients of a dim-2 Hermitian A in the frame {I, Sx, Sy, Sz}, via the
/// trace inner product c_B = tr(B^dag A) / tr(B^dag B). Reconstruction is
/// exact; tracking Sx under H = omega Sz yields (0, cos wt, sin wt, 0).
struct SpinCoefficients {
  double c_i;
  double c_x;
  double c_y;
  double c_z;
};

SpinCoefficients spin_decompose(const Observable& A, double hbar = 1.0);

/// Periodic position grid with the momentum operator diagonal in the
/// discrete Fourier basis and H = P^2 / 2m built on the same frame, so H and
/// P commute exactly up to roundoff.
struct GridSystem {
  int n_points;
  double box_length;
  double mass;
  double hbar;
  RealVector positions;    ///< x_j = -L/2 + j L/n
  RealVector wavenumbers;  ///< signed k_j in [-pi/dx, pi/dx), index-aligned with the DFT rows
  UnitaryMatrix fourier;   ///< analysis DFT: row f maps psi to its k_f amplitude
  Observable X;
  Observable P;
  Observable H;
};

/// n_points must be a power of two, >= 16.
GridSystem free_particle_grid(int n_points, double box_length, double mass = 1.0,
                              double hbar = 1.0);

/// Projector onto the central half of the k-grid (the n/2 signed
/// frequencies with -n/4 <= f < n/4), the subspace on which the grid
/// faithfully represents continuum operators.
Matrix central_band_projector(const GridSystem& grid);

/// Normalized Gaussian packet exp(-(x-x0)^2/(4 sigma^2) + i p0 x / hbar).
/// Construction fails if the packet cannot be represented faithfully:
/// sigma < 3 dx or leaked momentum support (too narrow), or a boundary-
/// touching tail that shifts <X> off x0 (too near the edge).
struct WavePacket {
  double x0;
  double p0;
  double sigma;
  StateVector state;
};

WavePacket gaussian_packet(const GridSystem& grid, double x0, double p0,
                           double sigma);

/// Largest time for which the packet provably stays clear of the periodic
/// boundary: t_max = m (L/4) / (|p0| + 3 hbar/sigma). The denominator is the
/// center speed plus six momentum-sigmas of spreading speed, so the tail
/// amplitude at the boundary stays below ~1e-7 throughout.
double tracking_window(const GridSystem& grid, const WavePacket& packet);

/// Per-time residuals of the free-particle tracking identity.
struct TrackingSample {
  double time;
  double x_expect;            ///< <X> on the evolved packet
  double drift;               ///< |<X - tP/m> - x0| on the evolved packet
  double operator_residual;   ///< ||Pi (A(t) - (X - tP/m)) Pi psi(t)||_inf
  double momentum_residual;   ///< max entry |tracked(H, P, t) - P|
};

struct TrackingReport {
  double window;
  std::vector<TrackingSample> samples;
};

/// Verifies that position tracking follows X - tP/m: the expectation of
/// X - tP/m stays at x0, the tracked operator matches X - tP/m in its action
/// on the band-limited evolved packet, and tracking P is exactly constant.
/// All times must lie within tracking_window.
TrackingReport verify_free_particle_tracking(const GridSystem& grid,
                                             const WavePacket& packet,
                                             std::span<const double> times);

}  // namespace qtrack
