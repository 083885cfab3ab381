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

#include <Eigen/Dense>
#include <complex>

namespace qtrack {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Numerical tolerances for the structural invariants of the core types.
/// All values must lie in (0, 1e-3).
struct Tolerances {
  double norm = 1e-10;       ///< state normalization, max | ||psi|| - 1 |
  double hermitian = 1e-10;  ///< max entrywise |M - M^dag|
  double unitary = 1e-9;     ///< max entrywise |U U^dag - I|
  double spectral = 1e-8;    ///< max entrywise |V diag(lambda) V^dag - A|

  void validate() const;
};

/// Normalized pure state in an n-dimensional Hilbert space, n >= 2.
/// Construction rejects unnormalized amplitudes; use `normalized` to
/// rescale explicitly.
class StateVector {
 public:
  explicit StateVector(Vector amplitudes, const Tolerances& tol = {});

  /// Rescales `amplitudes` to unit norm (error on the zero vector).
  static StateVector normalized(Vector amplitudes, const Tolerances& tol = {});

  Eigen::Index dim() const { return amplitudes_.size(); }
  const Vector& amplitudes() const { return amplitudes_; }

 private:
  StateVector() = default;
  Vector amplitudes_;
};

/// Hermitian operator representing a measurable quantity.
class Observable {
 public:
  explicit Observable(Matrix entries, const Tolerances& tol = {});

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }

 private:
  Matrix entries_;
};

/// Matrix with U U^dag = I; propagators and basis rotations.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix entries, const Tolerances& tol = {});

  static UnitaryMatrix identity(Eigen::Index dim);

  Eigen::Index dim() const { return entries_.rows(); }
  const Matrix& entries() const { return entries_; }

 private:
  Matrix entries_;
};

/// Eigensystem of an Observable: ascending real eigenvalues paired with the
/// columns of an orthonormal eigenvector matrix. Each eigenvector carries the
/// phase convention that its first component of magnitude > 1e-12 is real and
/// positive, so decompositions are reproducible.
struct SpectralDecomposition {
  RealVector eigenvalues;
  UnitaryMatrix eigenvectors;
};

/// <a|b> = sum_k conj(a_k) b_k. Conjugate-symmetric, antilinear in `a`.
Complex inner_product(const StateVector& a, const StateVector& b);

/// <psi|A|psi>. The imaginary part of the raw bracket must be <= 1e-10
/// (guaranteed for a Hermitian A); it is checked and discarded.
double expectation(const Observable& A, const StateVector& psi);

/// Diagonalizes A. Degenerate eigenvalues yield some orthonormal basis of the
/// eigenspace, phase convention applied per eigenvector.
SpectralDecomposition spectral_decompose(const Observable& A,
                                         const Tolerances& tol = {});

/// B = U A U^dag. Hermitian with the same spectrum as A.
Observable conjugate_observable(const UnitaryMatrix& U, const Observable& A);

/// |<a|b>|^2, the Born weight of b against a.
double fidelity(const StateVector& a, const StateVector& b);

namespace detail {
void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what);
}

}  // namespace qtrack
