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

#include "qtrack/hilbert.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qtrack {

namespace detail {

void require_same_dim(Eigen::Index a, Eigen::Index b, const char* what) {
  if (a != b) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace detail

void Tolerances::validate() const {
  for (double v : {norm, hermitian, unitary, spectral}) {
    if (!(v > 0.0 && v < 1e-3)) {
      throw std::invalid_argument("Tolerances must lie in (0, 1e-3)");
    }
  }
}

StateVector::StateVector(Vector amplitudes, const Tolerances& tol) {
  tol.validate();
  if (amplitudes.size() < 2) {
    throw std::invalid_argument("StateVector requires dim >= 2");
  }
  const double nrm = amplitudes.norm();
  if (std::abs(nrm - 1.0) > tol.norm) {
    std::ostringstream msg;
    msg << "StateVector amplitudes are not normalized (norm = " << nrm
        << "); use StateVector::normalized";
    throw std::invalid_argument(msg.str());
  }
  amplitudes_ = std::move(amplitudes);
}

StateVector StateVector::normalized(Vector amplitudes, const Tolerances& tol) {
  const double nrm = amplitudes.norm();
  if (nrm < 1e-300) {
    throw std::invalid_argument("cannot normalize the zero vector");
  }
  return StateVector(amplitudes / nrm, tol);
}

Observable::Observable(Matrix entries, const Tolerances& tol) {
  tol.validate();
  if (entries.rows() != entries.cols() || entries.rows() < 2) {
    throw std::invalid_argument("Observable requires a square matrix, dim >= 2");
  }
  const double herm_err =
      (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (herm_err > tol.hermitian) {
    std::ostringstream msg;
    msg << "Observable is not Hermitian (max |M - M^dag| = " << herm_err << ")";
    throw std::invalid_argument(msg.str());
  }
  entries_ = std::move(entries);
}

UnitaryMatrix::UnitaryMatrix(Matrix entries, const Tolerances& tol) {
  tol.validate();
  if (entries.rows() != entries.cols() || entries.rows() < 2) {
    throw std::invalid_argument("UnitaryMatrix requires a square matrix, dim >= 2");
  }
  const Matrix gram = entries * entries.adjoint();
  const double unit_err =
      (gram - Matrix::Identity(entries.rows(), entries.cols()))
          .cwiseAbs()
          .maxCoeff();
  if (unit_err > tol.unitary) {
    std::ostringstream msg;
    msg << "matrix is not unitary (max |U U^dag - I| = " << unit_err << ")";
    throw std::invalid_argument(msg.str());
  }
  entries_ = std::move(entries);
}

UnitaryMatrix UnitaryMatrix::identity(Eigen::Index dim) {
  return UnitaryMatrix(Matrix::Identity(dim, dim));
}

Complex inner_product(const StateVector& a, const StateVector& b) {
  detail::require_same_dim(a.dim(), b.dim(), "inner_product");
  return a.amplitudes().dot(b.amplitudes());  // Eigen's dot conjugates a
}

double expectation(const Observable& A, const StateVector& psi) {
  detail::require_same_dim(A.dim(), psi.dim(), "expectation");
  const Complex raw = psi.amplitudes().dot(A.entries() * psi.amplitudes());
  if (std::abs(raw.imag()) > 1e-10) {
    std::ostringstream msg;
    msg << "expectation has non-real bracket (imag = " << raw.imag() << ")";
    throw std::runtime_error(msg.str());
  }
  return raw.real();
}

namespace {

// First component of magnitude > 1e-12 made real positive, per column.
void apply_phase_convention(Matrix& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const Complex v = vectors(r, c);
      if (std::abs(v) > 1e-12) {
        vectors.col(c) *= std::conj(v) / std::abs(v);
        break;
      }
    }
  }
}

}  // namespace

SpectralDecomposition spectral_decompose(const Observable& A,
                                         const Tolerances& tol) {
  tol.validate();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(A.entries());
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigen-solver failed to converge");
  }
  RealVector eigenvalues = solver.eigenvalues();  // ascending
  Matrix vectors = solver.eigenvectors();
  apply_phase_convention(vectors);

  const Matrix reconstruction =
      vectors * eigenvalues.asDiagonal() * vectors.adjoint();
  const double residual = (reconstruction - A.entries()).cwiseAbs().maxCoeff();
  if (residual > tol.spectral) {
    std::ostringstream msg;
    msg << "spectral decomposition residual " << residual
        << " exceeds tolerance " << tol.spectral;
    throw std::runtime_error(msg.str());
  }
  return SpectralDecomposition{std::move(eigenvalues),
                               UnitaryMatrix(std::move(vectors), tol)};
}

Observable conjugate_observable(const UnitaryMatrix& U, const Observable& A) {
  detail::require_same_dim(U.dim(), A.dim(), "conjugate_observable");
  Matrix b = U.entries() * A.entries() * U.entries().adjoint();
  b = (b + b.adjoint().eval()) / 2.0;  // scrub roundoff asymmetry
  return Observable(std::move(b));
}

double fidelity(const StateVector& a, const StateVector& b) {
  detail::require_same_dim(a.dim(), b.dim(), "fidelity");
  return std::norm(inner_product(a, b));
}

}  // namespace qtrack
