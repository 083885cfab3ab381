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

#include "qtrack/rotation.hpp"

#include <cmath>

namespace qtrack {

UnitaryMatrix plane_rotation(const StateVector& psi_a,
                             const StateVector& psi_b) {
  detail::require_same_dim(psi_a.dim(), psi_b.dim(), "plane_rotation");
  const Eigen::Index n = psi_a.dim();
  const Vector& a = psi_a.amplitudes();
  const Vector& b = psi_b.amplitudes();

  const Complex alpha = a.dot(b);
  if (std::abs(std::abs(alpha) - 1.0) <= 1e-12) {
    // Same ray: pure phase on psi_a, identity elsewhere.
    Matrix u = Matrix::Identity(n, n);
    u += (alpha - 1.0) * (a * a.adjoint());
    return UnitaryMatrix(std::move(u));
  }

  const Vector residual = b - alpha * a;
  const double beta = residual.norm();  // > 0 off the |alpha| = 1 branch
  const Vector e = residual / beta;

  // Identity off the plane, the rotation block on the frame (psi_a, e).
  Matrix u = Matrix::Identity(n, n);
  u -= a * a.adjoint();
  u -= e * e.adjoint();
  u += (alpha * a + beta * e) * a.adjoint();
  u += (-beta * a + std::conj(alpha) * e) * e.adjoint();
  return UnitaryMatrix(std::move(u));
}

Observable witness_observable(const StateVector& psi) {
  const Vector& a = psi.amplitudes();
  return Observable(a * a.adjoint());
}

}  // namespace qtrack
