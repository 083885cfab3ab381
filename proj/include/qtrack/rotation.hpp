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

#include "qtrack/hilbert.hpp"

namespace qtrack {

/// Unitary U with U psi_a = psi_b exactly (no residual phase), acting as the
/// identity on the orthogonal complement of the complex span of {psi_a, psi_b}.
///
/// Construction: let alpha = <psi_a|psi_b>. If |alpha| = 1 within 1e-12 the
/// states coincide up to phase and U = I + (alpha - 1)|psi_a><psi_a|.
/// Otherwise Gram-Schmidt e = (psi_b - alpha psi_a)/beta with
/// beta = ||psi_b - alpha psi_a|| > 0, and U carries the 2x2 block
/// [[alpha, -beta], [beta, conj(alpha)]] on the ordered frame (psi_a, e).
/// The first column sends psi_a to alpha psi_a + beta e = psi_b; the second
/// column's phase choice (-beta, conj(alpha)) fixes the remaining freedom.
UnitaryMatrix plane_rotation(const StateVector& psi_a, const StateVector& psi_b);

/// The projector |psi><psi|: a Hermitian operator with psi as eigenvector of
/// eigenvalue 1 and spectrum {1, 0, ..., 0}. Witnesses that every state is an
/// eigenstate of some Hermitian operator.
Observable witness_observable(const StateVector& psi);

}  // namespace qtrack
