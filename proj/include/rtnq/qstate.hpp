// Copyright 2026 The rtnq Authors
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

namespace rtnq {

using Complex = std::complex<double>;
using Matrix4c = Eigen::Matrix4cd;
using Vector4c = Eigen::Vector4cd;
using Vector4d = Eigen::Vector4d;

// Basis order is {|00>, |01>, |10>, |11>} with qubit A as the left factor.
enum class Subsystem { A, B };

inline constexpr double kHermiticityTol = 1e-12;
inline constexpr double kTraceTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;

/// Validated two-qubit density matrix. Immutable after construction.
class TwoQubitDensityMatrix {
 public:
  /// Throws std::domain_error unless the matrix is Hermitian, unit-trace and
  /// positive to the tolerances above.
  explicit TwoQubitDensityMatrix(const Matrix4c& elements);

  static TwoQubitDensityMatrix maximally_mixed();
  static TwoQubitDensityMatrix from_pure(const Vector4c& state);

  const Matrix4c& elements() const { return elements_; }
  Complex operator()(int row, int col) const { return elements_(row, col); }

  /// Ascending eigenvalues.
  Vector4d eigenvalues() const;

 private:
  Matrix4c elements_;
};

/// ½[(1+x)|φ+><φ+| + (1-x)|ψ+><ψ+|], x in [-1, 1].
class BellMixture {
 public:
  explicit BellMixture(double coeff);
  double coeff() const { return coeff_; }

 private:
  double coeff_;
};

Vector4c phi_plus();
Vector4c psi_plus();

TwoQubitDensityMatrix bell_mixture_to_matrix(const BellMixture& state);

/// Transposes the indices of one qubit. Works on any 4x4 matrix; the result
/// of a density matrix is Hermitian with the same trace.
Matrix4c partial_transpose(const Matrix4c& rho, Subsystem subsystem);
Matrix4c partial_transpose(const TwoQubitDensityMatrix& rho, Subsystem subsystem);

/// Reduced 2x2 state of the kept qubit.
Eigen::Matrix2cd partial_trace(const TwoQubitDensityMatrix& rho, Subsystem keep);

/// Entropy in bits of any square density matrix. Eigenvalues in
/// [-1e-10, 0) are clamped to 0; anything more negative throws
/// std::domain_error.
double von_neumann_entropy(const Eigen::MatrixXcd& rho);
double von_neumann_entropy(const TwoQubitDensityMatrix& rho);

/// Bloch correlation components c_j = Tr[ρ σ_j⊗σ_j].
Eigen::Vector3d correlation_vector(const TwoQubitDensityMatrix& rho);

}  // namespace rtnq
