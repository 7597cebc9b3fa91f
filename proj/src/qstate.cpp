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

#include "rtnq/qstate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace rtnq {

namespace {

Vector4d hermitian_eigenvalues(const Matrix4c& m) {
  Eigen::SelfAdjointEigenSolver<Matrix4c> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace

TwoQubitDensityMatrix::TwoQubitDensityMatrix(const Matrix4c& elements) : elements_(elements) {
  if (!elements_.allFinite()) {
    throw std::domain_error("density matrix has non-finite elements");
  }
  const double asym = (elements_ - elements_.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermiticityTol) {
    std::ostringstream msg;
    msg << "density matrix is not Hermitian (max |ρ - ρ†| = " << asym << ")";
    throw std::domain_error(msg.str());
  }
  const Complex tr = elements_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kTraceTol) {
    std::ostringstream msg;
    msg << "density matrix trace is " << tr << ", expected 1";
    throw std::domain_error(msg.str());
  }
  const double lowest = hermitian_eigenvalues(elements_).minCoeff();
  if (lowest < -kPositivityTol) {
    std::ostringstream msg;
    msg << "density matrix has negative eigenvalue " << lowest;
    throw std::domain_error(msg.str());
  }
}

TwoQubitDensityMatrix TwoQubitDensityMatrix::maximally_mixed() {
  return TwoQubitDensityMatrix(Matrix4c::Identity() * 0.25);
}

TwoQubitDensityMatrix TwoQubitDensityMatrix::from_pure(const Vector4c& state) {
  const double norm = state.norm();
  if (!(norm > 0.0)) {
    throw std::domain_error("pure state has zero norm");
  }
  const Vector4c v = state / norm;
  return TwoQubitDensityMatrix(v * v.adjoint());
}

Vector4d TwoQubitDensityMatrix::eigenvalues() const { return hermitian_eigenvalues(elements_); }

BellMixture::BellMixture(double coeff) : coeff_(coeff) {
  if (!(std::abs(coeff) <= 1.0)) {
    std::ostringstream msg;
    msg << "Bell mixture coefficient " << coeff << " outside [-1, 1]";
    throw std::domain_error(msg.str());
  }
}

Vector4c phi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return Vector4c(s, 0.0, 0.0, s);
}

Vector4c psi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return Vector4c(0.0, s, s, 0.0);
}

TwoQubitDensityMatrix bell_mixture_to_matrix(const BellMixture& state) {
  const double x = state.coeff();
  const double even = 0.25 * (1.0 + x);
  const double odd = 0.25 * (1.0 - x);
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(3, 3) = m(0, 3) = m(3, 0) = even;
  m(1, 1) = m(2, 2) = m(1, 2) = m(2, 1) = odd;
  return TwoQubitDensityMatrix(m);
}

Matrix4c partial_transpose(const Matrix4c& rho, Subsystem subsystem) {
  // Index i = 2a + b. Swap the chosen qubit's row/column labels.
  Matrix4c out;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int ap = 0; ap < 2; ++ap) {
        for (int bp = 0; bp < 2; ++bp) {
          const Complex v = rho(2 * a + b, 2 * ap + bp);
          if (subsystem == Subsystem::A) {
            out(2 * ap + b, 2 * a + bp) = v;
          } else {
            out(2 * a + bp, 2 * ap + b) = v;
          }
        }
      }
    }
  }
  return out;
}

Matrix4c partial_transpose(const TwoQubitDensityMatrix& rho, Subsystem subsystem) {
  return partial_transpose(rho.elements(), subsystem);
}

Eigen::Matrix2cd partial_trace(const TwoQubitDensityMatrix& rho, Subsystem keep) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        out(i, j) += keep == Subsystem::A ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
      }
    }
  }
  return out;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) {
    throw std::domain_error("entropy requires a non-empty square matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (double lambda : solver.eigenvalues()) {
    if (lambda < -kPositivityTol) {
      std::ostringstream msg;
      msg << "invalid state: eigenvalue " << lambda << " below -" << kPositivityTol;
      throw std::domain_error(msg.str());
    }
    if (lambda > 0.0) {
      s -= lambda * std::log2(lambda);
    }
  }
  return s;
}

double von_neumann_entropy(const TwoQubitDensityMatrix& rho) {
  return von_neumann_entropy(Eigen::MatrixXcd(rho.elements()));
}

Eigen::Vector3d correlation_vector(const TwoQubitDensityMatrix& rho) {
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  const auto corr = [&](const Eigen::Matrix2cd& s) {
    Matrix4c ss;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          for (int l = 0; l < 2; ++l) ss(2 * i + k, 2 * j + l) = s(i, j) * s(k, l);
    return (rho.elements() * ss).trace().real();
  };
  return {corr(sx), corr(sy), corr(sz)};
}

}  // namespace rtnq
