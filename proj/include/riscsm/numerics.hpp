// SPDX-License-Identifier: Apache-2.0
//
// riscsm - link-level simulation toolkit for RIS channel signature modulation
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

#include <Eigen/Dense>

#include "riscsm/errors.hpp"

namespace riscsm {

using Index = Eigen::Index;

template <typename Real>
using Complex = std::complex<Real>;
template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using ComplexMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

using cd = std::complex<double>;
using ComplexVectord = ComplexVector<double>;
using ComplexMatrixd = ComplexMatrix<double>;

// Counter-based random stream (Philox4x32-10). A stream is fully identified by
// (seed, stream index); the block counter advances as samples are consumed, so
// the sample sequence never depends on which thread evaluates it.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

  std::uint32_t next_u32() {
    if (cursor_ == 4) refill();
    return buffer_[cursor_++];
  }
  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform integer in [0, n). n must be positive.
  std::uint64_t uniform_index(std::uint64_t n);
  // Uniform on (0, 1) with 32 random bits.
  double open_uniform();
  // N(0, 1) by the ziggurat method.
  double standard_normal();
  // CN(0, 1): independent real and imaginary parts, each N(0, 1/2).
  cd cn01();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int cursor_ = 4;
};

// Fills every coefficient of `out` with independent CN(0, 1) draws.
template <typename Derived>
void fill_cn01(RngStream& rng, Eigen::DenseBase<Derived>& out) {
  using Scalar = typename Derived::Scalar;
  for (Index j = 0; j < out.cols(); ++j)
    for (Index i = 0; i < out.rows(); ++i) out(i, j) = Scalar(rng.cn01());
}

ComplexVectord sample_cn01(RngStream& rng, Index count);

// Hermitian PSD square root via eigendecomposition; eigenvalues are clamped at
// zero. `tol` is relative to the largest entry / eigenvalue magnitude.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> psd_sqrt(
    const Eigen::MatrixBase<Derived>& r, typename Eigen::NumTraits<typename Derived::Scalar>::Real tol = 1e-12) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  if (r.rows() != r.cols()) throw DimensionMismatch("psd_sqrt: matrix is not square");
  const Matrix m = r;
  const Real scale = std::max(m.cwiseAbs().maxCoeff(), Real(std::numeric_limits<Real>::min()));
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > tol * scale) throw NotHermitian("psd_sqrt: matrix is not Hermitian");

  Eigen::SelfAdjointEigenSolver<Matrix> eig(m);
  if (eig.info() != Eigen::Success) throw IndefiniteMatrix("psd_sqrt: eigendecomposition failed");
  const auto& lambda = eig.eigenvalues();
  const Real lambda_max = lambda.cwiseAbs().maxCoeff();
  if (lambda.minCoeff() < -tol * lambda_max) throw IndefiniteMatrix("psd_sqrt: matrix has a negative eigenvalue");

  const auto root = lambda.cwiseMax(Real(0)).cwiseSqrt().eval();
  return eig.eigenvectors() * root.asDiagonal() * eig.eigenvectors().adjoint();
}

// Tail probability of the standard normal, P[N(0,1) > x].
inline double gaussian_tail_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

constexpr bool is_power_of_two(std::int64_t v) { return v > 0 && (v & (v - 1)) == 0; }

constexpr int log2_exact(std::int64_t v) {
  int r = 0;
  while (v > 1) {
    v >>= 1;
    ++r;
  }
  return r;
}

}  // namespace riscsm
