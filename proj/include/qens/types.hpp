#pragma once

#include <complex>
#include <cstdint>

#include <Eigen/Dense>

namespace qens {

template <typename T>
using VectorX = Eigen::Matrix<T, Eigen::Dynamic, 1>;
template <typename T>
using MatrixX = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
template <typename T>
using ArrayX = Eigen::Array<T, Eigen::Dynamic, 1>;

using Real = double;
using Complex = std::complex<Real>;
using RealVector = VectorX<Real>;
using RealMatrix = MatrixX<Real>;
using Amplitudes = VectorX<Complex>;

// Norm bookkeeping tolerance; exact algebraic identities get the tighter one.
inline constexpr Real kNormTol = 1e-10;
inline constexpr Real kAlgebraTol = 1e-12;

// Dense simulation refuses to allocate beyond this register size.
inline constexpr int kMaxQubits = 26;

// Cap on the parameter-register width of simulated ensembles.
inline constexpr int kMaxTotalBits = 20;

// Postselection on a branch with less probability mass than this is an error.
inline constexpr Real kMinBranchProb = 1e-12;

}  // namespace qens
