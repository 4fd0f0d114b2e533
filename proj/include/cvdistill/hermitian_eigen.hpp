#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cvdistill/simd/kernels.hpp"

namespace cvdistill {

struct JacobiOptions {
  /// Stop when the off-diagonal Frobenius norm falls below tol * ||A||_F.
  double tol = 1e-12;
  int max_sweeps = 100;
  /// Kernel set for the row updates; nullptr selects simd::active().
  const simd::KernelTable* kernels = nullptr;
};

struct JacobiResult {
  std::vector<double> eigenvalues;  // ascending
  int sweeps = 0;
};

/// Eigenvalues of an n x n Hermitian matrix stored row-major, by cyclic
/// complex Jacobi rotations. Throws NumericError on non-convergence.
JacobiResult hermitian_eigenvalues(std::span<const std::complex<double>> a, std::size_t n,
                                   const JacobiOptions& opts = {});

}  // namespace cvdistill
