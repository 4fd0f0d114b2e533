#pragma once

// Truncated number-basis density matrices reconstructed from characteristic
// functions,
//
//   rho_{ij,kl} = (1/pi^2) \int d^2xi1 d^2xi2 <i|D^dag(xi1)|k> <j|D^dag(xi2)|l> chi(xi1, xi2),
//
// evaluated exactly through the Gaussian moment engine, plus a tensor-product
// Gauss-Legendre quadrature of the same integral used as an independent check.

#include <complex>
#include <span>
#include <vector>

#include "cvdistill/chi.hpp"

namespace cvdistill {

/// One term coef * xi^xi_pow * conj(xi)^conj_pow.
struct DisplacementTerm {
  int xi_pow;
  int conj_pow;
  double coef;
};

/// <m|D(xi)|n> = exp(-|xi|^2/2) * sum of terms.
using DisplacementPoly = std::vector<DisplacementTerm>;

DisplacementPoly displacement_fock_poly(int m, int n);

/// Pointwise <m|D(xi)|n> for m, n < dim (row-major), from the ladder recurrence
/// D|n> = (a^dag - xi*)^n / sqrt(n!) |xi>. Independent of the Laguerre form.
std::vector<Complex> displacement_matrix(Complex xi, int dim);

/// rho_{ij,kl} with row index (i,j) and column index (k,l), row-major over (i,j).
class FockDensityMatrix {
 public:
  explicit FockDensityMatrix(int n_trunc);

  int n_trunc() const { return n_trunc_; }
  std::size_t dim() const { return dim_; }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_trunc_ + 1) +
           static_cast<std::size_t>(j);
  }

  Complex& operator()(std::size_t row, std::size_t col) { return elems_[row * dim_ + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return elems_[row * dim_ + col];
  }
  Complex& at(int i, int j, int k, int l) { return (*this)(index(i, j), index(k, l)); }
  const Complex& at(int i, int j, int k, int l) const { return (*this)(index(i, j), index(k, l)); }

  std::span<const Complex> data() const { return elems_; }
  double trace() const;
  bool is_hermitian(double tol = 1e-10) const;
  /// Mode-1 reduced matrix sum_j rho_{ij,kj}, (n_trunc+1)^2 row-major.
  std::vector<Complex> reduced_first() const;

 private:
  int n_trunc_;
  std::size_t dim_;
  std::vector<Complex> elems_;
};

/// Single element; `state` must be normalized.
Complex fock_element(const PolyGaussianChi& state, int i, int j, int k, int l);

/// All elements up to n_trunc; the lower triangle is filled by Hermitian symmetry.
FockDensityMatrix fock_matrix(const PolyGaussianChi& state, int n_trunc);

struct GridSpec {
  /// Half-width of each axis in units of the widest standard deviation of the
  /// state's Gaussian kernel.
  double radius_sigmas = 6.0;
  int points = 64;
};

/// Largest standard deviation of exp(-1/2 v^T K v) over the four real axes.
double widest_sigma(const GaussianKernel& kernel);

Complex quadrature_fock_element(const PolyGaussianChi& state, int i, int j, int k, int l,
                                const GridSpec& grid = {});

/// Every element with all indices <= max_index by one shared quadrature pass.
FockDensityMatrix quadrature_fock_block(const PolyGaussianChi& state, int max_index,
                                        const GridSpec& grid = {});

}  // namespace cvdistill
