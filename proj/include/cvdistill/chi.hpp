#pragma once

// Two-mode characteristic functions of the form
//
//   chi(xi1, xi2) = sum_a c_a v^a exp(-1/2 v^T K v),   v = (xi1, xi1*, xi2, xi2*)
//
// with xi and xi* treated as independent formal variables. The class is closed
// under the coherent operation t*a + r*a^dagger and under the thermal channel,
// so every state of the distillation pipelines is represented exactly.

#include <array>
#include <complex>
#include <compare>
#include <map>

#include <Eigen/Dense>

namespace cvdistill {

using Complex = std::complex<double>;

enum class Mode : int { One = 1, Two = 2 };

/// Exponents of (xi1, xi1*, xi2, xi2*).
struct MultiIndex {
  std::array<int, 4> e{};

  constexpr int degree() const { return e[0] + e[1] + e[2] + e[3]; }
  constexpr int mode_degree(Mode m) const {
    const int k = 2 * (static_cast<int>(m) - 1);
    return e[k] + e[k + 1];
  }
  constexpr MultiIndex plus(int var, int n = 1) const {
    MultiIndex r = *this;
    r.e[var] += n;
    return r;
  }
  constexpr auto operator<=>(const MultiIndex&) const = default;
};

/// exp(-1/2 v^T K v) with K complex symmetric.
struct GaussianKernel {
  Eigen::Matrix4cd quad = Eigen::Matrix4cd::Zero();

  bool is_symmetric(double tol = 1e-14) const;
  /// Swapping xi_i <-> xi_i* in K must equal conj(K).
  bool is_conjugate_consistent(double tol = 1e-14) const;
  /// Matrix M of the same form in (Re xi1, Im xi1, Re xi2, Im xi2). Real for
  /// conjugate-consistent kernels; the imaginary residue is discarded.
  Eigen::Matrix4d real_form() const;
  bool is_integrable() const;
};

using Polynomial = std::map<MultiIndex, Complex>;

inline constexpr int kDefaultMaxDegree = 8;

struct PolyGaussianChi {
  Polynomial poly;
  GaussianKernel kernel;
  int max_degree = kDefaultMaxDegree;

  int degree() const;
  /// chi(0,0): the trace of the represented operator.
  Complex trace() const;
  /// chi(-xi) == conj(chi(xi)) at the level of coefficients.
  bool is_hermitian(double tol = 1e-12) const;
};

/// t*a + r*a^dagger with real t, r and t^2 + r^2 = 1.
class CoherentOp {
 public:
  CoherentOp(double t, double r);
  /// r = sqrt(1 - t^2).
  static CoherentOp from_t(double t);
  static CoherentOp subtraction() { return {1.0, 0.0}; }
  static CoherentOp addition() { return {0.0, 1.0}; }

  double t() const { return t_; }
  double r() const { return r_; }

 private:
  double t_;
  double r_;
};

/// Thermal loss channel: transmissivity eta in (0,1], mean thermal occupation n_th.
class ChannelParams {
 public:
  ChannelParams(double eta, double n_th);

  double eta() const { return eta_; }
  double n_th() const { return n_th_; }

 private:
  double eta_;
  double n_th_;
};

PolyGaussianChi tmsv_chi(double s);
PolyGaussianChi vacuum_chi();
/// Product of thermal states with occupations n1, n2.
PolyGaussianChi thermal_product_chi(double n1, double n2);

/// (t a + r a^dag) rho (t a^dag + r a) on one mode. Output is unnormalized.
PolyGaussianChi apply_coherent_op(const PolyGaussianChi& state, Mode mode, const CoherentOp& op);

/// Beamsplitter model of the thermal channel on one mode.
PolyGaussianChi apply_thermal_channel(const PolyGaussianChi& state, Mode mode,
                                      const ChannelParams& ch);

Complex evaluate_chi(const PolyGaussianChi& state, Complex xi1, Complex xi2);

struct Normalized {
  PolyGaussianChi state;
  double trace;
};

/// Divides out chi(0,0). Throws ZeroStateError when the trace is below 1e-30.
Normalized normalize(const PolyGaussianChi& state);

/// Drops coefficients below rel_tol * max |c|.
void prune(Polynomial& poly, double rel_tol = 1e-16);

}  // namespace cvdistill
