#include "cvdistill/fock.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "cvdistill/moments.hpp"
#include "cvdistill/quadrature.hpp"
#include "cvdistill/simd/kernels.hpp"

namespace cvdistill {

namespace {

// Coefficients of the generalized Laguerre polynomial L_n^(a)(x) in powers of x.
std::vector<double> laguerre(int n, int a) {
  std::vector<double> prev{1.0};
  if (n == 0) return prev;
  std::vector<double> cur{1.0 + a, -1.0};
  for (int k = 1; k < n; ++k) {
    // (k+1) L_{k+1} = (2k+1+a-x) L_k - (k+a) L_{k-1}
    std::vector<double> next(cur.size() + 1, 0.0);
    for (std::size_t p = 0; p < cur.size(); ++p) {
      next[p] += (2.0 * k + 1.0 + a) * cur[p];
      next[p + 1] -= cur[p];
    }
    for (std::size_t p = 0; p < prev.size(); ++p) next[p] -= (k + a) * prev[p];
    for (double& c : next) c /= (k + 1.0);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// sqrt(lo! / hi!) for lo <= hi
double sqrt_factorial_ratio(int lo, int hi) {
  double r = 1.0;
  for (int k = lo + 1; k <= hi; ++k) r /= std::sqrt(static_cast<double>(k));
  return r;
}

// <i|D^dag(xi)|k> = <i|D(-xi)|k>: flip sign of odd-degree terms.
DisplacementPoly dagger_poly(int i, int k) {
  DisplacementPoly p = displacement_fock_poly(i, k);
  for (auto& term : p)
    if ((term.xi_pow + term.conj_pow) % 2 != 0) term.coef = -term.coef;
  return p;
}

void require_normalized(const PolyGaussianChi& state) {
  if (std::abs(state.trace() - Complex{1.0}) > 1e-9)
    throw std::invalid_argument("Fock reconstruction requires a normalized state");
}

Eigen::MatrixXcd augmented_kernel(const PolyGaussianChi& state) {
  Eigen::MatrixXcd k = state.kernel.quad;
  // exp(-|xi1|^2/2 - |xi2|^2/2) carried by the displacement matrix elements
  k(0, 1) += 0.5;
  k(1, 0) += 0.5;
  k(2, 3) += 0.5;
  k(3, 2) += 0.5;
  return k;
}

}  // namespace

DisplacementPoly displacement_fock_poly(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("Fock indices must be non-negative");
  DisplacementPoly out;
  if (m >= n) {
    const int a = m - n;
    const double pref = sqrt_factorial_ratio(n, m);
    const auto lag = laguerre(n, a);
    for (int k = 0; k < static_cast<int>(lag.size()); ++k)
      if (lag[k] != 0.0) out.push_back({a + k, k, pref * lag[k]});
  } else {
    const int a = n - m;
    const double pref = sqrt_factorial_ratio(m, n) * (a % 2 == 0 ? 1.0 : -1.0);
    const auto lag = laguerre(m, a);
    for (int k = 0; k < static_cast<int>(lag.size()); ++k)
      if (lag[k] != 0.0) out.push_back({k, a + k, pref * lag[k]});
  }
  return out;
}

std::vector<Complex> displacement_matrix(Complex xi, int dim) {
  if (dim < 1) throw std::invalid_argument("dimension must be positive");
  const auto d = static_cast<std::size_t>(dim);
  std::vector<Complex> out(d * d);
  // column n holds D|n>; components above the truncation never feed lower ones
  std::vector<Complex> col(d);
  col[0] = std::exp(-0.5 * std::norm(xi));
  for (std::size_t m = 1; m < d; ++m) col[m] = col[m - 1] * xi / std::sqrt(static_cast<double>(m));
  for (std::size_t n = 0; n < d; ++n) {
    if (n > 0) {
      std::vector<Complex> next(d);
      for (std::size_t m = 0; m < d; ++m) {
        Complex v = -std::conj(xi) * col[m];
        if (m > 0) v += std::sqrt(static_cast<double>(m)) * col[m - 1];
        next[m] = v / std::sqrt(static_cast<double>(n));
      }
      col = std::move(next);
    }
    for (std::size_t m = 0; m < d; ++m) out[m * d + n] = col[m];
  }
  return out;
}

FockDensityMatrix::FockDensityMatrix(int n_trunc) : n_trunc_(n_trunc) {
  if (n_trunc < 0) throw std::invalid_argument("truncation must be >= 0");
  dim_ = static_cast<std::size_t>(n_trunc + 1) * static_cast<std::size_t>(n_trunc + 1);
  elems_.assign(dim_ * dim_, Complex{});
}

double FockDensityMatrix::trace() const {
  double tr = 0.0;
  for (std::size_t k = 0; k < dim_; ++k) tr += (*this)(k, k).real();
  return tr;
}

bool FockDensityMatrix::is_hermitian(double tol) const {
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol) return false;
  return true;
}

std::vector<Complex> FockDensityMatrix::reduced_first() const {
  const int d = n_trunc_ + 1;
  std::vector<Complex> out(static_cast<std::size_t>(d * d));
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j) out[static_cast<std::size_t>(i * d + k)] += at(i, j, k, j);
  return out;
}

FockDensityMatrix fock_matrix(const PolyGaussianChi& state, int n_trunc) {
  require_normalized(state);
  FockDensityMatrix rho(n_trunc);
  const int d = n_trunc + 1;

  std::array<int, 4> bounds{};
  for (const auto& [idx, c] : state.poly)
    for (int v = 0; v < 4; ++v) bounds[v] = std::max(bounds[v], idx.e[v]);
  for (int& b : bounds) b += n_trunc;
  const MomentTable table(augmented_kernel(state), bounds);
  const auto strides = table.strides();
  const Complex* moments = table.data();
  const double norm = table.normalization();

  struct Term {
    std::size_t offset;
    Complex coef;
  };
  std::vector<Term> state_terms;
  for (const auto& [idx, c] : state.poly) state_terms.push_back({table.offset(idx.e), c});

  // (offset contribution, coefficient) of <i|D^dag|k> on mode 1 and mode 2 slots
  std::vector<std::vector<std::pair<std::size_t, double>>> mode1(d * d), mode2(d * d);
  for (int i = 0; i < d; ++i) {
    for (int k = 0; k < d; ++k) {
      for (const auto& t : dagger_poly(i, k)) {
        mode1[i * d + k].push_back({strides[0] * t.xi_pow + strides[1] * t.conj_pow, t.coef});
        mode2[i * d + k].push_back({strides[2] * t.xi_pow + strides[3] * t.conj_pow, t.coef});
      }
    }
  }

  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const std::size_t row = rho.index(i, j);
      for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
          const std::size_t col = rho.index(k, l);
          if (col < row) continue;
          Complex acc{};
          for (const auto& [off1, c1] : mode1[i * d + k]) {
            for (const auto& [off2, c2] : mode2[j * d + l]) {
              Complex partial{};
              for (const auto& st : state_terms) partial += st.coef * moments[st.offset + off1 + off2];
              acc += (c1 * c2) * partial;
            }
          }
          rho(row, col) = norm * acc;
          if (col != row) rho(col, row) = std::conj(rho(row, col));
        }
      }
      rho(row, row) = rho(row, row).real();
    }
  }
  return rho;
}

Complex fock_element(const PolyGaussianChi& state, int i, int j, int k, int l) {
  require_normalized(state);
  if (std::min({i, j, k, l}) < 0) throw std::invalid_argument("Fock indices must be non-negative");
  const auto p1 = dagger_poly(i, k);
  const auto p2 = dagger_poly(j, l);
  std::array<int, 4> bounds{};
  for (const auto& [idx, c] : state.poly)
    for (int v = 0; v < 4; ++v) bounds[v] = std::max(bounds[v], idx.e[v]);
  bounds[0] += std::max(i, k);
  bounds[1] += std::max(i, k);
  bounds[2] += std::max(j, l);
  bounds[3] += std::max(j, l);
  const MomentTable table(augmented_kernel(state), bounds);

  Complex acc{};
  for (const auto& [idx, c] : state.poly) {
    for (const auto& t1 : p1) {
      for (const auto& t2 : p2) {
        const std::array<int, 4> e{idx.e[0] + t1.xi_pow, idx.e[1] + t1.conj_pow,
                                   idx.e[2] + t2.xi_pow, idx.e[3] + t2.conj_pow};
        acc += c * (t1.coef * t2.coef) * table.moment(e);
      }
    }
  }
  return table.normalization() * acc;
}

double widest_sigma(const GaussianKernel& kernel) {
  const Eigen::MatrixXd m = real_quadratic_form(Eigen::MatrixXcd(kernel.quad));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const double smallest = es.eigenvalues().minCoeff();
  if (!(smallest > 0.0)) throw std::invalid_argument("kernel is not integrable");
  return 1.0 / std::sqrt(smallest);
}

FockDensityMatrix quadrature_fock_block(const PolyGaussianChi& state, int max_index,
                                        const GridSpec& grid) {
  if (max_index < 0) throw std::invalid_argument("max_index must be >= 0");
  const int d = max_index + 1;
  const std::size_t nd = static_cast<std::size_t>(d * d);
  const double extent = grid.radius_sigmas * widest_sigma(state.kernel);
  const QuadratureRule rule = gauss_legendre(grid.points, -extent, extent);
  const std::size_t axis = rule.nodes.size();
  const std::size_t plane = axis * axis;
  const auto& kernel = state.kernel.quad;
  const simd::KernelTable& kern = simd::active();

  // Group the polynomial by mode-2 exponents: chi = sum_{cd} q_cd(xi1) xi2^c xi2*^d e^Q.
  std::map<std::pair<int, int>, std::vector<std::pair<std::pair<int, int>, Complex>>> groups;
  for (const auto& [idx, c] : state.poly)
    groups[{idx.e[2], idx.e[3]}].push_back({{idx.e[0], idx.e[1]}, c});
  const std::size_t ng = groups.size();

  auto power = [](Complex z, int n) {
    Complex r{1.0};
    for (int p = 0; p < n; ++p) r *= z;
    return r;
  };

  std::vector<Complex> xi(plane);
  std::vector<double> weight(plane);
  for (std::size_t a = 0; a < axis; ++a)
    for (std::size_t b = 0; b < axis; ++b) {
      xi[a * axis + b] = Complex(rule.nodes[a], rule.nodes[b]);
      weight[a * axis + b] = rule.weights[a] * rule.weights[b];
    }

  // Mode-2 tables: <j|D(-xi2)|l>, monomials per group, and the diagonal exponent.
  std::vector<double> d2_re(plane * nd), d2_im(plane * nd);
  std::vector<Complex> mono2(plane * ng);
  std::vector<double> q22(plane);
  for (std::size_t p = 0; p < plane; ++p) {
    const auto dm = displacement_matrix(-xi[p], d);
    for (std::size_t e = 0; e < nd; ++e) {
      d2_re[p * nd + e] = dm[e].real();
      d2_im[p * nd + e] = dm[e].imag();
    }
    std::size_t g = 0;
    for (const auto& [cd, terms] : groups)
      mono2[p * ng + g++] = power(xi[p], cd.first) * power(std::conj(xi[p]), cd.second);
    const Complex v2 = xi[p];
    const Complex v3 = std::conj(xi[p]);
    q22[p] = (-0.5 * (kernel(2, 2) * v2 * v2 + 2.0 * kernel(2, 3) * v2 * v3 + kernel(3, 3) * v3 * v3))
                 .real();
  }

  std::vector<double> acc_re(nd * nd, 0.0), acc_im(nd * nd, 0.0);
  std::vector<double> g_re(nd), g_im(nd);
  std::vector<Complex> q(ng);
  for (std::size_t p1 = 0; p1 < plane; ++p1) {
    const Complex v0 = xi[p1];
    const Complex v1 = std::conj(xi[p1]);
    std::size_t g = 0;
    for (const auto& [cd, terms] : groups) {
      Complex s{};
      for (const auto& [ab, c] : terms) s += c * power(v0, ab.first) * power(v1, ab.second);
      q[g++] = s;
    }
    const double q11 =
        (-0.5 * (kernel(0, 0) * v0 * v0 + 2.0 * kernel(0, 1) * v0 * v1 + kernel(1, 1) * v1 * v1)).real();
    const Complex l2 = v0 * kernel(0, 2) + v1 * kernel(1, 2);
    const Complex l3 = v0 * kernel(0, 3) + v1 * kernel(1, 3);

    std::fill(g_re.begin(), g_re.end(), 0.0);
    std::fill(g_im.begin(), g_im.end(), 0.0);
    for (std::size_t p2 = 0; p2 < plane; ++p2) {
      const double expo = q11 + q22[p2] - (l2 * xi[p2] + l3 * std::conj(xi[p2])).real();
      Complex poly{};
      for (std::size_t k = 0; k < ng; ++k) poly += q[k] * mono2[p2 * ng + k];
      const Complex val = (weight[p2] * std::exp(expo)) * poly;
      kern.caxpy(nd, val.real(), val.imag(), d2_re.data() + p2 * nd, d2_im.data() + p2 * nd,
                 g_re.data(), g_im.data());
    }

    const auto d1 = displacement_matrix(-xi[p1], d);
    for (std::size_t ik = 0; ik < nd; ++ik) {
      const Complex coef = weight[p1] * d1[ik];
      kern.caxpy(nd, coef.real(), coef.imag(), g_re.data(), g_im.data(), acc_re.data() + ik * nd,
                 acc_im.data() + ik * nd);
    }
  }

  FockDensityMatrix rho(max_index);
  const double inv_pi2 = 1.0 / (std::numbers::pi * std::numbers::pi);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l) {
          const std::size_t at = static_cast<std::size_t>(i * d + k) * nd + static_cast<std::size_t>(j * d + l);
          rho.at(i, j, k, l) = inv_pi2 * Complex(acc_re[at], acc_im[at]);
        }
  return rho;
}

Complex quadrature_fock_element(const PolyGaussianChi& state, int i, int j, int k, int l,
                                const GridSpec& grid) {
  if (std::min({i, j, k, l}) < 0) throw std::invalid_argument("Fock indices must be non-negative");
  const auto block = quadrature_fock_block(state, std::max({i, j, k, l}), grid);
  return block.at(i, j, k, l);
}

}  // namespace cvdistill
