#include "cvdistill/chi.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "cvdistill/errors.hpp"

namespace cvdistill {

namespace {

// Variable slots of xi_i and xi_i* inside v.
constexpr int var_xi(Mode m) { return 2 * (static_cast<int>(m) - 1); }
constexpr int var_xi_conj(Mode m) { return var_xi(m) + 1; }

constexpr MultiIndex swap_conjugates(const MultiIndex& a) {
  return MultiIndex{{a.e[1], a.e[0], a.e[3], a.e[2]}};
}

void add_term(Polynomial& p, const MultiIndex& idx, Complex c) {
  if (c == Complex{}) return;
  p[idx] += c;
}

// out += coef * v_var * p
void accumulate_times_var(Polynomial& out, const Polynomial& p, int var, Complex coef) {
  for (const auto& [idx, c] : p) add_term(out, idx.plus(var), coef * c);
}

// out += coef * D_var p, where D_var (p e^Q) = (dp/dv_var - p (K v)_var) e^Q.
void accumulate_total_derivative(Polynomial& out, const Polynomial& p, const Eigen::Matrix4cd& k,
                                 int var, Complex coef) {
  for (const auto& [idx, c] : p) {
    if (idx.e[var] > 0) {
      MultiIndex lowered = idx;
      lowered.e[var] -= 1;
      add_term(out, lowered, coef * c * static_cast<double>(idx.e[var]));
    }
    for (int j = 0; j < 4; ++j) {
      const Complex kj = k(var, j);
      if (kj != Complex{}) add_term(out, idx.plus(j), -coef * c * kj);
    }
  }
}

Eigen::Matrix4cd conjugate_basis() {
  // v = T u, u = (Re xi1, Im xi1, Re xi2, Im xi2)
  const Complex i{0.0, 1.0};
  Eigen::Matrix4cd t = Eigen::Matrix4cd::Zero();
  t(0, 0) = 1.0;
  t(0, 1) = i;
  t(1, 0) = 1.0;
  t(1, 1) = -i;
  t(2, 2) = 1.0;
  t(2, 3) = i;
  t(3, 2) = 1.0;
  t(3, 3) = -i;
  return t;
}

}  // namespace

bool GaussianKernel::is_symmetric(double tol) const {
  const double scale = std::max(1.0, quad.cwiseAbs().maxCoeff());
  return (quad - quad.transpose()).cwiseAbs().maxCoeff() <= tol * scale;
}

bool GaussianKernel::is_conjugate_consistent(double tol) const {
  static constexpr std::array<int, 4> kSwap{1, 0, 3, 2};
  const double scale = std::max(1.0, quad.cwiseAbs().maxCoeff());
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k)
      if (std::abs(quad(kSwap[j], kSwap[k]) - std::conj(quad(j, k))) > tol * scale) return false;
  return true;
}

Eigen::Matrix4d GaussianKernel::real_form() const {
  const Eigen::Matrix4cd t = conjugate_basis();
  const Eigen::Matrix4cd m = t.transpose() * quad * t;
  Eigen::Matrix4d re = m.real();
  return 0.5 * (re + re.transpose());
}

bool GaussianKernel::is_integrable() const {
  if (!is_conjugate_consistent(1e-10)) return false;
  Eigen::LLT<Eigen::Matrix4d> llt(real_form());
  return llt.info() == Eigen::Success;
}

int PolyGaussianChi::degree() const {
  int d = 0;
  for (const auto& [idx, c] : poly) d = std::max(d, idx.degree());
  return d;
}

Complex PolyGaussianChi::trace() const {
  const auto it = poly.find(MultiIndex{});
  return it == poly.end() ? Complex{} : it->second;
}

bool PolyGaussianChi::is_hermitian(double tol) const {
  if (!kernel.is_symmetric(tol) || !kernel.is_conjugate_consistent(tol)) return false;
  double scale = 0.0;
  for (const auto& [idx, c] : poly) scale = std::max(scale, std::abs(c));
  const double bound = tol * std::max(1.0, scale);
  for (const auto& [idx, c] : poly) {
    const Complex image = (idx.degree() % 2 == 0 ? 1.0 : -1.0) * std::conj(c);
    const auto it = poly.find(swap_conjugates(idx));
    const Complex partner = it == poly.end() ? Complex{} : it->second;
    if (std::abs(partner - image) > bound) return false;
  }
  return true;
}

CoherentOp::CoherentOp(double t, double r) : t_(t), r_(r) {
  if (!(t >= 0.0 && t <= 1.0 && r >= 0.0 && r <= 1.0))
    throw std::invalid_argument("coherent operation requires t, r in [0,1]");
  if (std::abs(t * t + r * r - 1.0) > 1e-12)
    throw std::invalid_argument("coherent operation requires t^2 + r^2 = 1");
}

CoherentOp CoherentOp::from_t(double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("t must lie in [0,1]");
  return CoherentOp(t, std::sqrt(std::max(0.0, 1.0 - t * t)));
}

ChannelParams::ChannelParams(double eta, double n_th) : eta_(eta), n_th_(n_th) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0,1]");
  if (!(n_th >= 0.0) || !std::isfinite(n_th)) throw std::invalid_argument("n_th must be >= 0");
}

PolyGaussianChi tmsv_chi(double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("squeezing must be >= 0");
  PolyGaussianChi chi;
  chi.poly[MultiIndex{}] = 1.0;
  const double ch = std::cosh(2.0 * s);
  const double sh = std::sinh(2.0 * s);
  auto& k = chi.kernel.quad;
  // -1/2 (|xi1|^2 + |xi2|^2) cosh 2s + 1/2 (xi1 xi2 + xi1* xi2*) sinh 2s
  k(0, 1) = k(1, 0) = 0.5 * ch;
  k(2, 3) = k(3, 2) = 0.5 * ch;
  k(0, 2) = k(2, 0) = -0.5 * sh;
  k(1, 3) = k(3, 1) = -0.5 * sh;
  return chi;
}

PolyGaussianChi vacuum_chi() { return tmsv_chi(0.0); }

PolyGaussianChi thermal_product_chi(double n1, double n2) {
  if (!(n1 >= 0.0 && n2 >= 0.0)) throw std::invalid_argument("thermal occupation must be >= 0");
  PolyGaussianChi chi;
  chi.poly[MultiIndex{}] = 1.0;
  auto& k = chi.kernel.quad;
  k(0, 1) = k(1, 0) = 0.5 * (2.0 * n1 + 1.0);
  k(2, 3) = k(3, 2) = 0.5 * (2.0 * n2 + 1.0);
  return chi;
}

PolyGaussianChi apply_coherent_op(const PolyGaussianChi& state, Mode mode, const CoherentOp& op) {
  if (state.degree() + 2 > state.max_degree)
    throw DegreeOverflowError("coherent operation would raise polynomial degree to " +
                              std::to_string(state.degree() + 2) + " (max " +
                              std::to_string(state.max_degree) + ")");
  const int x = var_xi(mode);
  const int xc = var_xi_conj(mode);
  const auto& k = state.kernel.quad;
  const double t = op.t();
  const double r = op.r();

  // Tr[(t a + r a^dag) rho (t a^dag + r a) D] = Tr[rho (t a^dag + r a) D (t a + r a^dag)]
  // a^dag D = (d/dxi + xi*/2) D,   a D = (-d/dxi* + xi/2) D,
  // D a^dag = (d/dxi - xi*/2) D,   D a = (-d/dxi* - xi/2) D.
  Polynomial inner;
  if (t != 0.0) {
    accumulate_total_derivative(inner, state.poly, k, x, t);
    accumulate_times_var(inner, state.poly, xc, 0.5 * t);
  }
  if (r != 0.0) {
    accumulate_total_derivative(inner, state.poly, k, xc, -r);
    accumulate_times_var(inner, state.poly, x, 0.5 * r);
  }

  Polynomial outer;
  if (t != 0.0) {
    accumulate_total_derivative(outer, inner, k, xc, -t);
    accumulate_times_var(outer, inner, x, -0.5 * t);
  }
  if (r != 0.0) {
    accumulate_total_derivative(outer, inner, k, x, r);
    accumulate_times_var(outer, inner, xc, -0.5 * r);
  }
  prune(outer);

  PolyGaussianChi out;
  out.poly = std::move(outer);
  out.kernel = state.kernel;
  out.max_degree = state.max_degree;
  return out;
}

PolyGaussianChi apply_thermal_channel(const PolyGaussianChi& state, Mode mode,
                                      const ChannelParams& ch) {
  const double eta = ch.eta();
  const double root = std::sqrt(eta);
  const int x = var_xi(mode);
  const int xc = var_xi_conj(mode);

  PolyGaussianChi out;
  out.max_degree = state.max_degree;
  for (const auto& [idx, c] : state.poly)
    out.poly[idx] = c * std::pow(root, idx.mode_degree(mode));

  std::array<double, 4> scale{1.0, 1.0, 1.0, 1.0};
  scale[x] = scale[xc] = root;
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) out.kernel.quad(j, k) = state.kernel.quad(j, k) * (scale[j] * scale[k]);

  const double added = 0.5 * (2.0 * ch.n_th() + 1.0) * (1.0 - eta);
  out.kernel.quad(x, xc) += added;
  out.kernel.quad(xc, x) += added;
  prune(out.poly);
  return out;
}

Complex evaluate_chi(const PolyGaussianChi& state, Complex xi1, Complex xi2) {
  const Eigen::Vector4cd v(xi1, std::conj(xi1), xi2, std::conj(xi2));
  const Complex exponent = -0.5 * v.transpose() * state.kernel.quad * v;
  Complex sum{};
  for (const auto& [idx, c] : state.poly) {
    Complex term = c;
    for (int j = 0; j < 4; ++j)
      for (int p = 0; p < idx.e[j]; ++p) term *= v[j];
    sum += term;
  }
  return sum * std::exp(exponent);
}

Normalized normalize(const PolyGaussianChi& state) {
  const Complex tr = state.trace();
  if (std::abs(tr.imag()) > 1e-10 * std::max(1.0, std::abs(tr.real())))
    throw NumericError("state trace is not real");
  if (tr.real() < 1e-30) throw ZeroStateError("state has vanishing trace");
  Normalized n{state, tr.real()};
  for (auto& [idx, c] : n.state.poly) c /= tr.real();
  n.state.poly[MultiIndex{}] = 1.0;
  return n;
}

void prune(Polynomial& poly, double rel_tol) {
  double biggest = 0.0;
  for (const auto& [idx, c] : poly) biggest = std::max(biggest, std::abs(c));
  const double cut = rel_tol * biggest;
  std::erase_if(poly, [cut](const auto& kv) { return std::abs(kv.second) <= cut; });
}

}  // namespace cvdistill
