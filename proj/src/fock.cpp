#include "nlre/fock.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>

namespace nlre {
namespace fock {

Op make_lower(const FockSpace& space) {
  const int n = space.cutoff;
  Op a = Op::Zero(n, n);
  for (int k = 1; k < n; ++k) a(k - 1, k) = std::sqrt(double(k));
  return a;
}

Op make_raise(const FockSpace& space) { return make_lower(space).adjoint(); }

Op number_op(const FockSpace& space) {
  const int n = space.cutoff;
  Op m = Op::Zero(n, n);
  for (int k = 0; k < n; ++k) m(k, k) = double(k);
  return m;
}

Op position_op(const FockSpace& space) {
  Op a = make_lower(space);
  return (a + a.adjoint()) / std::sqrt(2.0);
}

Op momentum_op(const FockSpace& space) {
  Op a = make_lower(space);
  return cxd(0, 1) * (a.adjoint() - a) / std::sqrt(2.0);
}

Op rotation_op(const FockSpace& space, int d) {
  const int n = space.cutoff;
  Op m = Op::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    double ph = 2.0 * M_PI * k / d;
    m(k, k) = cxd(std::cos(ph), std::sin(ph));
  }
  return m;
}

double displacement_element(int k, int r, double lambda) {
  if (k < 0) throw std::invalid_argument("displacement_element: k must be >= 0");
  if (r < 0) throw std::invalid_argument("displacement_element: r must be >= 0 (mirror via symmetry)");
  const double x = lambda * lambda;
  // generalized Laguerre L_k^{(r)}(x) by upward recurrence
  double lm1 = 0.0, l = 1.0;
  for (int j = 0; j < k; ++j) {
    double lp1 = ((2.0 * j + r + 1.0 - x) * l - (j + r) * lm1) / (j + 1.0);
    lm1 = l;
    l = lp1;
  }
  double logpre = 0.5 * (std::lgamma(k + 1.0) - std::lgamma(k + r + 1.0)) - x / 2.0;
  double lamr = (r == 0) ? 1.0 : std::pow(std::abs(lambda), r);
  double sign = (lambda < 0 && (r % 2)) ? -1.0 : 1.0;
  return sign * std::exp(logpre) * lamr * l;
}

Op displacement_operator(const FockSpace& space, cxd alpha) {
  const int n = space.cutoff;
  Op d = Op::Zero(n, n);
  const double mag = std::abs(alpha);
  if (mag == 0.0) return Op::Identity(n, n);
  const cxd phase = alpha / mag;
  for (int r = 0; r < n; ++r) {
    // D_{k+r,k} = radial(k,r) * phase^r ; D_{k,k+r} = radial(k,r) * (-conj(phase))^r
    cxd up = std::pow(phase, r);
    cxd dn = std::pow(-std::conj(phase), r);
    for (int k = 0; k + r < n; ++k) {
      double rad = displacement_element(k, r, mag);
      d(k + r, k) = rad * up;
      if (r > 0) d(k, k + r) = rad * dn;
    }
  }
  return d;
}

namespace {

// N_n^m = sqrt((n-m)!/(n+m)!) P_n^m(cos th)  (Condon-Shortley included),
// by the normalized three-term recurrence; stable for n up to a few hundred.
double assoc_legendre_ratio_norm(int n, int m, double costh) {
  const double sinth = std::sqrt(std::max(0.0, 1.0 - costh * costh));
  double seed = 1.0;
  for (int j = 1; j <= m; ++j) seed *= -sinth * std::sqrt((2.0 * j - 1.0) / (2.0 * j));
  if (n == m) return seed;
  double nm1 = seed;
  double cur = costh * std::sqrt(2.0 * m + 1.0) * seed;
  for (int nn = m + 2; nn <= n; ++nn) {
    double a = std::sqrt(double(nn) * nn - double(m) * m);
    double b = std::sqrt(double(nn + m - 1.0) * (nn - m - 1.0));
    double nxt = ((2.0 * nn - 1.0) * costh * cur - b * nm1) / a;
    nm1 = cur;
    cur = nxt;
  }
  return cur;
}

}  // namespace

cxd squeeze_element(int k, int kp, cxd zeta) {
  if (k < 0 || kp < 0) throw std::invalid_argument("squeeze_element: indices must be >= 0");
  if (((k + kp) % 2) != 0) return cxd(0, 0);  // parity selection rule, exact
  const double mag = std::abs(zeta);
  if (mag == 0.0) return (k == kp) ? cxd(1, 0) : cxd(0, 0);
  const double phi = std::arg(zeta);
  const double costh = 1.0 / std::cosh(mag);
  const int n = (k + kp) / 2;
  const int m = (k - kp) / 2;
  const int am = std::abs(m);
  double nnm = assoc_legendre_ratio_norm(n, am, costh);
  if (m < 0) nnm *= (am % 2) ? -1.0 : 1.0;  // N_n^{-m} = (-1)^m N_n^m
  cxd eimphi(std::cos(m * phi), std::sin(m * phi));
  return std::sqrt(costh) * nnm * eimphi;
}

Op squeeze_operator(const FockSpace& space, cxd zeta) {
  const int n = space.cutoff;
  Op s = Op::Zero(n, n);
  for (int k = 0; k < n; ++k)
    for (int kp = (k % 2); kp < n; kp += 2) s(k, kp) = squeeze_element(k, kp, zeta);
  return s;
}

RealOp position_transform(const FockSpace& space, const std::vector<double>& grid) {
  const int g = int(grid.size());
  for (int i = 1; i < g; ++i)
    if (grid[i] <= grid[i - 1])
      throw std::invalid_argument("position_transform: grid must be strictly increasing");
  const int n = space.cutoff;
  RealOp t(g, n);
  const double c0 = std::pow(M_PI, -0.25);
  for (int i = 0; i < g; ++i) {
    const double q = grid[i];
    t(i, 0) = c0 * std::exp(-q * q / 2.0);
    if (n > 1) t(i, 1) = std::sqrt(2.0) * q * t(i, 0);
    for (int k = 2; k < n; ++k)
      t(i, k) = std::sqrt(2.0 / k) * q * t(i, k - 1) - std::sqrt((k - 1.0) / k) * t(i, k - 2);
  }
  return t;
}

Op tensor(const Op& a, const Op& b) { return Eigen::kroneckerProduct(a, b).eval(); }

namespace {
SpOp sparse_kron(const Op& a, const Op& b, double drop = 0.0) {
  const int ar = int(a.rows()), ac = int(a.cols());
  const int br = int(b.rows()), bc = int(b.cols());
  std::vector<Eigen::Triplet<cxd>> trip;
  for (int i = 0; i < ar; ++i)
    for (int j = 0; j < ac; ++j) {
      if (std::abs(a(i, j)) <= drop) continue;
      for (int p = 0; p < br; ++p)
        for (int q = 0; q < bc; ++q) {
          if (std::abs(b(p, q)) <= drop) continue;
          trip.emplace_back(i * br + p, j * bc + q, a(i, j) * b(p, q));
        }
    }
  SpOp s(ar * br, ac * bc);
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}
}  // namespace

SpOp spre(const Op& a) {
  const int n = int(a.rows());
  return sparse_kron(Op::Identity(n, n), a);
}

SpOp spost(const Op& b) {
  const int n = int(b.rows());
  return sparse_kron(b.transpose(), Op::Identity(n, n));
}

SpOp vectorize_dissipator(const Op& l) {
  if (l.rows() != l.cols()) throw std::invalid_argument("vectorize_dissipator: L must be square");
  Op ldl = l.adjoint() * l;
  SpOp s = sparse_kron(l.conjugate(), l);
  s -= cxd(0.5, 0) * (spre(ldl) + spost(ldl));
  return s;
}

SpOp hamiltonian_superop(const Op& h) {
  SpOp s = spre(h);
  s -= spost(h);
  return cxd(0, -1) * s;
}

Vec coherent_vector(const FockSpace& space, cxd alpha) {
  const int n = space.cutoff;
  Vec v(n);
  const double mag = std::abs(alpha);
  if (mag == 0.0) {
    v.setZero();
    v(0) = 1.0;
    return v;
  }
  const double th = std::arg(alpha);
  for (int k = 0; k < n; ++k) {
    double lg = k * std::log(mag) - 0.5 * std::lgamma(k + 1.0) - mag * mag / 2.0;
    v(k) = std::exp(lg) * cxd(std::cos(k * th), std::sin(k * th));
  }
  v /= v.norm();
  return v;
}

double hermiticity_defect(const Op& a) { return (a - a.adjoint()).cwiseAbs().maxCoeff(); }

DensityOperator::DensityOperator(Op m) : rho(std::move(m)) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("DensityOperator: not square");
  if (hermiticity_defect(rho) > 1e-12 * std::max(1.0, rho.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("DensityOperator: not hermitian");
  double tr = rho.trace().real();
  if (std::abs(tr - 1.0) > 1e-9) throw std::invalid_argument("DensityOperator: trace != 1");
  Eigen::SelfAdjointEigenSolver<Op> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-9)
    throw std::invalid_argument("DensityOperator: not positive semidefinite");
}

double top_population(const Vec& amplitudes, int levels) {
  const int n = int(amplitudes.size());
  double p = 0.0;
  for (int k = std::max(0, n - levels); k < n; ++k) p += std::norm(amplitudes(k));
  return p;
}

double top_population(const Op& rho, int levels) {
  const int n = int(rho.rows());
  double p = 0.0;
  for (int k = std::max(0, n - levels); k < n; ++k) p += rho(k, k).real();
  return p;
}

void certify_cutoff(const Vec& amplitudes, double tol, int levels) {
  double p = top_population(amplitudes, levels);
  if (p > tol)
    throw truncation_error("cutoff certification failed: top-" + std::to_string(levels) +
                           " population " + std::to_string(p));
}

}  // namespace fock
}  // namespace nlre
