#pragma once

// Truncated-Fock-space linear algebra: ladder/number/quadrature operators,
// displacement and squeezing matrix elements, position-basis transforms and
// superoperator vectorization. Everything downstream builds on this module.

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <stdexcept>
#include <vector>

namespace nlre {

using cxd = std::complex<double>;
using Op = Eigen::MatrixXcd;
using RealOp = Eigen::MatrixXd;
using Vec = Eigen::VectorXcd;
using RealVec = Eigen::VectorXd;
using SpOp = Eigen::SparseMatrix<cxd>;

struct truncation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace fock {

/// Truncated oscillator Hilbert space |0>..|cutoff-1>.
struct FockSpace {
  int cutoff;
  explicit FockSpace(int n) : cutoff(n) {
    if (n < 1) throw std::invalid_argument("FockSpace: cutoff must be >= 1");
  }
  int dim() const { return cutoff; }
};

// lower[k-1,k] = sqrt(k); raise = lower^H
Op make_lower(const FockSpace& space);
Op make_raise(const FockSpace& space);
Op number_op(const FockSpace& space);
// q = (a + a^dag)/sqrt(2), p = i(a^dag - a)/sqrt(2), so [q,p] = i
Op position_op(const FockSpace& space);
Op momentum_op(const FockSpace& space);
// P = exp(i 2 pi n / d)
Op rotation_op(const FockSpace& space, int d);

// sqrt(k!/(k+r)!) e^{-lam^2/2} lam^r L_k^{(r)}(lam^2); the r-th lower
// diagonal of D(i*lam) in the Fock basis. Log-domain prefactor, Laguerre by
// recurrence, stable up to k of a few hundred.
double displacement_element(int k, int r, double lambda);

// Full displacement operator D(alpha) = exp(alpha a^dag - conj(alpha) a),
// assembled element-wise from the analytic Laguerre form (no expm).
Op displacement_operator(const FockSpace& space, cxd alpha);

// <k| S(zeta) |kp> for S(zeta) = exp((conj(zeta) a^2 - zeta a^dag^2)/2),
// via sqrt(cos th) X_n^m(th, arg zeta), cos th = 1/cosh|zeta|,
// n = (k+kp)/2, m = (k-kp)/2. Exactly zero for opposite parity.
cxd squeeze_element(int k, int kp, cxd zeta);

Op squeeze_operator(const FockSpace& space, cxd zeta);

// T_PF entry (q,k) = pi^{-1/4} (2^k k!)^{-1/2} e^{-q^2/2} H_k(q), computed by
// the Hermite-function recurrence. Rows indexed by grid points.
RealOp position_transform(const FockSpace& space, const std::vector<double>& grid);

// Kronecker product, left factor = spin or first mode (fixed repo convention).
Op tensor(const Op& a, const Op& b);

// --- superoperator vectorization (column-stacking: vec(A X B) = (B^T (x) A) vec X) ---
SpOp spre(const Op& a);                  // X -> A X
SpOp spost(const Op& b);                 // X -> X B
SpOp vectorize_dissipator(const Op& l);  // X -> L X L^H - 1/2 {L^H L, X}
SpOp hamiltonian_superop(const Op& h);   // X -> -i [H, X]

// coherent state |alpha> amplitudes (log-domain, normalized in truncation)
Vec coherent_vector(const FockSpace& space, cxd alpha);

double hermiticity_defect(const Op& a);

/// Density operator with invariants checked on construction:
/// |tr-1| < 1e-9, min eigenvalue > -1e-9, hermitian to 1e-12.
struct DensityOperator {
  Op rho;
  explicit DensityOperator(Op m);
};

// population of the top `levels` Fock states; used for cutoff certification
double top_population(const Vec& amplitudes, int levels = 5);
double top_population(const Op& rho, int levels = 5);

// throws truncation_error when the top-level population exceeds `tol`
void certify_cutoff(const Vec& amplitudes, double tol = 1e-8, int levels = 5);

}  // namespace fock
}  // namespace nlre
