#pragma once

// Dark-state manifolds from the kernel recurrence of the jump operator, and
// the closed-form statistics of the linear-crossing case: CMB/CMP
// distributions, their moments, relative entropy, shifted Fock states and
// the predicted confinement rate.

#include <optional>
#include <string>
#include <vector>

#include "nlre/fock.hpp"
#include "nlre/profiles.hpp"

namespace nlre {
namespace dark {

enum class Truth { true_dark, exponentially_good };

struct DarkState {
  int mu = 0;                 // residue class in [0, d)
  Vec xi;                     // normalized amplitudes
  Truth truth = Truth::true_dark;
  double norm_defect = 0.0;   // tail mass that would live above the cutoff
  double leak_proxy = 0.0;    // max_{j<r} g(j) |xi_{j+l}| over this class
};

struct BosonDistribution {
  std::vector<double> p;
  double mean() const;
  double variance() const;
  double mandel_q() const;
  double skewness() const;
  static BosonDistribution from_state(const Vec& xi);
  void validate() const;  // nonnegative, sums to 1 within 1e-12
};

// one normalized state per residue class, built by forward recursion in
// log-magnitude + phase. Throws truncation_error when the tail mass above
// the cutoff exceeds 1e-8 and std::runtime_error when no stabilizing
// crossing exists.
std::vector<DarkState> solve_recurrence(const profiles::NLREScheme& scheme,
                                        const fock::FockSpace& space);

// labels l true / r exponentially-good states (residues mu >= l) and fills
// the leakage proxies
std::vector<DarkState> classify_states(const profiles::NLREScheme& scheme,
                                       std::vector<DarkState> states);

// cutoff policy N = ceil(k* + 8 sqrt(var) + 10), then certified
int auto_cutoff(const profiles::NLREScheme& scheme);

// ---- Conway-Maxwell-Binomial machinery (linear crossings) ----

struct CMBParams {
  double m;
  double theta;       // (s_f/s_g)^2
  double k_star;
  double h_over_sg;   // h*/s_g
  int d;
  double x_of_k(double k) const { return (k - k_star + h_over_sg) / d - 1.0; }
};

CMBParams cmb_params(const profiles::Crossing& crossing, int d);

// log of the unnormalized Gamma-extended pdf theta^x / (x!(m-x)!)^2;
// -inf outside the positive-Gamma support (-1 < x < m+1)
double cmb_log_unnorm(const CMBParams& params, double x);

// pdf over one residue class, normalized by direct summation (authoritative)
std::vector<double> cmb_class_pdf(const CMBParams& params, int mu, int cutoff);

struct Moments {
  double mean;
  double variance;
};

// E[X], Var(X) of CMB(m, theta, 2) via the 2F1 closed forms (terminating for
// integer m, convergent series for theta < 1; clipped summation otherwise)
Moments cmb_moments_x(double m, double theta);

// Eq.-10 affine map to boson-number moments
Moments cmb_moments(const CMBParams& params);

// the 3F2 closed-form normalization (cross-check only; summation is
// authoritative). Returns the inverse normalization constant for class 0.
double cmb_norm_3f2(const CMBParams& params);

// CMP(lambda, 2): pdf over integers, normalized by summation
std::vector<double> cmp_pdf(double lambda, int x_max);
double cmp_log_unnorm(double lambda, double x);

// divergent companion ((y!)^2 / lambda^y); a finite support bound is
// mandatory, y_max < 0 throws
std::vector<double> cmp_divergent_pdf(double lambda, int y_max);

// CMP approximation of the a^d - alpha^d stabilized distribution over the
// full Fock lattice (the s_f -> 0 limit of the linear-crossing analysis)
std::vector<double> standard_cat_cmp_approx(double alpha, int d, int cutoff);

// parity-projected Poisson(alpha^2) on residue class mu (mod d)
std::vector<double> projected_poisson(double alpha, int d, int mu, int cutoff);

// S(p||q) = sum p log(p/q), q floored at 1e-300; throws on support violation
double relative_entropy(const std::vector<double>& p, const std::vector<double>& q);
// Tr rho (log rho - log sigma)
double relative_entropy(const fock::DensityOperator& rho, const fock::DensityOperator& sigma);

// ---- nonlinear shifted Fock states (subsystem decomposition) ----

struct ShiftedFockBasis {
  std::vector<Vec> plus;    // |phi_{k,+}>
  std::vector<Vec> minus;   // |phi_{k,->}
  std::vector<double> norm; // N_k (pre-normalization factors)
  double mask_defect = 0.0; // weight zeroed where the Poisson reference underflows
  double f_ratio(int l, int k) const { return norm[k] / norm[k - l]; }
};

ShiftedFockBasis shifted_fock_basis(const BosonDistribution& dist, double alpha, int k_max,
                                    const fock::FockSpace& space);

struct ConfinementPrediction {
  double rate;
  bool skew_corrected;
  std::string note;
};

// kappa_conf ~ 4 kappa_eff f(<n>)^2 / var, with the sqrt(1-Skew) correction
// applied only for s_f < s_g
ConfinementPrediction predicted_confinement_rate(const profiles::NLREScheme& scheme);

void export_csv(const std::vector<DarkState>& states, const std::string& path);

}  // namespace dark
}  // namespace nlre
