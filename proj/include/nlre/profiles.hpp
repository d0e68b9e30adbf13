#pragma once

// Scalar Rabi-frequency profiles f~(k), g~(k): the design surface of the
// reservoir-engineering method. Profiles are nonnegative magnitudes; any
// constant phase lives in NLREScheme::phase_f / phase_g.

#include <nlohmann/json_fwd.hpp>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "nlre/fock.hpp"

namespace nlre {
namespace profiles {

struct Constant {
  double value;
};

// falling: h* - s (k - k*); rising: h* + s (k - k*); clamped at 0
struct LinearCrossing {
  double k_star;
  double h_star;
  double slope;
  bool rising;
};

// strength * |<k+order| a^dag^order f(n, order, eta) |k>| (exact Laguerre form)
struct IonLaguerre {
  int order;
  double eta;
  double strength = 1.0;
};

// strength * J_order(2 eta sqrt(k + (order+1)/2))
struct IonBessel {
  int order;
  double eta;
  double strength = 1.0;
};

// ATS flux-pumped profile: omega * |<k+order| ... |k>| with the exact
// Laguerre form in phi_a and omega = E_J phi_c e^{-phi_c^2/2} eps / 2.
struct Ats {
  int order;
  double phi_a;
  double e_j;
  double phi_c;
  double epsilon;
  double omega() const;
};

struct Tabulated {
  std::vector<double> values;
};

class RabiProfile {
 public:
  using Variant = std::variant<Constant, LinearCrossing, IonLaguerre, IonBessel, Ats, Tabulated>;

  RabiProfile() : v_(Constant{0.0}) {}
  RabiProfile(Variant v);  // NOLINT: implicit by design

  // profile value at integer k; never negative. Oscillatory variants are
  // zeroed past their first sign change (the clamp carries a warning flag).
  double eval(int k) const;
  // continuous interpolant used for crossing refinement
  double eval_continuous(double k) const;
  // analytic derivative where the variant has one, else central difference
  // with step 1 on the integer samples
  double derivative(double k) const;

  bool clamped() const { return clamp_hit_; }
  const Variant& spec() const { return v_; }

 private:
  Variant v_;
  int first_zero_ = -1;      // first integer k with raw value <= 0 (-1: none found)
  mutable bool clamp_hit_ = false;
  double raw(double k) const;
};

enum class Convergence { converges, diverges, undetermined };

struct ConvergenceReport {
  Convergence status;
  std::string note;
};

struct Crossing {
  double k_star;
  double h_star;
  double slope_f;
  double slope_g;
  bool gain_switch;  // true iff |f|/|g(+r)| passes from >1 to <1
};

struct NLREScheme {
  int raise_order = 0;  // r
  int lower_order = 0;  // l
  RabiProfile f_profile;
  RabiProfile g_profile;
  double kappa_eff = 1.0;
  double phase_f = 0.0;
  double phase_g = 0.0;

  int d() const { return raise_order + lower_order; }
  double f(int k) const { return f_profile.eval(k); }
  double g(int k) const { return g_profile.eval(k); }
};

double eval_profile(const RabiProfile& p, int k);

// all sign changes of |f(k)| - |g(k+r)| in [k_min, k_max], refined by
// bisection on the continuous interpolants to dk < 1e-6
std::vector<Crossing> find_crossing(const NLREScheme& scheme, double k_min, double k_max);

// tail behaviour of |f(k)/g(k+r)| over [horizon-20, horizon]
ConvergenceReport check_convergence(const NLREScheme& scheme, int horizon);

// LinearCrossing through (k*, h*) with slope s = cot(theta), theta measured
// from the vertical axis, 0 < theta < pi/2
RabiProfile linear_profile_from_angles(double k_star, double h_star, double theta, bool rising);

// two-sided linear scheme; g is anchored so that g(k*+r) = h*, matching the
// crossing convention h* = f(k*) = g(k*+r)
NLREScheme linear_scheme(int r, int l, double k_star, double h_star, double theta_f,
                         double theta_g, double kappa_eff = 1.0);

nlohmann::json profile_to_json(const RabiProfile& p);
RabiProfile profile_from_json(const nlohmann::json& j);
nlohmann::json scheme_to_json(const NLREScheme& s);
NLREScheme scheme_from_json(const nlohmann::json& j);

}  // namespace profiles
}  // namespace nlre
