#include "nlre/profiles.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

namespace nlre {
namespace profiles {

namespace {
constexpr int kFirstZeroScanBound = 4096;

double bessel_j(int order, double x) {
  if (x < 0) return (order % 2) ? -std::cyl_bessel_j(order, -x) : std::cyl_bessel_j(order, -x);
  return std::cyl_bessel_j(order, x);
}
}  // namespace

double Ats::omega() const { return 0.5 * e_j * phi_c * std::exp(-phi_c * phi_c / 2.0) * epsilon; }

RabiProfile::RabiProfile(Variant v) : v_(std::move(v)) {
  // locate the first sign change for the oscillatory variants once
  const bool oscillatory = std::holds_alternative<IonLaguerre>(v_) ||
                           std::holds_alternative<IonBessel>(v_) || std::holds_alternative<Ats>(v_);
  if (oscillatory) {
    for (int k = 0; k < kFirstZeroScanBound; ++k) {
      if (raw(k) <= 0.0) {
        first_zero_ = k;
        break;
      }
    }
  }
  if (auto* t = std::get_if<Tabulated>(&v_)) {
    for (double x : t->values)
      if (!std::isfinite(x)) throw std::invalid_argument("Tabulated profile: non-finite value");
  }
  if (auto* lc = std::get_if<LinearCrossing>(&v_)) {
    if (lc->h_star <= 0 || lc->slope < 0)
      throw std::invalid_argument("LinearCrossing: requires h* > 0, slope >= 0");
  }
}

double RabiProfile::raw(double k) const {
  return std::visit(
      [k](const auto& p) -> double {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Constant>) {
          return p.value;
        } else if constexpr (std::is_same_v<T, LinearCrossing>) {
          return p.rising ? p.h_star + p.slope * (k - p.k_star) : p.h_star - p.slope * (k - p.k_star);
        } else if constexpr (std::is_same_v<T, IonLaguerre>) {
          int ki = int(std::lround(k));
          return p.strength * fock::displacement_element(std::max(ki, 0), p.order, p.eta);
        } else if constexpr (std::is_same_v<T, IonBessel>) {
          return p.strength * bessel_j(p.order, 2.0 * p.eta * std::sqrt(k + (p.order + 1) / 2.0));
        } else if constexpr (std::is_same_v<T, Ats>) {
          int ki = int(std::lround(k));
          return p.omega() * fock::displacement_element(std::max(ki, 0), p.order, p.phi_a);
        } else {
          const auto& tv = p.values;
          if (tv.empty()) return 0.0;
          if (k <= 0) return tv.front();
          if (k >= double(tv.size() - 1)) return tv.back();
          int i = int(std::floor(k));
          double w = k - i;
          return (1 - w) * tv[i] + w * tv[i + 1];
        }
      },
      v_);
}

double RabiProfile::eval(int k) const {
  if (k < 0) throw std::invalid_argument("profile eval: k must be >= 0");
  if (first_zero_ >= 0 && k >= first_zero_) {
    clamp_hit_ = true;
    return 0.0;
  }
  double v = raw(double(k));
  if (v < 0.0) {
    clamp_hit_ = true;
    return 0.0;
  }
  return v;
}

double RabiProfile::eval_continuous(double k) const {
  if (first_zero_ >= 0 && k >= double(first_zero_)) {
    clamp_hit_ = true;
    return 0.0;
  }
  // analytic forms evaluate directly; the Laguerre-backed variants go through
  // a limited cubic on the integer samples (slopes from central differences)
  const bool sampled = std::holds_alternative<IonLaguerre>(v_) || std::holds_alternative<Ats>(v_);
  double v;
  if (!sampled) {
    v = raw(k);
  } else {
    int i = std::max(0, int(std::floor(k)));
    double t = k - i;
    double y0 = raw(double(i)), y1 = raw(double(i + 1));
    double m0 = (i == 0) ? (y1 - y0) : 0.5 * (y1 - raw(double(i - 1)));
    double m1 = 0.5 * (raw(double(i + 2)) - y0);
    // keep the interpolant from overshooting between samples
    double d = y1 - y0;
    if (d == 0) m0 = m1 = 0;
    double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
    double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
    v = h00 * y0 + h10 * m0 + h01 * y1 + h11 * m1;
  }
  if (v < 0.0) {
    clamp_hit_ = true;
    return 0.0;
  }
  return v;
}

double RabiProfile::derivative(double k) const {
  if (const auto* c = std::get_if<Constant>(&v_)) {
    (void)c;
    return 0.0;
  }
  if (const auto* lc = std::get_if<LinearCrossing>(&v_)) {
    return lc->rising ? lc->slope : -lc->slope;
  }
  if (const auto* ib = std::get_if<IonBessel>(&v_)) {
    double z = 2.0 * ib->eta * std::sqrt(k + (ib->order + 1) / 2.0);
    double jp = 0.5 * (bessel_j(ib->order - 1, z) - bessel_j(ib->order + 1, z));
    return ib->strength * jp * ib->eta / std::sqrt(k + (ib->order + 1) / 2.0);
  }
  // sampled variants: central difference with step 1
  double kp = std::max(k, 1.0);
  return 0.5 * (eval_continuous(kp + 1) - eval_continuous(kp - 1));
}

double eval_profile(const RabiProfile& p, int k) { return p.eval(k); }

std::vector<Crossing> find_crossing(const NLREScheme& scheme, double k_min, double k_max) {
  if (!(k_max > k_min) || k_min < 0)
    throw std::invalid_argument("find_crossing: need k_max > k_min >= 0");
  const int r = scheme.raise_order;
  auto delta = [&](double k) {
    return scheme.f_profile.eval_continuous(k) - scheme.g_profile.eval_continuous(k + r);
  };
  std::vector<Crossing> out;
  int lo = int(std::ceil(k_min)), hi = int(std::floor(k_max));
  for (int k = lo; k < hi; ++k) {
    double d0 = delta(k), d1 = delta(k + 1);
    if (d0 == 0.0 && d1 == 0.0) continue;
    if ((d0 > 0) == (d1 > 0) && d0 != 0.0 && d1 != 0.0) continue;
    double a = k, b = k + 1;
    double da = d0;
    for (int it = 0; it < 60 && (b - a) > 1e-7; ++it) {
      double m = 0.5 * (a + b);
      double dm = delta(m);
      if ((dm > 0) == (da > 0)) {
        a = m;
        da = dm;
      } else {
        b = m;
      }
    }
    double ks = 0.5 * (a + b);
    Crossing c;
    c.k_star = ks;
    c.h_star = scheme.f_profile.eval_continuous(ks);
    c.slope_f = scheme.f_profile.derivative(ks);
    c.slope_g = scheme.g_profile.derivative(ks + r);
    c.gain_switch = (d0 > 0 && d1 <= 0);
    out.push_back(c);
  }
  return out;
}

ConvergenceReport check_convergence(const NLREScheme& scheme, int horizon) {
  const int r = scheme.raise_order;
  double rmax = 0.0, rmin = std::numeric_limits<double>::infinity();
  bool div0 = false;
  for (int k = std::max(0, horizon - 20); k <= horizon; ++k) {
    double f = scheme.f(k);
    double g = scheme.g(k + r);
    if (g == 0.0) {
      if (f == 0.0) continue;  // both clamped: ratio vacuously fine
      div0 = true;
      continue;
    }
    double ratio = f / g;
    rmax = std::max(rmax, ratio);
    rmin = std::min(rmin, ratio);
  }
  if (div0) {
    return {Convergence::undetermined,
            "g vanished on the tail (Bessel zero or clamp); restrict the cutoff below the "
            "first zero of g past the crossing"};
  }
  if (!std::isfinite(rmin)) return {Convergence::undetermined, "empty tail"};
  if (rmax < 1.0 - 1e-6) return {Convergence::converges, ""};
  if (rmin > 1.0 + 1e-6) return {Convergence::diverges, ""};
  return {Convergence::undetermined, "tail ratio straddles 1"};
}

RabiProfile linear_profile_from_angles(double k_star, double h_star, double theta, bool rising) {
  if (!(theta > 0.0) || !(theta < M_PI / 2))
    throw std::invalid_argument("linear_profile_from_angles: need 0 < theta < pi/2");
  double s = 1.0 / std::tan(theta);
  return RabiProfile(LinearCrossing{k_star, h_star, s, rising});
}

NLREScheme linear_scheme(int r, int l, double k_star, double h_star, double theta_f,
                         double theta_g, double kappa_eff) {
  NLREScheme s;
  s.raise_order = r;
  s.lower_order = l;
  s.f_profile = linear_profile_from_angles(k_star, h_star, theta_f, false);
  s.g_profile = linear_profile_from_angles(k_star + r, h_star, theta_g, true);
  s.kappa_eff = kappa_eff;
  return s;
}

nlohmann::json profile_to_json(const RabiProfile& p) {
  nlohmann::json j;
  std::visit(
      [&j](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Constant>) {
          j = {{"variant", "constant"}, {"value", v.value}};
        } else if constexpr (std::is_same_v<T, LinearCrossing>) {
          j = {{"variant", "linear"},
               {"k_star", v.k_star},
               {"h_star", v.h_star},
               {"slope", v.slope},
               {"rising", v.rising}};
        } else if constexpr (std::is_same_v<T, IonLaguerre>) {
          j = {{"variant", "ion_laguerre"}, {"order", v.order}, {"eta", v.eta}, {"strength", v.strength}};
        } else if constexpr (std::is_same_v<T, IonBessel>) {
          j = {{"variant", "ion_bessel"}, {"order", v.order}, {"eta", v.eta}, {"strength", v.strength}};
        } else if constexpr (std::is_same_v<T, Ats>) {
          j = {{"variant", "ats"},  {"order", v.order},   {"phi_a", v.phi_a},
               {"e_j", v.e_j},      {"phi_c", v.phi_c},   {"epsilon", v.epsilon}};
        } else {
          j = {{"variant", "tabulated"}, {"values", v.values}};
        }
      },
      p.spec());
  return j;
}

RabiProfile profile_from_json(const nlohmann::json& j) {
  const std::string v = j.at("variant").get<std::string>();
  if (v == "constant") return RabiProfile(Constant{j.at("value").get<double>()});
  if (v == "linear")
    return RabiProfile(LinearCrossing{j.at("k_star").get<double>(), j.at("h_star").get<double>(),
                                      j.at("slope").get<double>(), j.at("rising").get<bool>()});
  if (v == "ion_laguerre")
    return RabiProfile(IonLaguerre{j.at("order").get<int>(), j.at("eta").get<double>(),
                                   j.value("strength", 1.0)});
  if (v == "ion_bessel")
    return RabiProfile(IonBessel{j.at("order").get<int>(), j.at("eta").get<double>(),
                                 j.value("strength", 1.0)});
  if (v == "ats")
    return RabiProfile(Ats{j.at("order").get<int>(), j.at("phi_a").get<double>(),
                           j.at("e_j").get<double>(), j.at("phi_c").get<double>(),
                           j.at("epsilon").get<double>()});
  if (v == "tabulated") return RabiProfile(Tabulated{j.at("values").get<std::vector<double>>()});
  throw std::invalid_argument("unknown profile variant: " + v);
}

nlohmann::json scheme_to_json(const NLREScheme& s) {
  return {{"r", s.raise_order},          {"l", s.lower_order},
          {"f", profile_to_json(s.f_profile)}, {"g", profile_to_json(s.g_profile)},
          {"kappa_eff", s.kappa_eff},    {"phase_f", s.phase_f},
          {"phase_g", s.phase_g}};
}

NLREScheme scheme_from_json(const nlohmann::json& j) {
  NLREScheme s;
  s.raise_order = j.at("r").get<int>();
  s.lower_order = j.at("l").get<int>();
  if (s.raise_order < 0 || s.lower_order < 0 || s.d() < 1)
    throw std::invalid_argument("scheme: need r,l >= 0 and r+l >= 1");
  s.f_profile = profile_from_json(j.at("f"));
  s.g_profile = profile_from_json(j.at("g"));
  s.kappa_eff = j.value("kappa_eff", 1.0);
  if (!(s.kappa_eff > 0)) throw std::invalid_argument("scheme: kappa_eff must be > 0");
  s.phase_f = j.value("phase_f", 0.0);
  s.phase_g = j.value("phase_g", 0.0);
  return s;
}

}  // namespace profiles
}  // namespace nlre
