#ifndef DROPLET_BURGERS_HPP_
#define DROPLET_BURGERS_HPP_

// Riemann problem for the inviscid Burgers equation with the drag source,
//
//   d_t u + d_x(u^2 / 2) = mu (u_a - u),
//
// and the blowup predictor for smooth initial data.

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "droplet/model.hpp"

namespace droplet {

enum class WaveKind { Shock, Rarefaction, Constant };

inline const char* to_string(WaveKind k) {
  switch (k) {
    case WaveKind::Shock: return "shock";
    case WaveKind::Rarefaction: return "rarefaction";
    case WaveKind::Constant: return "constant";
  }
  return "?";
}

class BurgersWave {
 public:
  BurgersWave(double u_left, double u_right, ModelParams p, double origin = 0.0)
      : u_left_(u_left), u_right_(u_right), p_(p), origin_(origin) {
    p_.validate();
    if (u_left_ > u_right_) {
      kind_ = WaveKind::Shock;
    } else if (u_left_ < u_right_) {
      kind_ = WaveKind::Rarefaction;
    } else {
      kind_ = WaveKind::Constant;
    }
  }

  BurgersWave(const RiemannData& d, ModelParams p, double origin = 0.0)
      : BurgersWave(d.u_l0, d.u_r0, p, origin) {}

  [[nodiscard]] WaveKind kind() const { return kind_; }
  [[nodiscard]] const ModelParams& params() const { return p_; }
  [[nodiscard]] double initial_left() const { return u_left_; }
  [[nodiscard]] double initial_right() const { return u_right_; }
  [[nodiscard]] double origin() const { return origin_; }

  [[nodiscard]] double left_state(double t) const { return relax_velocity(u_left_, p_, t); }
  [[nodiscard]] double right_state(double t) const { return relax_velocity(u_right_, p_, t); }

  /// Rankine-Hugoniot speed, the mean of the two limit states.
  [[nodiscard]] double shock_speed(double t) const {
    require(WaveKind::Shock, "shock_speed");
    return relax_velocity(0.5 * (u_left_ + u_right_), p_, t);
  }

  [[nodiscard]] double shock_position(double t) const {
    require(WaveKind::Shock, "shock_position");
    return characteristic_position(origin_, 0.5 * (u_left_ + u_right_), p_, t);
  }

  struct FanEdges {
    double x1;
    double x2;
  };

  /// Edges of the region not reached by characteristics from x != 0; both are
  /// the integrals of the limit states, X_k(t) = int_0^t u_{l,r}(s) ds.
  [[nodiscard]] FanEdges rarefaction_bounds(double t) const {
    require(WaveKind::Rarefaction, "rarefaction_bounds");
    return {characteristic_position(origin_, u_left_, p_, t),
            characteristic_position(origin_, u_right_, p_, t)};
  }

  /// Velocity inside the fan: characteristics issued from the jump point.
  [[nodiscard]] double fan_velocity(double x, double t) const {
    require(WaveKind::Rarefaction, "fan_velocity");
    if (!(t > 0.0)) throw DomainError("fan_velocity is undefined at t = 0");
    const auto [x1, x2] = rarefaction_bounds(t);
    const double slack = 1e-12 * (1.0 + std::abs(x1) + std::abs(x2));
    if (x < x1 - slack || x > x2 + slack) {
      throw DomainError("fan_velocity queried outside the fan");
    }
    return p_.ua + (x - origin_ - p_.ua * t) / phi_growth(p_.mu, t);
  }

  /// Pointwise solution.  On a shock curve the value is the shock speed.
  [[nodiscard]] double evaluate(double x, double t) const {
    if (!(t >= 0.0)) throw DomainError("evaluate requires t >= 0");
    switch (kind_) {
      case WaveKind::Constant:
        return left_state(t);
      case WaveKind::Shock: {
        if (t == 0.0) return x <= origin_ ? u_left_ : u_right_;
        const double xi = shock_position(t);
        if (x < xi) return left_state(t);
        if (x > xi) return right_state(t);
        return shock_speed(t);
      }
      case WaveKind::Rarefaction: {
        if (t == 0.0) return x <= origin_ ? u_left_ : u_right_;
        const auto [x1, x2] = rarefaction_bounds(t);
        if (x < x1) return left_state(t);
        if (x > x2) return right_state(t);
        return p_.ua + (x - origin_ - p_.ua * t) / phi_growth(p_.mu, t);
      }
    }
    return 0.0;
  }

 private:
  void require(WaveKind k, const char* what) const {
    if (kind_ != k) {
      throw UsageError(std::string(what) + " queried on a " + to_string(kind_) + " wave");
    }
  }

  double u_left_;
  double u_right_;
  ModelParams p_;
  double origin_;
  WaveKind kind_;
};

// ---------------------------------------------------------------------------
// Smooth data: gradient catastrophe.

/// Time at which the characteristic with initial slope `slope` focuses, or +inf
/// when slope >= -mu.  Limit -1/slope at mu = 0.
inline double focusing_time(double slope, double mu) {
  if (!(slope < -mu)) return std::numeric_limits<double>::infinity();
  if (mu == 0.0) return -1.0 / slope;
  return -std::log1p(mu / slope) / mu;
}

struct BlowupReport {
  bool blows_up = false;
  std::optional<double> t_star;
  std::optional<double> x0_star;
};

/// Scans u0' on the profile samples, then refines the minimizing foot point by
/// golden-section search on the bracketing pair of sample intervals.
inline BlowupReport blowup(const SmoothProfile& profile, const ModelParams& p) {
  p.validate();
  if (profile.sample_count < 2) throw DomainError("blowup needs >= 2 samples");
  int best = -1;
  double best_slope = std::numeric_limits<double>::infinity();
  for (int k = 0; k < profile.sample_count; ++k) {
    const double s = profile.u0_prime(profile.sample(k));
    if (s < best_slope) {
      best_slope = s;
      best = k;
    }
  }
  BlowupReport report;
  if (!(best_slope < -p.mu)) return report;

  double a = profile.sample(std::max(best - 1, 0));
  double b = profile.sample(std::min(best + 1, profile.sample_count - 1));
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = profile.u0_prime(c);
  double fd = profile.u0_prime(d);
  for (int it = 0; it < 200 && (b - a) > 1e-13 * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = profile.u0_prime(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = profile.u0_prime(d);
    }
  }
  double x_star = 0.5 * (a + b);
  double slope = profile.u0_prime(x_star);
  // golden section can only help; keep the sample if the bracket was not unimodal
  if (!(slope <= best_slope)) {
    x_star = profile.sample(best);
    slope = best_slope;
  }
  report.blows_up = true;
  report.t_star = focusing_time(slope, p.mu);
  report.x0_star = x_star;
  return report;
}

struct SmoothFields {
  double u_x;
  double alpha;
};

/// Velocity gradient and volume fraction at time t on the characteristic
/// leaving x0, valid while 1 + phi(mu, t) u0'(x0) > 0.
inline SmoothFields smooth_fields(double x0, double t, const SmoothProfile& profile,
                                  const ModelParams& p) {
  if (!(t >= 0.0)) throw DomainError("smooth_fields requires t >= 0");
  const double slope = profile.u0_prime(x0);
  const double denom = 1.0 + phi(p.mu, t) * slope;
  if (denom <= 1e-14) {
    throw NumericalAbort("smooth solution has blown up: characteristic from x0 = " +
                         std::to_string(x0) + " focuses before t = " + std::to_string(t));
  }
  const double decay = p.mu == 0.0 ? 1.0 : std::exp(-p.mu * t);
  return {decay * slope / denom, profile.alpha0(x0) / denom};
}

}  // namespace droplet

#endif  // DROPLET_BURGERS_HPP_
