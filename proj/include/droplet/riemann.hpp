#ifndef DROPLET_RIEMANN_HPP_
#define DROPLET_RIEMANN_HPP_

// Exact Riemann solutions of the droplet system:
//   u_- > u_+ : delta shock carrying a point mass omega(t) at xi(t),
//   u_- < u_+ : two contact discontinuities enclosing a vacuum,
//   u_- = u_+ : a single contact moving with the relaxed velocity.
//
// Delta masses are kept symbolic (weight + location).  Pointwise evaluation
// returns the regular part and a separate singular descriptor.

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "droplet/burgers.hpp"
#include "droplet/model.hpp"

namespace droplet {

struct RegularState {
  double alpha = 0.0;
  double u = 0.0;
};

struct SingularPart {
  bool present = false;
  double weight = 0.0;
  double location = 0.0;
};

struct PointValue {
  RegularState regular;
  SingularPart singular;
};

/// Which one-sided limit to take when x sits exactly on a discontinuity.
enum class Side { Left, Center, Right };

/// Entropy-admissible initial speed of a delta shock born from zero mass:
/// the sqrt(alpha)-weighted mean of the two velocities.
inline double initial_shock_speed(double alpha_l, double u_l, double alpha_r, double u_r) {
  if (!(alpha_l > 0.0) || !(alpha_r > 0.0)) {
    throw DomainError("initial_shock_speed needs strictly positive volume fractions");
  }
  if (alpha_l == alpha_r) return 0.5 * (u_l + u_r);
  const double sl = std::sqrt(alpha_l);
  const double sr = std::sqrt(alpha_r);
  return (sl * u_l + sr * u_r) / (sl + sr);
}

/// Closed-form point mass of the full system for Riemann data.
inline double full_system_weight(const RiemannData& d, const ModelParams& p, double t) {
  return d.omega0 + std::sqrt(d.alpha_l * d.alpha_r) * (d.u_l0 - d.u_r0) * phi(p.mu, t);
}

inline double full_system_speed(const RiemannData& d, const ModelParams& p, double t) {
  return relax_velocity(initial_shock_speed(d.alpha_l, d.u_l0, d.alpha_r, d.u_r0), p, t);
}

/// Point mass of the (alpha, Burgers) subsystem, whose shock travels at the
/// Burgers speed.  Not a solution of the full-system GRH conditions unless
/// alpha_l == alpha_r.
inline double subsystem_weight(const RiemannData& d, const ModelParams& p, double t) {
  return d.omega0 + 0.5 * (d.alpha_l + d.alpha_r) * (d.u_l0 - d.u_r0) * phi(p.mu, t);
}

/// omega0 + min(alpha_l, alpha_r) (u_l0 - u_r0) phi(mu, t).  Holds for any
/// entropy solution of the GRH conditions with these limit states.
inline double weight_lower_bound(double t, const RiemannData& d, const ModelParams& p) {
  const double k = std::min(d.alpha_l, d.alpha_r) * (d.u_l0 - d.u_r0);
  return d.omega0 + k * phi(p.mu, t);
}

enum class DeltaVariant { FullSystem, Subsystem };

class DeltaShockSolution {
 public:
  DeltaShockSolution(const RiemannData& d, const ModelParams& p,
                     DeltaVariant variant = DeltaVariant::FullSystem, double origin = 0.0)
      : data_(d), p_(p), variant_(variant), origin_(origin), burgers_(d, p, origin) {
    d.validate();
    if (!(d.u_l0 > d.u_r0)) throw DomainError("delta shock needs u_l0 > u_r0");
    if (!(d.alpha_l > 0.0) || !(d.alpha_r > 0.0)) {
      throw DomainError("closed-form delta shock needs alpha_l, alpha_r > 0");
    }
    sigma0_ = variant_ == DeltaVariant::FullSystem
                  ? initial_shock_speed(d.alpha_l, d.u_l0, d.alpha_r, d.u_r0)
                  : 0.5 * (d.u_l0 + d.u_r0);
  }

  [[nodiscard]] DeltaVariant variant() const { return variant_; }
  [[nodiscard]] const RiemannData& data() const { return data_; }
  [[nodiscard]] const ModelParams& params() const { return p_; }
  [[nodiscard]] double origin() const { return origin_; }
  [[nodiscard]] double initial_speed() const { return sigma0_; }

  [[nodiscard]] double weight(double t) const {
    return variant_ == DeltaVariant::FullSystem ? full_system_weight(data_, p_, t)
                                                : subsystem_weight(data_, p_, t);
  }
  [[nodiscard]] double speed(double t) const { return relax_velocity(sigma0_, p_, t); }
  [[nodiscard]] double position(double t) const {
    return characteristic_position(origin_, sigma0_, p_, t);
  }

  [[nodiscard]] RegularState left_limit(double t) const {
    return {data_.alpha_l, burgers_.left_state(t)};
  }
  [[nodiscard]] RegularState right_limit(double t) const {
    return {data_.alpha_r, burgers_.right_state(t)};
  }

  [[nodiscard]] RegularState regular(double x, double t, Side side = Side::Center) const {
    const double xi = t == 0.0 ? origin_ : position(t);
    if (x < xi || (x == xi && side == Side::Left)) return left_limit(t);
    if (t == 0.0 && x == xi && side == Side::Center) return left_limit(t);
    if (x > xi || (x == xi && side == Side::Right)) return right_limit(t);
    return {0.0, speed(t)};
  }

  [[nodiscard]] PointValue evaluate(double x, double t) const {
    PointValue v{regular(x, t), {}};
    const double xi = position(t);
    if (x == xi) v.singular = {true, weight(t), xi};
    return v;
  }

  [[nodiscard]] SingularPart singular(double t) const { return {true, weight(t), position(t)}; }
  [[nodiscard]] std::vector<double> discontinuities(double t) const { return {position(t)}; }

 private:
  RiemannData data_;
  ModelParams p_;
  DeltaVariant variant_;
  double origin_;
  BurgersWave burgers_;
  double sigma0_ = 0.0;
};

class VacuumSolution {
 public:
  VacuumSolution(const RiemannData& d, const ModelParams& p, double origin = 0.0)
      : data_(d), p_(p), burgers_(d, p, origin) {
    d.validate();
    if (!(d.u_l0 < d.u_r0)) throw DomainError("vacuum solution needs u_l0 < u_r0");
  }

  [[nodiscard]] const RiemannData& data() const { return data_; }
  [[nodiscard]] const ModelParams& params() const { return p_; }
  [[nodiscard]] double origin() const { return burgers_.origin(); }
  [[nodiscard]] const BurgersWave& velocity() const { return burgers_; }
  [[nodiscard]] double alpha_left() const { return data_.alpha_l; }
  [[nodiscard]] double alpha_right() const { return data_.alpha_r; }

  [[nodiscard]] double x1(double t) const { return burgers_.rarefaction_bounds(t).x1; }
  [[nodiscard]] double x2(double t) const { return burgers_.rarefaction_bounds(t).x2; }
  [[nodiscard]] double fan_velocity(double x, double t) const {
    return burgers_.fan_velocity(x, t);
  }

  /// The closed fan [X1, X2] is vacuum; Side picks the outer state on an edge.
  [[nodiscard]] RegularState regular(double x, double t, Side side = Side::Center) const {
    if (t == 0.0) {
      const double o = burgers_.origin();
      return x < o || (x == o && side != Side::Right) ? RegularState{data_.alpha_l, data_.u_l0}
                                                      : RegularState{data_.alpha_r, data_.u_r0};
    }
    const double a = x1(t);
    const double b = x2(t);
    if (x < a || (x == a && side == Side::Left)) return {data_.alpha_l, burgers_.left_state(t)};
    if (x > b || (x == b && side == Side::Right)) return {data_.alpha_r, burgers_.right_state(t)};
    return {0.0, burgers_.fan_velocity(x, t)};
  }

  [[nodiscard]] PointValue evaluate(double x, double t) const { return {regular(x, t), {}}; }
  [[nodiscard]] SingularPart singular(double) const { return {}; }
  [[nodiscard]] std::vector<double> discontinuities(double t) const { return {x1(t), x2(t)}; }

 private:
  RiemannData data_;
  ModelParams p_;
  BurgersWave burgers_;
};

/// u_l0 == u_r0: the volume-fraction jump (and any initial point mass) is
/// carried with the common relaxed velocity.
class ContactSolution {
 public:
  ContactSolution(const RiemannData& d, const ModelParams& p, double origin = 0.0)
      : data_(d), p_(p), origin_(origin) {
    d.validate();
    if (d.u_l0 != d.u_r0) throw DomainError("contact needs u_l0 == u_r0");
  }

  [[nodiscard]] const RiemannData& data() const { return data_; }
  [[nodiscard]] const ModelParams& params() const { return p_; }
  [[nodiscard]] double origin() const { return origin_; }
  [[nodiscard]] double initial_speed() const { return data_.u_l0; }
  [[nodiscard]] double speed(double t) const { return relax_velocity(data_.u_l0, p_, t); }
  [[nodiscard]] double position(double t) const {
    return characteristic_position(origin_, data_.u_l0, p_, t);
  }
  [[nodiscard]] double weight(double) const { return data_.omega0; }

  [[nodiscard]] RegularState regular(double x, double t, Side side = Side::Center) const {
    const double xc = position(t);
    const double u = speed(t);
    if (x < xc || (x == xc && side != Side::Right)) return {data_.alpha_l, u};
    return {data_.alpha_r, u};
  }

  [[nodiscard]] PointValue evaluate(double x, double t) const {
    PointValue v{regular(x, t), {}};
    if (data_.omega0 > 0.0 && x == position(t)) v.singular = singular(t);
    return v;
  }
  [[nodiscard]] SingularPart singular(double t) const {
    return {data_.omega0 > 0.0, data_.omega0, position(t)};
  }
  [[nodiscard]] std::vector<double> discontinuities(double t) const { return {position(t)}; }

 private:
  RiemannData data_;
  ModelParams p_;
  double origin_;
};

/// A compressive configuration outside the closed-form hypotheses (a zero
/// volume fraction).  Carries the data for a numerical GRH integration, see
/// grh::integrate_routed.
struct GrhRouted {
  RiemannData data;
  ModelParams params;
  double origin = 0.0;
  std::string warning;
};

using RiemannSolution =
    std::variant<DeltaShockSolution, VacuumSolution, ContactSolution, GrhRouted>;

/// Classifies the data and builds the exact solution.  `variant` selects the
/// full droplet system or the (alpha, Burgers) subsystem for delta shocks.
inline RiemannSolution solve(const RiemannData& d, const ModelParams& p, double origin = 0.0,
                             DeltaVariant variant = DeltaVariant::FullSystem) {
  d.validate();
  p.validate();
  if (d.u_l0 > d.u_r0) {
    if (d.alpha_l > 0.0 && d.alpha_r > 0.0) return DeltaShockSolution(d, p, variant, origin);
    return GrhRouted{d, p, origin,
                     "closed-form delta shock requires alpha_l, alpha_r > 0; "
                     "integrate the GRH system numerically"};
  }
  if (d.u_l0 < d.u_r0) return VacuumSolution(d, p, origin);
  return ContactSolution(d, p, origin);
}

inline const char* solution_kind(const RiemannSolution& s) {
  switch (s.index()) {
    case 0: return "delta_shock";
    case 1: return "vacuum";
    case 2: return "contact";
    default: return "grh_routed";
  }
}

inline PointValue evaluate(const RiemannSolution& s, double x, double t) {
  return std::visit(
      [&](const auto& sol) -> PointValue {
        using T = std::decay_t<decltype(sol)>;
        if constexpr (std::is_same_v<T, GrhRouted>) {
          throw UsageError("no closed-form evaluation: " + sol.warning);
        } else {
          return sol.evaluate(x, t);
        }
      },
      s);
}

}  // namespace droplet

#endif  // DROPLET_RIEMANN_HPP_
