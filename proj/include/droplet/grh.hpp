#ifndef DROPLET_GRH_HPP_
#define DROPLET_GRH_HPP_

// Generalized Rankine-Hugoniot conditions of a delta shock, written for the
// point mass omega and its momentum theta = omega sigma:
//
//   omega' = a theta/omega - b
//   theta' = b theta/omega + mu (u_a omega - theta) - c
//
// with a = alpha_r - alpha_l, b = alpha_r u_r - alpha_l u_l,
// c = alpha_r u_r^2 - alpha_l u_l^2 evaluated on the one-sided limit states.

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "droplet/model.hpp"
#include "droplet/riemann.hpp"

namespace droplet::grh {

class SingularStateError : public NumericalAbort {
 public:
  using NumericalAbort::NumericalAbort;
};

struct LimitStates {
  std::function<double(double)> alpha_l;
  std::function<double(double)> u_l;
  std::function<double(double)> alpha_r;
  std::function<double(double)> u_r;
};

/// Limit states of the Riemann problem: constant alphas, relaxing velocities.
inline LimitStates riemann_limit_states(const RiemannData& d, const ModelParams& p) {
  return {[a = d.alpha_l](double) { return a; },
          [u = d.u_l0, p](double t) { return relax_velocity(u, p, t); },
          [a = d.alpha_r](double) { return a; },
          [u = d.u_r0, p](double t) { return relax_velocity(u, p, t); }};
}

struct GrhState {
  double omega = 0.0;
  double theta = 0.0;
};

struct GrhDerivative {
  double d_omega = 0.0;
  double d_theta = 0.0;
};

struct Coefficients {
  double a;
  double b;
  double c;
};

inline Coefficients coefficients(double t, const LimitStates& s) {
  const double al = s.alpha_l(t), ar = s.alpha_r(t);
  const double ul = s.u_l(t), ur = s.u_r(t);
  return {ar - al, ar * ur - al * ul, ar * ur * ur - al * ul * ul};
}

inline GrhDerivative rhs(const GrhState& z, double t, const LimitStates& s,
                         const ModelParams& p) {
  if (!(z.omega > 0.0)) {
    std::ostringstream msg;
    msg << "GRH right-hand side is singular at omega = " << z.omega << " (t = " << t << ")";
    throw SingularStateError(msg.str());
  }
  const auto [a, b, c] = coefficients(t, s);
  const double sigma = z.theta / z.omega;
  return {a * sigma - b, b * sigma + p.mu * (p.ua * z.omega - z.theta) - c};
}

/// Residuals of the two GRH equations for a given (omega, sigma) path, with
/// the time derivatives supplied by the caller.
struct GrhResidual {
  double mass;
  double momentum;
};

inline GrhResidual residual(double t, double omega, double sigma, double d_omega,
                            double d_theta, const LimitStates& s, const ModelParams& p) {
  const auto [a, b, c] = coefficients(t, s);
  return {d_omega - (a * sigma - b),
          d_theta - (b * sigma - c + p.mu * (p.ua - sigma) * omega)};
}

struct Sample {
  double t = 0.0;
  double omega = 0.0;
  double sigma = 0.0;
  double u_l = 0.0;
  double u_r = 0.0;
  bool entropy_ok = true;
};

struct Trajectory {
  std::vector<Sample> samples;
  double eps_seed = 0.0;  // zero for a regular (omega0 > 0) start
  double t_seed = 0.0;

  [[nodiscard]] const Sample& back() const { return samples.back(); }
};

struct IntegrateOptions {
  std::optional<double> eps_seed;
};

/// Default seed mass for a zero-mass start.
inline double default_eps_seed(const LimitStates& s) {
  const double gap = std::abs(s.u_l(0.0) - s.u_r(0.0));
  const double amax = std::max(s.alpha_l(0.0), s.alpha_r(0.0));
  return 1e-8 * std::max(1.0, gap * amax);
}

namespace detail {

inline GrhState rk4_step(const GrhState& z, double t, double h, const LimitStates& s,
                         const ModelParams& p) {
  const GrhDerivative k1 = rhs(z, t, s, p);
  const GrhDerivative k2 =
      rhs({z.omega + 0.5 * h * k1.d_omega, z.theta + 0.5 * h * k1.d_theta}, t + 0.5 * h, s, p);
  const GrhDerivative k3 =
      rhs({z.omega + 0.5 * h * k2.d_omega, z.theta + 0.5 * h * k2.d_theta}, t + 0.5 * h, s, p);
  const GrhDerivative k4 = rhs({z.omega + h * k3.d_omega, z.theta + h * k3.d_theta}, t + h, s, p);
  return {z.omega + h / 6.0 * (k1.d_omega + 2.0 * k2.d_omega + 2.0 * k3.d_omega + k4.d_omega),
          z.theta + h / 6.0 * (k1.d_theta + 2.0 * k2.d_theta + 2.0 * k3.d_theta + k4.d_theta)};
}

}  // namespace detail

/// Fixed-step RK4 integration of the GRH system on [0, t_end].
///
/// With z0.omega > 0 the start is regular; sigma0, when given, resets
/// theta = omega0 sigma0.  With z0.omega == 0 the solution is started from the
/// regularized family omega(0) = eps: the seed mass eps is placed at
/// t_seed = eps / omega'(0), where omega'(0) = a(0) sigma0 - b(0) is the growth
/// rate of the zero-mass solution, and sigma0 defaults to the sqrt-weighted
/// initial speed.  While t < dt the step is limited to the current time, since
/// the relaxation of sigma toward the entropic branch is O(1/t) stiff.
///
/// Every accepted step is checked for mass growth and the Lax condition
/// u_r < sigma < u_l; a violation throws NumericalAbort.
inline Trajectory integrate(GrhState z0, std::optional<double> sigma0, double t_end, double dt,
                            const LimitStates& s, const ModelParams& p,
                            const IntegrateOptions& opt = {}) {
  p.validate();
  if (!(t_end > 0.0)) throw DomainError("integrate needs t_end > 0");
  if (!(dt > 0.0)) throw DomainError("integrate needs dt > 0");
  if (p.mu > 0.0 && dt > 0.1 / p.mu) {
    throw DomainError("dt must not exceed 0.1/mu to resolve the relaxation scale");
  }
  if (!(z0.omega >= 0.0)) throw DomainError("omega0 must be nonnegative");

  const double ul0 = s.u_l(0.0), ur0 = s.u_r(0.0);
  const bool degenerate0 = ul0 == ur0;
  if (z0.omega == 0.0 && !sigma0) {
    sigma0 = initial_shock_speed(s.alpha_l(0.0), ul0, s.alpha_r(0.0), ur0);
  }
  if (sigma0) {
    const bool inside = degenerate0 ? *sigma0 == ul0 : (ur0 < *sigma0 && *sigma0 < ul0);
    if (!inside) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "sigma0 = " << *sigma0 << " is not inside (u_r(0), u_l(0)) = (" << ur0 << ", "
          << ul0 << ")";
      throw DomainError(msg.str());
    }
    if (z0.omega > 0.0) z0.theta = z0.omega * *sigma0;
  }

  Trajectory traj;
  auto monitor = [&](double t, const GrhState& z, const GrhState* prev) {
    Sample smp;
    smp.t = t;
    smp.omega = z.omega;
    smp.sigma = z.omega > 0.0 ? z.theta / z.omega : *sigma0;
    smp.u_l = s.u_l(t);
    smp.u_r = s.u_r(t);
    const double gap = smp.u_l - smp.u_r;
    if (gap > 0.0) {
      smp.entropy_ok = smp.u_r < smp.sigma && smp.sigma < smp.u_l;
    } else {
      const double tol = 1e-12 * (1.0 + std::abs(smp.u_l));
      smp.entropy_ok = std::abs(smp.sigma - smp.u_l) <= tol && gap >= -tol;
    }
    bool mass_ok = true;
    if (prev != nullptr) {
      mass_ok = gap > 0.0 ? z.omega > prev->omega : z.omega >= prev->omega * (1.0 - 1e-14);
    }
    if (!smp.entropy_ok || !mass_ok || !std::isfinite(z.omega) || !std::isfinite(z.theta)) {
      std::ostringstream msg;
      msg.precision(17);
      msg << (smp.entropy_ok ? "point mass decreased" : "Lax entropy condition violated")
          << " at step " << traj.samples.size() << ", t = " << t << ": omega = " << z.omega
          << ", sigma = " << smp.sigma << ", u_l = " << smp.u_l << ", u_r = " << smp.u_r;
      if (prev != nullptr) msg << ", previous omega = " << prev->omega;
      throw NumericalAbort(msg.str());
    }
    traj.samples.push_back(smp);
  };

  double t = 0.0;
  GrhState z = z0;
  if (z0.omega == 0.0) {
    monitor(0.0, z0, nullptr);
    const auto [a, b, c] = coefficients(0.0, s);
    (void)c;
    const double rate = a * *sigma0 - b;
    if (!(rate > 0.0)) {
      throw NumericalAbort("zero-mass start with nonpositive growth rate; no delta shock forms");
    }
    traj.eps_seed = opt.eps_seed.value_or(default_eps_seed(s));
    if (!(traj.eps_seed > 0.0)) throw DomainError("eps_seed must be positive");
    traj.t_seed = traj.eps_seed / rate;
    if (traj.t_seed >= std::min(dt, t_end)) {
      throw DomainError("seed time exceeds the first step; reduce eps_seed");
    }
    t = traj.t_seed;
    z = {traj.eps_seed, traj.eps_seed * *sigma0};
    monitor(t, z, nullptr);
    const double ramp_end = std::min(dt, t_end);
    while (t < ramp_end) {
      const double h = std::min(t, ramp_end - t);
      const GrhState next = detail::rk4_step(z, t, h, s, p);
      t = (ramp_end - t <= t) ? ramp_end : t + h;
      monitor(t, next, &z);
      z = next;
    }
  } else {
    monitor(0.0, z, nullptr);
  }

  // fixed grid t_k = k dt, last step truncated at t_end
  long k = static_cast<long>(std::llround(t / dt));
  while (t < t_end) {
    const double t_next = std::min(static_cast<double>(k + 1) * dt, t_end);
    const GrhState next = detail::rk4_step(z, t, t_next - t, s, p);
    monitor(t_next, next, &z);
    z = next;
    t = t_next;
    ++k;
  }
  return traj;
}

/// Numerical path for configurations the closed form does not cover.  The
/// caller supplies sigma0 since the sqrt-weighted speed needs both alphas > 0.
inline Trajectory integrate_routed(const GrhRouted& r, double sigma0, double t_end, double dt) {
  const LimitStates s = riemann_limit_states(r.data, r.params);
  return integrate({r.data.omega0, r.data.omega0 * sigma0}, sigma0, t_end, dt, s, r.params);
}

}  // namespace droplet::grh

#endif  // DROPLET_GRH_HPP_
