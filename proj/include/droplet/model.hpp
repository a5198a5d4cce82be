#ifndef DROPLET_MODEL_HPP_
#define DROPLET_MODEL_HPP_

// Parameter/state types and the exponential-relaxation kernels shared by the
// exact solvers, the GRH integrator and the finite-volume scheme.
//
// The model is pressureless gas dynamics for the pair (alpha, alpha u) with a
// linear drag toward the carrier velocity:
//
//   d_t alpha        + d_x(alpha u)   = 0
//   d_t(alpha u)     + d_x(alpha u^2) = mu alpha (u_a - u)

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>

namespace droplet {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operation queried on an object that does not support it, e.g. the shock
/// speed of a rarefaction.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A time integration or solver loop that had to stop.  The message carries
/// the step diagnostics.
class NumericalAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ModelParams {
  double mu = 0.0;  // drag coefficient, 1/time
  double ua = 0.0;  // carrier velocity

  void validate() const {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
      throw DomainError("drag coefficient mu must be finite and >= 0");
    }
    if (!std::isfinite(ua)) throw DomainError("carrier velocity must be finite");
  }
};

/// Single-jump initial data: (alpha_l, u_l0) for x < 0, (alpha_r, u_r0) for
/// x > 0, plus an optional point mass omega0 sitting at the jump.
struct RiemannData {
  double alpha_l = 0.0;
  double u_l0 = 0.0;
  double alpha_r = 0.0;
  double u_r0 = 0.0;
  double omega0 = 0.0;

  void validate() const {
    if (!(alpha_l >= 0.0) || !(alpha_r >= 0.0) || !(omega0 >= 0.0)) {
      throw DomainError("volume fractions and omega0 must be nonnegative");
    }
    if (!std::isfinite(u_l0) || !std::isfinite(u_r0) ||
        !std::isfinite(alpha_l) || !std::isfinite(alpha_r) ||
        !std::isfinite(omega0)) {
      throw DomainError("Riemann data must be finite");
    }
  }
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  [[nodiscard]] double length() const { return hi - lo; }
  [[nodiscard]] bool contains(double x) const { return lo <= x && x <= hi; }
};

/// C^1 initial data for the smooth (pre-blowup) problem.
struct SmoothProfile {
  std::function<double(double)> u0;
  std::function<double(double)> u0_prime;
  std::function<double(double)> alpha0;
  Interval sample_domain;
  int sample_count = 2;

  [[nodiscard]] double sample(int k) const {
    if (sample_count == 1) return sample_domain.lo;
    return sample_domain.lo +
           sample_domain.length() * static_cast<double>(k) /
               static_cast<double>(sample_count - 1);
  }

  /// Checks u0_prime against central differences of u0 at every sample.
  void validate(double rel_tol = 1e-6) const {
    if (!u0 || !u0_prime || !alpha0) {
      throw DomainError("smooth profile needs u0, u0_prime and alpha0");
    }
    if (sample_count < 2 || !(sample_domain.hi > sample_domain.lo)) {
      throw DomainError("smooth profile needs >= 2 samples on a proper interval");
    }
    for (int k = 0; k < sample_count; ++k) {
      const double x = sample(k);
      const double h = 1e-5 * std::max(1.0, std::abs(x));
      const double fd = (u0(x + h) - u0(x - h)) / (2.0 * h);
      const double d = u0_prime(x);
      if (std::abs(fd - d) > rel_tol * std::max(1.0, std::abs(d))) {
        throw DomainError("u0_prime disagrees with central differences of u0 at x = " +
                          std::to_string(x));
      }
    }
  }
};

/// (1 - exp(-mu t)) / mu, with the limit t at mu = 0.
///
/// Evaluated through expm1 so that small mu t keeps full relative accuracy.
inline double phi(double mu, double t) {
  if (!(t >= 0.0) || !(mu >= 0.0)) {
    throw DomainError("phi requires mu >= 0 and t >= 0");
  }
  if (mu == 0.0) return t;
  return -std::expm1(-mu * t) / mu;
}

/// (exp(mu t) - 1) / mu, with the limit t at mu = 0.  Equals phi * exp(mu t).
inline double phi_growth(double mu, double t) {
  if (!(t >= 0.0) || !(mu >= 0.0)) {
    throw DomainError("phi_growth requires mu >= 0 and t >= 0");
  }
  if (mu == 0.0) return t;
  return std::expm1(mu * t) / mu;
}

/// Velocity carried along a characteristic: u_a + (u0 - u_a) exp(-mu t).
inline double relax_velocity(double u0, const ModelParams& p, double t) {
  if (!(t >= 0.0)) throw DomainError("relax_velocity requires t >= 0");
  if (p.mu == 0.0) return u0;
  return p.ua + (u0 - p.ua) * std::exp(-p.mu * t);
}

/// Position at time t of the characteristic leaving x0 with velocity u0.
inline double characteristic_position(double x0, double u0_at_x0,
                                      const ModelParams& p, double t) {
  return x0 + p.ua * t + (u0_at_x0 - p.ua) * phi(p.mu, t);
}

}  // namespace droplet

#endif  // DROPLET_MODEL_HPP_
