#ifndef DROPLET_FV_HPP_
#define DROPLET_FV_HPP_

// First-order finite-volume scheme for the droplet system on a uniform 1-D
// grid: monokinetic upwind flux for transport, exact exponential relaxation of
// the momentum for the drag, Godunov (transport-then-source) splitting.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <vector>

#include "droplet/model.hpp"

namespace droplet::fv {

struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int n_cells = 1;

  Grid1D() = default;
  Grid1D(double lo, double hi, int n) : x_min(lo), x_max(hi), n_cells(n) {
    if (!(hi > lo) || n <= 0) throw DomainError("grid needs x_max > x_min and n_cells > 0");
  }

  [[nodiscard]] double dx() const { return (x_max - x_min) / n_cells; }
  [[nodiscard]] double center(int j) const { return x_min + (j + 0.5) * dx(); }
  /// Index of the cell containing x, clamped to the grid.
  [[nodiscard]] int cell_of(double x) const {
    const int j = static_cast<int>(std::floor((x - x_min) / dx()));
    return std::clamp(j, 0, n_cells - 1);
  }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;
};

/// Cell averages of alpha and q = alpha u.
struct FieldState {
  Grid1D grid;
  std::vector<double> alpha;
  std::vector<double> q;
  double time = 0.0;

  FieldState() = default;
  explicit FieldState(const Grid1D& g)
      : grid(g), alpha(static_cast<size_t>(g.n_cells), 0.0), q(static_cast<size_t>(g.n_cells), 0.0) {}

  [[nodiscard]] double total_mass() const {
    double m = 0.0;
    for (double a : alpha) m += a;
    return m * grid.dx();
  }
};

/// Cells at or below this volume fraction are treated as vacuum.
inline constexpr double kVacuumAlpha = 1e-12;

/// Reconstructed velocity; vacuum cells carry the carrier velocity.
inline double cell_velocity(const FieldState& s, int j, const ModelParams& p) {
  const double a = s.alpha[static_cast<size_t>(j)];
  if (a <= kVacuumAlpha) return p.ua;
  return s.q[static_cast<size_t>(j)] / a;
}

/// Piecewise-constant Riemann data, left state for cell centers x <= origin.
inline FieldState riemann_initial_state(const Grid1D& g, const RiemannData& d,
                                        double origin = 0.0) {
  FieldState s(g);
  for (int j = 0; j < g.n_cells; ++j) {
    const bool left = g.center(j) <= origin;
    const double a = left ? d.alpha_l : d.alpha_r;
    const double u = left ? d.u_l0 : d.u_r0;
    s.alpha[static_cast<size_t>(j)] = a;
    s.q[static_cast<size_t>(j)] = a * u;
  }
  if (d.omega0 > 0.0) {
    const auto j = static_cast<size_t>(g.cell_of(origin));
    const double sigma = 0.5 * (d.u_l0 + d.u_r0);
    s.alpha[j] += d.omega0 / g.dx();
    s.q[j] += d.omega0 / g.dx() * sigma;
  }
  return s;
}

struct Flux {
  double mass = 0.0;
  double momentum = 0.0;
};

/// Monokinetic (free transport + collapse) upwind flux between two states.
inline Flux kinetic_flux(double alpha_l, double u_l, double alpha_r, double u_r) {
  const double fl = alpha_l * std::max(u_l, 0.0);
  const double fr = alpha_r * std::min(u_r, 0.0);
  return {fl + fr, fl * u_l + fr * u_r};
}

/// Exact update of the drag over dt: q relaxes to alpha u_a, alpha unchanged.
inline void source_step(FieldState& s, const ModelParams& p, double dt) {
  if (!(dt > 0.0)) throw DomainError("source_step needs dt > 0");
  if (p.mu == 0.0) return;
  const double decay = std::exp(-p.mu * dt);
  for (size_t j = 0; j < s.q.size(); ++j) {
    const double eq = s.alpha[j] * p.ua;
    s.q[j] = eq + (s.q[j] - eq) * decay;
  }
}

struct VelocityBounds {
  double lo;
  double hi;
};

/// Convex hull of {u_l0, u_r0, u_a} widened by 1e-9: the range the velocity of
/// a Riemann solution stays in.
inline VelocityBounds riemann_velocity_bounds(const RiemannData& d, const ModelParams& p) {
  return {std::min({d.u_l0, d.u_r0, p.ua}) - 1e-9, std::max({d.u_l0, d.u_r0, p.ua}) + 1e-9};
}

struct StepReport {
  long step = 0;
  double time = 0.0;  // after the step
  double dt = 0.0;
  double mass_before = 0.0;
  double mass_after = 0.0;
  double boundary_mass_flux = 0.0;  // inflow minus outflow rate through x_min, x_max
};

struct AdvanceOptions {
  double cfl = 0.15;
  std::optional<double> fixed_dt;
  double dt_cap = std::numeric_limits<double>::infinity();
  std::optional<VelocityBounds> velocity_bounds;
  std::function<void(const StepReport&)> on_step;
};

/// Marches `state` to t_end.  Outflow boundaries: ghost cells copy the
/// adjacent interior cell.
inline FieldState advance(FieldState state, const ModelParams& p, double t_end,
                          const AdvanceOptions& opt = {}) {
  p.validate();
  if (!(t_end > state.time)) throw DomainError("advance needs t_end > state.time");
  if (!(opt.cfl > 0.0 && opt.cfl <= 1.0)) throw DomainError("cfl must lie in (0, 1]");
  if (opt.fixed_dt && !(*opt.fixed_dt > 0.0)) throw DomainError("fixed_dt must be positive");

  const int n = state.grid.n_cells;
  const double dx = state.grid.dx();
  std::vector<double> u(static_cast<size_t>(n) + 2);
  std::vector<Flux> flux(static_cast<size_t>(n) + 1);
  long step = 0;

  auto abort = [&](const std::string& what, int j) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " at step " << step << ", t = " << state.time;
    if (j >= 0) {
      msg << ", cell " << j << " (x = " << state.grid.center(j)
          << "): alpha = " << state.alpha[static_cast<size_t>(j)]
          << ", q = " << state.q[static_cast<size_t>(j)];
    }
    throw NumericalAbort(msg.str());
  };

  while (state.time < t_end) {
    double umax = 0.0;
    for (int j = 0; j < n; ++j) {
      const auto jj = static_cast<size_t>(j);
      if (state.alpha[jj] <= kVacuumAlpha) {
        state.q[jj] = 0.0;
        u[jj + 1] = p.ua;
      } else {
        double v = state.q[jj] / state.alpha[jj];
        if (opt.velocity_bounds) v = std::clamp(v, opt.velocity_bounds->lo, opt.velocity_bounds->hi);
        u[jj + 1] = v;
      }
      umax = std::max(umax, std::abs(u[jj + 1]));
    }
    u[0] = u[1];
    u[static_cast<size_t>(n) + 1] = u[static_cast<size_t>(n)];

    const double remaining = t_end - state.time;
    double dt;
    if (opt.fixed_dt) {
      dt = std::min(*opt.fixed_dt, remaining);
      if (*opt.fixed_dt * umax > dx * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "CFL violation in fixed-dt mode: dt * max|u| / dx = " << *opt.fixed_dt * umax / dx;
        abort(msg.str(), -1);
      }
    } else {
      dt = umax > 0.0 ? opt.cfl * dx / umax : std::numeric_limits<double>::infinity();
      dt = std::min({dt, opt.dt_cap, remaining});
      if (!std::isfinite(dt)) dt = remaining;
    }
    // snap to t_end when the leftover would be a rounding-size step
    if (remaining - dt <= 1e-12 * std::max(1.0, t_end)) dt = remaining;

    auto alpha_at = [&](int j) {  // j in [-1, n], ghost cells copy neighbours
      return state.alpha[static_cast<size_t>(std::clamp(j, 0, n - 1))];
    };
    for (int i = 0; i <= n; ++i) {
      flux[static_cast<size_t>(i)] =
          kinetic_flux(alpha_at(i - 1), u[static_cast<size_t>(i)], alpha_at(i),
                       u[static_cast<size_t>(i) + 1]);
    }

    StepReport rep;
    rep.step = step;
    rep.dt = dt;
    if (opt.on_step) rep.mass_before = state.total_mass();
    rep.boundary_mass_flux = flux[0].mass - flux[static_cast<size_t>(n)].mass;

    const double lambda = dt / dx;
    for (int j = 0; j < n; ++j) {
      const auto jj = static_cast<size_t>(j);
      state.alpha[jj] -= lambda * (flux[jj + 1].mass - flux[jj].mass);
      state.q[jj] -= lambda * (flux[jj + 1].momentum - flux[jj].momentum);
    }
    for (int j = 0; j < n; ++j) {
      const double a = state.alpha[static_cast<size_t>(j)];
      if (std::isnan(a) || std::isnan(state.q[static_cast<size_t>(j)])) abort("NaN in state", j);
      if (a < 0.0) abort("negative volume fraction", j);
    }
    source_step(state, p, dt);
    if (opt.velocity_bounds) {
      for (size_t j = 0; j < state.q.size(); ++j) {
        const double a = state.alpha[j];
        if (a > kVacuumAlpha) {
          state.q[j] = a * std::clamp(state.q[j] / a, opt.velocity_bounds->lo,
                                      opt.velocity_bounds->hi);
        }
      }
    }
    state.time = dt == remaining ? t_end : state.time + dt;
    ++step;
    if (opt.on_step) {
      rep.time = state.time;
      rep.mass_after = state.total_mass();
      opt.on_step(rep);
    }
  }
  return state;
}

/// Mass in [center - half_width, center + half_width] in excess of the
/// background (alpha_left left of center, alpha_right right of it).
inline double shock_mass(const FieldState& s, double center, double half_width,
                         double alpha_left, double alpha_right) {
  if (half_width < 0.0) throw DomainError("half_width must be nonnegative");
  if (center - half_width < s.grid.x_min || center + half_width > s.grid.x_max) {
    throw DomainError("shock_mass window leaves the grid");
  }
  if (half_width == 0.0) return 0.0;
  double excess = 0.0;
  for (int j = 0; j < s.grid.n_cells; ++j) {
    const double x = s.grid.center(j);
    if (x < center - half_width || x > center + half_width) continue;
    excess += s.alpha[static_cast<size_t>(j)] - (x < center ? alpha_left : alpha_right);
  }
  return excess * s.grid.dx();
}

}  // namespace droplet::fv

#endif  // DROPLET_FV_HPP_
