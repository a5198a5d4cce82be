#ifndef DROPLET_VALIDATION_HPP_
#define DROPLET_VALIDATION_HPP_

// Oracles and comparison harness: characteristic-crossing blowup oracle,
// weak-formulation residuals by quadrature, error norms of numerical fields
// against exact Riemann solutions.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <future>
#include <optional>
#include <string>
#include <vector>

#include "droplet/fv.hpp"
#include "droplet/model.hpp"
#include "droplet/riemann.hpp"

namespace droplet::validation {

// ---------------------------------------------------------------------------
// Characteristic crossing

namespace detail {

/// Earliest s in (0, t_max] where the characteristics from feet xa < xb meet.
inline std::optional<double> pair_crossing(double xa, double ua, double xb, double ub,
                                           const ModelParams& p, double t_max) {
  const double gap = xb - xa;
  const double du = ub - ua;
  auto sep = [&](double s) { return gap + du * phi(p.mu, s); };
  if (!(du < 0.0) || sep(t_max) > 0.0) return std::nullopt;
  double lo = 0.0, hi = t_max;
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (sep(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

struct Hit {
  double t;
  double xa;
  double xb;
};

inline std::vector<Hit> scan(const std::function<double(double)>& u0, double lo, double hi,
                             int n_feet, const ModelParams& p, double t_max) {
  std::vector<Hit> hits;
  const double h = (hi - lo) / (n_feet - 1);
  double xa = lo, ua = u0(lo);
  for (int k = 1; k < n_feet; ++k) {
    const double xb = k == n_feet - 1 ? hi : lo + k * h;
    const double ub = u0(xb);
    if (auto t = pair_crossing(xa, ua, xb, ub, p, t_max)) hits.push_back({*t, xa, xb});
    xa = xb;
    ua = ub;
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.t < b.t; });
  return hits;
}

}  // namespace detail

/// First time two characteristics of the smooth problem meet, found from the
/// closed-form characteristics alone (no use of u0').  Adjacent foot pairs on
/// the profile's sample domain are tested and the crossing time of each
/// crossing pair is bracketed by bisection.  The few earliest pairs are then
/// re-sampled locally with the same number of feet until the foot spacing is
/// below 1e-5 of the domain length, so the result converges to the infimum
/// over all foot pairs.
inline std::optional<double> crossing_oracle(const SmoothProfile& profile, const ModelParams& p,
                                             double t_max, int n_feet) {
  if (n_feet < 3) throw DomainError("crossing_oracle needs n_feet >= 3");
  if (!profile.u0) throw DomainError("crossing_oracle needs u0");
  const double lo = profile.sample_domain.lo, hi = profile.sample_domain.hi;
  auto hits = detail::scan(profile.u0, lo, hi, n_feet, p, t_max);
  if (hits.empty()) return std::nullopt;
  double best = hits.front().t;
  const double target = 1e-5 * (hi - lo);
  const size_t n_candidates = std::min<size_t>(hits.size(), 4);
  for (size_t c = 0; c < n_candidates; ++c) {
    double a = hits[c].xa, b = hits[c].xb;
    for (int round = 0; round < 12 && (b - a) > target; ++round) {
      const double w = b - a;
      const double ra = std::max(lo, a - w), rb = std::min(hi, b + w);
      const auto local = detail::scan(profile.u0, ra, rb, n_feet, p, t_max);
      if (local.empty()) break;
      best = std::min(best, local.front().t);
      a = local.front().xa;
      b = local.front().xb;
    }
  }
  return best;
}

// ---------------------------------------------------------------------------
// Weak formulation

struct TestFunction {
  std::function<double(double, double)> psi;
  std::function<double(double, double)> psi_t;
  std::function<double(double, double)> psi_x;
  Interval x_support;
  double t_support = 0.0;  // psi vanishes for t >= t_support
};

inline TestFunction zero_test_function() {
  auto z = [](double, double) { return 0.0; };
  return {z, z, z, {0.0, 0.0}, 0.0};
}

/// exp(-1/(1 - s^2)) on (-1, 1), scaled to 1 at s = 0.
struct Bump {
  static double value(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
  }
  static double derivative(double s) {
    if (std::abs(s) >= 1.0) return 0.0;
    const double w = 1.0 - s * s;
    return value(s) * (-2.0 * s / (w * w));
  }
};

/// psi = B((x - xc)/rx) B(t/rt) (c0 + cx (x - xc) + ct t).  Nonzero at t = 0,
/// so the initial-data terms of the weak form are exercised.
inline TestFunction bump_test_function(double xc, double rx, double rt, double c0, double cx,
                                       double ct) {
  TestFunction f;
  f.psi = [=](double x, double t) {
    return Bump::value((x - xc) / rx) * Bump::value(t / rt) * (c0 + cx * (x - xc) + ct * t);
  };
  f.psi_x = [=](double x, double t) {
    const double s = (x - xc) / rx;
    const double bt = Bump::value(t / rt);
    const double poly = c0 + cx * (x - xc) + ct * t;
    return bt * (Bump::derivative(s) / rx * poly + Bump::value(s) * cx);
  };
  f.psi_t = [=](double x, double t) {
    const double bx = Bump::value((x - xc) / rx);
    const double poly = c0 + cx * (x - xc) + ct * t;
    return bx * (Bump::derivative(t / rt) / rt * poly + Bump::value(t / rt) * ct);
  };
  f.x_support = {xc - rx, xc + rx};
  f.t_support = rt;
  return f;
}

struct QuadratureBox {
  Interval x;
  double t_max = 0.0;
};

/// Residuals of the mass and momentum weak identities for one test function.
struct WeakResidual {
  double mass = 0.0;
  double momentum = 0.0;
};

namespace detail {

/// Composite Simpson rule with m (even) intervals; f receives the node index.
template <class F>
double simpson(double a, double b, int m, F&& f) {
  if (m % 2) ++m;
  const double h = (b - a) / m;
  double sum = f(a, 0) + f(b, m);
  for (int k = 1; k < m; ++k) sum += (k % 2 ? 4.0 : 2.0) * f(a + k * h, k);
  return sum * h / 3.0;
}

struct SolutionView {
  std::function<RegularState(double, double, Side)> regular;
  std::function<std::vector<double>(double)> jumps;
  std::function<SingularPart(double)> singular;
  std::function<double(double)> singular_speed;
  RiemannData data;
  ModelParams params;
  double origin = 0.0;
  double sigma0 = 0.0;
};

inline SolutionView view(const RiemannSolution& sol) {
  return std::visit(
      [](const auto& s) -> SolutionView {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, GrhRouted>) {
          throw UsageError("weak residual needs a closed-form solution");
        } else {
          SolutionView v;
          v.regular = [s](double x, double t, Side side) { return s.regular(x, t, side); };
          v.jumps = [s](double t) { return s.discontinuities(t); };
          v.singular = [s](double t) { return s.singular(t); };
          if constexpr (std::is_same_v<T, VacuumSolution>) {
            v.singular_speed = [](double) { return 0.0; };
          } else {
            v.singular_speed = [s](double t) { return s.speed(t); };
            v.sigma0 = s.initial_speed();
          }
          v.data = s.data();
          v.params = s.params();
          v.origin = s.origin();
          return v;
        }
      },
      sol);
}

}  // namespace detail

/// Evaluates, for each test function psi,
///
///   mass:     <alpha, psi_t> + <alpha u, psi_x>
///             + int alpha_0 psi(x, 0) dx + omega0 psi(xi(0), 0)
///   momentum: <alpha u, psi_t> + <alpha u^2, psi_x> + mu <alpha (u_a - u), psi>
///             + int alpha_0 u_0 psi(x, 0) dx + sigma0 omega0 psi(xi(0), 0)
///
/// where the pairings include the point mass as line integrals along xi(t).
/// Both vanish for a weak solution.  The x-integrals are split at every
/// discontinuity of the regular part and each piece gets composite Simpson;
/// the t-integral uses composite Simpson with `resolution` intervals.
inline std::vector<WeakResidual> weak_residual(const RiemannSolution& solution,
                                               const std::vector<TestFunction>& tests,
                                               const QuadratureBox& box, int resolution) {
  if (resolution < 2) throw DomainError("quadrature resolution must be >= 2");
  for (const auto& f : tests) {
    if (f.t_support <= 0.0) continue;  // identically zero
    if (f.x_support.lo < box.x.lo || f.x_support.hi > box.x.hi || f.t_support > box.t_max) {
      throw DomainError("test function support escapes the quadrature box");
    }
  }
  const detail::SolutionView sol = detail::view(solution);
  const ModelParams& p = sol.params;
  const double width = box.x.length();

  auto pieces_at = [&](double t) {
    std::vector<double> cuts{box.x.lo};
    for (double b : sol.jumps(t)) {
      if (b > box.x.lo && b < box.x.hi) cuts.push_back(b);
    }
    cuts.push_back(box.x.hi);
    std::sort(cuts.begin(), cuts.end());
    return cuts;
  };
  auto intervals_for = [&](double a, double b) {
    int m = static_cast<int>(std::ceil(resolution * (b - a) / width));
    m = std::max(m, 2);
    return m + (m % 2);
  };

  std::vector<WeakResidual> out;
  out.reserve(tests.size());
  for (const auto& f : tests) {
    if (f.t_support <= 0.0) {
      out.push_back({});
      continue;
    }
    WeakResidual r;
    // space-time part
    auto slice = [&](double t) {
      const auto cuts = pieces_at(t);
      double mass = 0.0, mom = 0.0;
      for (size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k], b = cuts[k + 1];
        if (!(b > a)) continue;
        const int m = intervals_for(a, b);
        const double h = (b - a) / m;
        double pm = 0.0, pq = 0.0;
        for (int i = 0; i <= m; ++i) {
          const double x = i == m ? b : a + i * h;
          const Side side = i == 0 ? Side::Right : (i == m ? Side::Left : Side::Center);
          const RegularState st = sol.regular(x, t, side);
          const double pt = f.psi_t(x, t), px = f.psi_x(x, t);
          const double flux = st.alpha * st.u;
          const double wi = (i == 0 || i == m) ? 1.0 : (i % 2 ? 4.0 : 2.0);
          pm += wi * (st.alpha * pt + flux * px);
          pq += wi * (flux * pt + flux * st.u * px +
                      p.mu * st.alpha * (p.ua - st.u) * f.psi(x, t));
        }
        mass += pm * h / 3.0;
        mom += pq * h / 3.0;
      }
      const SingularPart sp = sol.singular(t);
      if (sp.present) {
        const double x = sp.location, w = sp.weight, s = sol.singular_speed(t);
        const double pt = f.psi_t(x, t), px = f.psi_x(x, t);
        mass += w * (pt + s * px);
        mom += w * s * (pt + s * px) + p.mu * (p.ua - s) * w * f.psi(x, t);
      }
      return std::pair{mass, mom};
    };
    const int nt = resolution + (resolution % 2);
    const double ht = f.t_support / nt;
    for (int k = 0; k <= nt; ++k) {
      const double wk = (k == 0 || k == nt) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      const auto [m, q] = slice(k * ht);
      r.mass += wk * m;
      r.momentum += wk * q;
    }
    r.mass *= ht / 3.0;
    r.momentum *= ht / 3.0;

    // initial data, split at the jump
    const auto& d = sol.data;
    auto initial = [&](double a, double b, double alpha, double u) {
      if (!(b > a)) return std::pair{0.0, 0.0};
      const int m = intervals_for(a, b);
      const double i0 =
          detail::simpson(a, b, m, [&](double x, int) { return f.psi(x, 0.0); });
      return std::pair{alpha * i0, alpha * u * i0};
    };
    const double x0 = std::clamp(sol.origin, box.x.lo, box.x.hi);
    const auto [ml, ql] = initial(box.x.lo, x0, d.alpha_l, d.u_l0);
    const auto [mr, qr] = initial(x0, box.x.hi, d.alpha_r, d.u_r0);
    r.mass += ml + mr + d.omega0 * f.psi(sol.origin, 0.0);
    r.momentum += ql + qr + sol.sigma0 * d.omega0 * f.psi(sol.origin, 0.0);
    out.push_back(r);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Numerical vs exact

struct ErrorReport {
  double l1_u = 0.0;
  double l1_u_outside_window = 0.0;  // equals l1_u unless a delta window is excluded
  double l1_alpha_regular = 0.0;
  double shock_position_error = 0.0;  // cells
  double excess_mass_rel_error = 0.0;
  fv::Grid1D grid;
  double t = 0.0;
};

/// Samples the exact solution at the cell centers.  A point mass is deposited
/// into the cell containing it.
inline fv::FieldState sample_exact(const RiemannSolution& solution, const fv::Grid1D& grid,
                                   double t) {
  fv::FieldState s(grid);
  s.time = t;
  for (int j = 0; j < grid.n_cells; ++j) {
    const RegularState st = evaluate(solution, grid.center(j), t).regular;
    s.alpha[static_cast<size_t>(j)] = st.alpha;
    s.q[static_cast<size_t>(j)] = st.alpha * st.u;
  }
  const SingularPart sp =
      std::visit([&](const auto& v) -> SingularPart {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, GrhRouted>) {
          return {};
        } else {
          return v.singular(t);
        }
      }, solution);
  if (sp.present && sp.location >= grid.x_min && sp.location <= grid.x_max) {
    const auto j = static_cast<size_t>(grid.cell_of(sp.location));
    const double speed = std::get_if<DeltaShockSolution>(&solution)
                             ? std::get<DeltaShockSolution>(solution).speed(t)
                             : std::get<ContactSolution>(solution).speed(t);
    s.alpha[j] += sp.weight / grid.dx();
    s.q[j] += sp.weight / grid.dx() * speed;
  }
  return s;
}

/// L1 errors by the midpoint rule.  For delta shocks the window
/// xi(t) +- exclusion_half_width is excluded from the alpha norm and the
/// concentrated mass there is compared with omega(t).  The velocity norm runs
/// over the whole grid except where the exact solution is vacuum, since the
/// velocity carries no mass there.  In the cell holding a point mass the
/// reference velocity is the mass-weighted mean of the regular state and the
/// shock speed.
inline ErrorReport compare(const fv::FieldState& numeric, const RiemannSolution& exact,
                           double exclusion_half_width = 0.05) {
  const double t = numeric.time;
  ErrorReport rep;
  rep.grid = numeric.grid;
  rep.t = t;
  const fv::Grid1D& g = numeric.grid;
  if (static_cast<int>(numeric.alpha.size()) != g.n_cells ||
      numeric.q.size() != numeric.alpha.size()) {
    throw DomainError("field arrays do not match the grid");
  }
  const DeltaShockSolution* delta = std::get_if<DeltaShockSolution>(&exact);
  const double xi = delta ? delta->position(t) : 0.0;
  const ModelParams params = std::visit(
      [](const auto& v) -> ModelParams {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, GrhRouted>) {
          return v.params;
        } else {
          return v.params();
        }
      },
      exact);

  // reference velocity per cell, the point mass mixed into its cell
  const fv::FieldState ref = sample_exact(exact, g, t);
  for (int j = 0; j < g.n_cells; ++j) {
    const double x = g.center(j);
    const bool in_window = delta && std::abs(x - xi) <= exclusion_half_width;
    const RegularState ex = evaluate(exact, x, t).regular;
    const double a = numeric.alpha[static_cast<size_t>(j)];
    if (!in_window) rep.l1_alpha_regular += std::abs(a - ex.alpha);
    if (ref.alpha[static_cast<size_t>(j)] > 0.0) {
      const double e =
          std::abs(fv::cell_velocity(numeric, j, params) - fv::cell_velocity(ref, j, params));
      rep.l1_u += e;
      if (!in_window) rep.l1_u_outside_window += e;
    }
  }
  rep.l1_alpha_regular *= g.dx();
  rep.l1_u *= g.dx();
  rep.l1_u_outside_window *= g.dx();

  if (delta) {
    const auto peak = std::max_element(numeric.alpha.begin(), numeric.alpha.end());
    const auto j_peak = static_cast<int>(peak - numeric.alpha.begin());
    rep.shock_position_error = std::abs(j_peak - g.cell_of(xi));
    const double omega = delta->weight(t);
    const double lo = std::max(g.x_min, xi - exclusion_half_width);
    const double hi = std::min(g.x_max, xi + exclusion_half_width);
    const double hw = std::min(xi - lo, hi - xi);
    const double m = fv::shock_mass(numeric, xi, hw, delta->data().alpha_l, delta->data().alpha_r);
    rep.excess_mass_rel_error = omega > 0.0 ? std::abs(m - omega) / omega : std::abs(m);
  }
  return rep;
}

/// Field-to-field L1 differences on a common grid.
inline ErrorReport compare_fields(const fv::FieldState& a, const fv::FieldState& b,
                                  const ModelParams& p) {
  if (!(a.grid == b.grid)) throw DomainError("compare_fields: grids differ");
  if (std::abs(a.time - b.time) > 1e-12 * std::max(1.0, std::abs(a.time))) {
    throw DomainError("compare_fields: times differ");
  }
  ErrorReport rep;
  rep.grid = a.grid;
  rep.t = a.time;
  for (int j = 0; j < a.grid.n_cells; ++j) {
    const auto jj = static_cast<size_t>(j);
    rep.l1_alpha_regular += std::abs(a.alpha[jj] - b.alpha[jj]);
    rep.l1_u += std::abs(fv::cell_velocity(a, j, p) - fv::cell_velocity(b, j, p));
  }
  rep.l1_alpha_regular *= a.grid.dx();
  rep.l1_u *= a.grid.dx();
  rep.l1_u_outside_window = rep.l1_u;
  return rep;
}

inline const char* error_csv_header() {
  return "scenario,n_cells,t,l1_u,l1_alpha,pos_err_cells,mass_rel_err";
}

inline std::string error_csv_row(const std::string& scenario, const ErrorReport& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%d,%.17g,%.17g,%.17g,%.17g,%.17g", scenario.c_str(),
                r.grid.n_cells, r.t, r.l1_u, r.l1_alpha_regular, r.shock_position_error,
                r.excess_mass_rel_error);
  return buf;
}

/// Longest run of cells with alpha <= threshold.
struct VacuumExtent {
  bool found = false;
  double x_lo = 0.0;
  double x_hi = 0.0;
  [[nodiscard]] double width() const { return found ? x_hi - x_lo : 0.0; }
};

inline VacuumExtent vacuum_extent(const fv::FieldState& s, double threshold = 1e-6) {
  VacuumExtent best;
  int run_start = -1;
  const int n = s.grid.n_cells;
  const double dx = s.grid.dx();
  for (int j = 0; j <= n; ++j) {
    const bool vac = j < n && s.alpha[static_cast<size_t>(j)] <= threshold;
    if (vac && run_start < 0) run_start = j;
    if (!vac && run_start >= 0) {
      const double lo = s.grid.x_min + run_start * dx;
      const double hi = s.grid.x_min + j * dx;
      if (!best.found || hi - lo > best.width()) best = {true, lo, hi};
      run_start = -1;
    }
  }
  return best;
}

/// Distance between the smeared contacts bounding a vacuum: the left edge is
/// where alpha first falls below alpha_left / 2 scanning rightward, the right
/// edge where it first falls below alpha_right / 2 scanning leftward, both by
/// linear interpolation between cell centers.  Zero if the levels never
/// separate.
inline double vacuum_width_half_level(const fv::FieldState& s, double alpha_left,
                                      double alpha_right) {
  const int n = s.grid.n_cells;
  auto a = [&](int j) { return s.alpha[static_cast<size_t>(j)]; };
  auto cross = [&](int j, int k, double level) {
    const double xj = s.grid.center(j), xk = s.grid.center(k);
    const double w = (a(j) - level) / (a(j) - a(k));
    return xj + w * (xk - xj);
  };
  const double ll = 0.5 * alpha_left, lr = 0.5 * alpha_right;
  std::optional<double> left, right;
  for (int j = 0; j + 1 < n && !left; ++j) {
    if (a(j) >= ll && a(j + 1) < ll) left = cross(j, j + 1, ll);
  }
  for (int j = n - 1; j > 0 && !right; --j) {
    if (a(j) >= lr && a(j - 1) < lr) right = cross(j, j - 1, lr);
  }
  if (!left || !right || *right <= *left) return 0.0;
  return *right - *left;
}

/// Runs the scheme for each grid size concurrently; reports come back in the
/// order of `cells`.
inline std::vector<ErrorReport> convergence_study(const RiemannData& d, const ModelParams& p,
                                                  Interval domain, const std::vector<int>& cells,
                                                  double t_end, double cfl = 0.15,
                                                  double exclusion_half_width = 0.05) {
  const RiemannSolution exact = solve(d, p);
  std::vector<std::future<ErrorReport>> jobs;
  jobs.reserve(cells.size());
  for (int n : cells) {
    jobs.push_back(std::async(std::launch::async, [=, &exact] {
      const fv::Grid1D g(domain.lo, domain.hi, n);
      fv::AdvanceOptions opt;
      opt.cfl = cfl;
      opt.velocity_bounds = fv::riemann_velocity_bounds(d, p);
      const fv::FieldState s = fv::advance(fv::riemann_initial_state(g, d), p, t_end, opt);
      return compare(s, exact, exclusion_half_width);
    }));
  }
  std::vector<ErrorReport> out;
  out.reserve(jobs.size());
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

}  // namespace droplet::validation

#endif  // DROPLET_VALIDATION_HPP_
