// Acceptance criteria, one PASS/FAIL line each.  Exit status is nonzero if
// any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "droplet/burgers.hpp"
#include "droplet/fv.hpp"
#include "droplet/grh.hpp"
#include "droplet/riemann.hpp"
#include "droplet/validation.hpp"

using namespace droplet;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char b[128];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

const RiemannData kCompressive{0.008, 1.5, 0.003, 0.5, 0.0};
const RiemannData kExpansive{0.008, 0.5, 0.003, 1.5, 0.0};
const ModelParams kParams{0.2, 1.0};

double uniform(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

fv::FieldState run_fv(const RiemannData& d, const ModelParams& p) {
  const fv::Grid1D g(-1.0, 2.0, 3000);
  fv::AdvanceOptions opt;
  opt.cfl = 0.15;
  opt.velocity_bounds = fv::riemann_velocity_bounds(d, p);
  return fv::advance(fv::riemann_initial_state(g, d), p, 1.0, opt);
}

Outcome ac1() {
  const auto s = grh::riemann_limit_states(kCompressive, kParams);
  auto omega = [](double t) { return full_system_weight(kCompressive, kParams, t); };
  auto sigma = [](double t) { return full_system_speed(kCompressive, kParams, t); };
  std::mt19937_64 g(101);
  const double h = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double t = std::max(h, 20.0 * (1.0 - uniform(g, 0.0, 1.0)));  // (0, 20]
    const double dw = (omega(t + h) - omega(t - h)) / (2.0 * h);
    const double dth = (omega(t + h) * sigma(t + h) - omega(t - h) * sigma(t - h)) / (2.0 * h);
    const auto r = grh::residual(t, omega(t), sigma(t), dw, dth, s, kParams);
    worst = std::max({worst, std::abs(r.mass), std::abs(r.momentum)});
  }
  return {worst <= 1e-6, fmt("max |residual| = %.3e (limit 1e-6)", worst)};
}

Outcome ac2() {
  const auto s = grh::riemann_limit_states(kCompressive, kParams);
  const double w1 = full_system_weight(kCompressive, kParams, 1.0);
  const double s1 = full_system_speed(kCompressive, kParams, 1.0);
  auto err = [&](double dt) {
    const auto tr = grh::integrate({0.0, 0.0}, std::nullopt, 1.0, dt, s, kParams);
    return std::pair{std::abs(tr.back().omega - w1), std::abs(tr.back().sigma - s1)};
  };
  const auto [ew, es] = err(1e-4);
  bool pass = ew <= 1e-8 && es <= 1e-8;
  std::string detail = fmt("dt=1e-4: |d omega| = %.2e", ew) + fmt(", |d sigma| = %.2e", es);
  // halving ratios over dt = 0.1 ... 0.00625, error = max of the two components;
  // "approximately 16" pinned as an observed order within 4 +- 0.5
  double prev = 0.0;
  std::string ratios;
  for (double dt = 0.1; dt > 0.005; dt *= 0.5) {
    const auto [a, b] = err(dt);
    const double e = std::max(a, b);
    if (prev > 0.0) {
      const double r = prev / e;
      ratios += fmt(" %.1f", r);
      if (!(r >= std::pow(2.0, 3.5) && r <= std::pow(2.0, 4.5))) pass = false;
    }
    prev = e;
  }
  return {pass, detail + "; halving ratios" + ratios + " (each in [11.3, 22.6])"};
}

struct Ac34 {
  Outcome entropy;
  Outcome mass;
};

Ac34 ac3_ac4() {
  std::mt19937_64 g(303);
  long violations = 0, steps = 0;
  double worst_gap = 0.0;     // closed form, gap(t) / (gap0 e^{-10})
  double worst_num_gap = 0.0;  // same for the numerical trajectory
  double worst_bound = INFINITY;  // min of omega - (bound - 1e-8)
  for (int i = 0; i < 50; ++i) {
    RiemannData d;
    d.alpha_l = uniform(g, 1e-3, 1.0);
    d.alpha_r = uniform(g, 1e-3, 1.0);
    d.u_r0 = uniform(g, -2.0, 2.0);
    d.u_l0 = d.u_r0 + uniform(g, 0.05, 3.0);
    d.omega0 = i % 2 ? uniform(g, 1e-3, 0.1) : 0.0;
    const ModelParams p{uniform(g, 0.1, 4.0), uniform(g, -2.0, 2.0)};
    const double t_end = 10.0 / p.mu;
    const double dt = std::min(1e-2, 0.1 / p.mu);
    const auto states = grh::riemann_limit_states(d, p);
    const double sigma0 = initial_shock_speed(d.alpha_l, d.u_l0, d.alpha_r, d.u_r0);
    const auto tr = grh::integrate({d.omega0, 0.0}, sigma0, t_end, dt, states, p);
    for (const auto& smp : tr.samples) {
      ++steps;
      if (!(smp.u_r < smp.sigma && smp.sigma < smp.u_l)) ++violations;
      worst_bound = std::min(worst_bound, smp.omega - (weight_lower_bound(smp.t, d, p) - 1e-8));
    }
    const double decay = std::exp(-10.0);
    const double ul = states.u_l(t_end), ur = states.u_r(t_end);
    const double sc = full_system_speed(d, p, t_end);
    worst_gap = std::max({worst_gap, (ul - sc) / ((d.u_l0 - sigma0) * decay),
                          (sc - ur) / ((sigma0 - d.u_r0) * decay)});
    const double sn = tr.back().sigma;
    worst_num_gap = std::max({worst_num_gap, (ul - sn) / ((d.u_l0 - sigma0) * decay),
                              (sn - ur) / ((sigma0 - d.u_r0) * decay)});
  }
  Ac34 out;
  out.entropy = {violations == 0 && worst_gap <= 1.0 + 1e-9,
                 std::to_string(violations) + " violations in " + std::to_string(steps) +
                     " steps of 50 trajectories; max gap(10/mu) / (gap0 e^-10) = " +
                     fmt("%.12f", worst_gap) + " (limit 1 + 1e-9; RK4 trajectory " +
                     fmt("%.12f", worst_num_gap) + ")"};
  out.mass = {worst_bound >= 0.0,
              fmt("min over all steps of omega - (omega0 + K phi - 1e-8) = %.3e (must be >= 0)",
                  worst_bound)};
  return out;
}

// c + a tanh(k (x - x0)) + b sin(w x)
SmoothProfile random_profile(std::mt19937_64& g) {
  const double c = uniform(g, -1.0, 1.0), a = uniform(g, -2.0, 2.0), k = uniform(g, 0.5, 3.0);
  const double x0 = uniform(g, -1.0, 1.0), b = uniform(g, -0.5, 0.5), w = uniform(g, 0.5, 2.0);
  SmoothProfile p;
  p.u0 = [=](double x) { return c + a * std::tanh(k * (x - x0)) + b * std::sin(w * x); };
  p.u0_prime = [=](double x) {
    const double ch = std::cosh(k * (x - x0));
    return a * k / (ch * ch) + b * w * std::cos(w * x);
  };
  p.alpha0 = [](double) { return 0.01; };
  p.sample_domain = {-4.0, 4.0};
  p.sample_count = 4001;
  return p;
}

Outcome ac5() {
  std::mt19937_64 g(505);
  int blow = 0, calm = 0, calm_crossings = 0;
  double worst = 0.0;
  while (blow < 20 || calm < 20) {
    const SmoothProfile prof = random_profile(g);
    const ModelParams p{uniform(g, 0.0, 2.0), uniform(g, -1.0, 1.0)};
    double min_slope = INFINITY;
    for (int k = 0; k < prof.sample_count; ++k) {
      min_slope = std::min(min_slope, prof.u0_prime(prof.sample(k)));
    }
    const auto report = blowup(prof, p);
    if (min_slope < -p.mu && report.t_star && *report.t_star < 50.0) {
      if (blow >= 20) continue;
      ++blow;
      const auto oracle = validation::crossing_oracle(prof, p, 50.0, 2001);
      worst = std::max(worst, oracle ? std::abs(*report.t_star - *oracle) : INFINITY);
    } else if (min_slope >= -p.mu) {
      if (calm >= 20) continue;
      ++calm;
      if (validation::crossing_oracle(prof, p, 50.0, 2001)) ++calm_crossings;
    }
  }
  return {worst <= 1e-6 && calm_crossings == 0,
          fmt("max |t*_formula - t*_oracle| = %.3e over 20 blowup profiles (limit 1e-6); ", worst) +
              std::to_string(calm_crossings) + " crossings before t=50 in 20 profiles with min u0' >= -mu"};
}

Outcome ac6() {
  const fv::FieldState s = run_fv(kCompressive, kParams);
  const RiemannSolution exact = solve(kCompressive, kParams);
  const auto r = validation::compare(s, exact, 0.05);
  const bool pass = r.shock_position_error <= 3.0 && r.excess_mass_rel_error <= 0.10 &&
                    r.l1_u_outside_window <= 5e-3;
  return {pass, fmt("argmax offset %.0f cells (limit 3)", r.shock_position_error) +
                    fmt(", excess mass rel. error %.3e (limit 0.1)", r.excess_mass_rel_error) +
                    fmt(", L1(u) outside window %.3e (limit 5e-3)", r.l1_u_outside_window)};
}

Outcome ac7() {
  const fv::FieldState s = run_fv(kExpansive, kParams);
  const VacuumSolution v(kExpansive, kParams);
  const double x1 = v.x1(1.0), x2 = v.x2(1.0);
  const fv::Grid1D& g = s.grid;
  double max_in = 0.0, min_in = INFINITY, max_core = 0.0;
  for (int j = 0; j < g.n_cells; ++j) {
    const double x = g.center(j), a = s.alpha[static_cast<size_t>(j)];
    if (x <= x1 || x >= x2) continue;
    max_in = std::max(max_in, a);
    min_in = std::min(min_in, a);
    if (x > x1 + 0.1 && x < x2 - 0.1) max_core = std::max(max_core, a);
  }
  // velocity continuity: largest jump between neighbouring nonvacuum cells
  const double slope = 1.0 / phi_growth(kParams.mu, 1.0);  // |d_x u| inside the fan
  const double limit = 5.0 * g.dx() * slope;
  double max_jump = 0.0;
  for (int j = 0; j + 1 < g.n_cells; ++j) {
    if (s.alpha[static_cast<size_t>(j)] <= fv::kVacuumAlpha ||
        s.alpha[static_cast<size_t>(j) + 1] <= fv::kVacuumAlpha) {
      continue;
    }
    max_jump = std::max(max_jump, std::abs(fv::cell_velocity(s, j + 1, kParams) -
                                           fv::cell_velocity(s, j, kParams)));
  }
  const bool alpha_ok = max_in <= 1e-6;
  const bool u_ok = max_jump <= limit;
  return {alpha_ok && u_ok,
          std::string(alpha_ok ? "" : "[alpha part fails] ") +
              fmt("max alpha on (X1, X2) = %.3e (limit 1e-6)", max_in) +
              fmt(", min %.3e", min_in) + fmt(", max 0.1 inside the edges %.3e", max_core) +
              "; " + std::string(u_ok ? "" : "[velocity part fails] ") +
              fmt("max cell-to-cell |du| = %.3e", max_jump) + fmt(" (limit %.3e)", limit)};
}

Outcome ac8() {
  const ModelParams p0{0.0, 1.0}, p4{4.0, 1.0};
  const auto d0 = run_fv(kCompressive, p0);
  const auto d4 = run_fv(kCompressive, p4);
  const auto v0 = run_fv(kExpansive, p0);
  const auto v4 = run_fv(kExpansive, p4);
  auto excess = [](const fv::FieldState& s, const ModelParams& p) {
    const double xi = DeltaShockSolution(kCompressive, p).position(1.0);
    return fv::shock_mass(s, xi, 0.05, kCompressive.alpha_l, kCompressive.alpha_r);
  };
  const double m0 = excess(d0, p0), m4 = excess(d4, p4);
  const double w0 = validation::vacuum_width_half_level(v0, kExpansive.alpha_l, kExpansive.alpha_r);
  const double w4 = validation::vacuum_width_half_level(v4, kExpansive.alpha_l, kExpansive.alpha_r);
  return {m4 < m0 && w4 < w0, fmt("excess mass mu=4: %.4e", m4) + fmt(" < mu=0: %.4e", m0) +
                                  fmt("; vacuum width mu=4: %.4f", w4) + fmt(" < mu=0: %.4f", w0)};
}

Outcome ac9() {
  const std::vector<validation::TestFunction> tests = {
      validation::bump_test_function(0.0, 0.6, 1.5, 1.0, 0.0, 0.0),
      validation::bump_test_function(0.3, 0.8, 2.0, 0.5, 1.0, -0.3),
      validation::bump_test_function(1.0, 0.9, 1.2, 1.0, -0.5, 0.7),
      validation::bump_test_function(0.5, 1.5, 2.5, 0.2, 0.3, 0.4),
      validation::bump_test_function(-0.2, 0.5, 0.8, 2.0, 0.0, 1.0)};
  const validation::QuadratureBox box{{-2.0, 3.0}, 3.0};
  double worst = 0.0;
  for (const RiemannData& d : {kCompressive, kExpansive}) {
    for (const auto& r : validation::weak_residual(solve(d, kParams), tests, box, 800)) {
      worst = std::max({worst, std::abs(r.mass), std::abs(r.momentum)});
    }
  }
  return {worst <= 1e-6,
          fmt("max |residual| = %.3e over 5 test functions x 2 identities x 2 families (limit 1e-6)",
              worst)};
}

Outcome ac10() {
  const auto s = grh::riemann_limit_states(kCompressive, kParams);
  const BurgersWave bw(kCompressive, kParams);
  auto omega = [](double t) { return subsystem_weight(kCompressive, kParams, t); };
  auto sigma = [&](double t) { return bw.shock_speed(t); };
  const double t = 1.0, h = 1e-5;
  const double dw = (omega(t + h) - omega(t - h)) / (2.0 * h);
  const double dth = (omega(t + h) * sigma(t + h) - omega(t - h) * sigma(t - h)) / (2.0 * h);
  const double res = grh::residual(t, omega(t), sigma(t), dw, dth, s, kParams).momentum;

  std::mt19937_64 g(1010);
  int bad = 0;
  for (int i = 0; i < 100; ++i) {
    RiemannData d;
    d.alpha_l = uniform(g, 1e-4, 1.0);
    d.alpha_r = i % 10 == 0 ? d.alpha_l : uniform(g, 1e-4, 1.0);
    d.u_r0 = uniform(g, -2.0, 2.0);
    d.u_l0 = d.u_r0 + uniform(g, 1e-3, 3.0);
    d.omega0 = uniform(g, 0.0, 0.1);
    const ModelParams p{uniform(g, 0.0, 5.0), uniform(g, -2.0, 2.0)};
    const double tt = uniform(g, 0.01, 10.0);
    const double ws = subsystem_weight(d, p, tt), wf = full_system_weight(d, p, tt);
    const bool equal = std::abs(ws - wf) <= 1e-14 * ws;
    if (ws < wf || equal != (d.alpha_l == d.alpha_r)) ++bad;
  }
  return {std::abs(res) > 1e-4 && bad == 0,
          fmt("second-equation residual of (omega_sub, sigma_Burgers) at t=1: %.4e (|.| > 1e-4); ",
              res) +
              std::to_string(bad) + " AM-GM failures in 100 draws"};
}

struct Timed {
  Outcome o;
  double seconds;
};

Timed timed(const std::function<Outcome()>& f) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o = f();
  return {o, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
}

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](const char* id, const char* title, const Outcome& o, double secs,
                    double limit) {
    const bool fast = limit <= 0.0 || secs < limit;
    const bool pass = o.pass && fast;
    if (!pass) ++failures;
    std::printf("%s %-4s %-34s %s; runtime %.2f s", pass ? "PASS" : "FAIL", id, title,
                o.detail.c_str(), secs);
    if (limit > 0.0) std::printf(" (limit %.0f s)", limit);
    std::printf("\n");
    std::fflush(stdout);
  };

  auto r1 = timed(ac1);
  report("AC1", "closed-form GRH residuals", r1.o, r1.seconds, 1.0);
  auto r2 = timed(ac2);
  report("AC2", "RK4 GRH vs closed form", r2.o, r2.seconds, 1.0);
  Ac34 r34;
  const auto t34 = timed([&] {
    r34 = ac3_ac4();
    return Outcome{true, ""};
  });
  report("AC3", "entropy persistence/degeneracy", r34.entropy, t34.seconds, 0.0);
  report("AC4", "mass-growth lower bound", r34.mass, t34.seconds, 0.0);
  auto r5 = timed(ac5);
  report("AC5", "blowup formula vs crossing oracle", r5.o, r5.seconds, 10.0);
  auto r6 = timed(ac6);
  report("AC6", "delta-shock replication", r6.o, r6.seconds, 30.0);
  auto r7 = timed(ac7);
  report("AC7", "vacuum replication", r7.o, r7.seconds, 30.0);
  auto r8 = timed(ac8);
  report("AC8", "drag weakens delta, shrinks vacuum", r8.o, r8.seconds, 60.0);
  auto r9 = timed(ac9);
  report("AC9", "weak-solution quadrature", r9.o, r9.seconds, 30.0);
  auto r10 = timed(ac10);
  report("AC10", "subsystem/full-system inequivalence", r10.o, r10.seconds, 0.0);

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
