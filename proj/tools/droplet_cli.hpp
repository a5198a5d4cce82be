#ifndef DROPLET_CLI_HPP_
#define DROPLET_CLI_HPP_

// Command-line driver.  One JSON scenario per invocation (see README.md for
// the schema); every command writes into the --out directory and echoes the
// scenario file there verbatim as scenario.json.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "droplet/burgers.hpp"
#include "droplet/fv.hpp"
#include "droplet/grh.hpp"
#include "droplet/riemann.hpp"
#include "droplet/validation.hpp"
#include "json.hpp"

namespace droplet::cli {

namespace fs = std::filesystem;
using nlohmann::json;

enum ExitCode { kOk = 0, kConfigError = 2, kNumericalAbort = 3 };

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ProfileSpec {
  std::string type = "tanh";  // tanh | gaussian
  double amplitude = -1.0;
  double center = 0.0;
  double width = 1.0;
  double offset = 0.0;
  double alpha = 0.01;
  Interval domain{-3.0, 3.0};
  int samples = 2001;

  [[nodiscard]] SmoothProfile build() const {
    SmoothProfile p;
    const double a = amplitude, c = center, w = width, o = offset, al = alpha;
    if (type == "tanh") {
      p.u0 = [=](double x) { return o + a * std::tanh((x - c) / w); };
      p.u0_prime = [=](double x) {
        const double ch = std::cosh((x - c) / w);
        return a / (w * ch * ch);
      };
    } else if (type == "gaussian") {
      p.u0 = [=](double x) {
        const double s = (x - c) / w;
        return o + a * std::exp(-s * s);
      };
      p.u0_prime = [=](double x) {
        const double s = (x - c) / w;
        return -2.0 * a * s / w * std::exp(-s * s);
      };
    } else {
      throw ConfigError("unknown profile type '" + type + "' (expected tanh or gaussian)");
    }
    p.alpha0 = [=](double) { return al; };
    p.sample_domain = domain;
    p.sample_count = samples;
    return p;
  }
};

struct Outputs {
  bool csv = true;
  bool svg = true;
  bool report = true;
};

struct Scenario {
  std::string name = "scenario";
  std::string raw;  // file contents, echoed verbatim
  ModelParams params;
  std::optional<RiemannData> data;
  std::optional<ProfileSpec> profile;
  Interval domain{-1.0, 2.0};
  int n_cells = 3000;
  std::vector<double> t_snapshots{1.0};
  double cfl = 0.15;
  std::optional<double> fixed_dt;
  double exclusion_half_width = 0.05;
  double grh_dt = 1e-4;
  std::optional<double> grh_sigma0;
  Outputs outputs;
};

namespace detail {

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  return j.at(key).get<T>();
}

inline Interval interval_of(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) {
    throw ConfigError(std::string(what) + " must be a two-element array [lo, hi]");
  }
  const Interval iv{j[0].get<double>(), j[1].get<double>()};
  if (!(iv.hi > iv.lo)) throw ConfigError(std::string(what) + " needs lo < hi");
  return iv;
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string time_tag(double t) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "t%g", t);
  return buf;
}

inline void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot write " + path.string());
  f << text;
}

}  // namespace detail

inline Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("scenario must be a JSON object");
  Scenario s;
  s.raw = text;
  try {
    s.name = detail::get_or<std::string>(j, "name", s.name);
    if (!j.contains("params")) throw ConfigError("scenario needs 'params'");
    const json& p = j.at("params");
    s.params = {p.at("mu").get<double>(), p.at("ua").get<double>()};
    if (j.contains("data") == j.contains("profile")) {
      throw ConfigError("scenario needs exactly one of 'data' (Riemann) or 'profile' (smooth)");
    }
    if (j.contains("data")) {
      const json& d = j.at("data");
      s.data = RiemannData{d.at("alpha_l").get<double>(), d.at("u_l").get<double>(),
                           d.at("alpha_r").get<double>(), d.at("u_r").get<double>(),
                           detail::get_or(d, "omega0", 0.0)};
    } else {
      const json& pr = j.at("profile");
      ProfileSpec ps;
      ps.type = detail::get_or<std::string>(pr, "type", ps.type);
      ps.amplitude = detail::get_or(pr, "amplitude", ps.amplitude);
      ps.center = detail::get_or(pr, "center", ps.center);
      ps.width = detail::get_or(pr, "width", ps.width);
      ps.offset = detail::get_or(pr, "offset", ps.offset);
      ps.alpha = detail::get_or(pr, "alpha", ps.alpha);
      ps.samples = detail::get_or(pr, "samples", ps.samples);
      if (pr.contains("domain")) ps.domain = detail::interval_of(pr.at("domain"), "profile.domain");
      if (!(ps.width > 0.0)) throw ConfigError("profile.width must be positive");
      s.profile = ps;
    }
    if (j.contains("domain")) s.domain = detail::interval_of(j.at("domain"), "domain");
    s.n_cells = detail::get_or(j, "n_cells", s.n_cells);
    if (j.contains("t_snapshots")) s.t_snapshots = j.at("t_snapshots").get<std::vector<double>>();
    s.cfl = detail::get_or(j, "cfl", s.cfl);
    if (j.contains("fixed_dt") && !j.at("fixed_dt").is_null()) {
      s.fixed_dt = j.at("fixed_dt").get<double>();
    }
    s.exclusion_half_width = detail::get_or(j, "exclusion_half_width", s.exclusion_half_width);
    if (j.contains("grh")) {
      const json& g = j.at("grh");
      s.grh_dt = detail::get_or(g, "dt", s.grh_dt);
      if (g.contains("sigma0") && !g.at("sigma0").is_null()) {
        s.grh_sigma0 = g.at("sigma0").get<double>();
      }
    }
    if (j.contains("outputs")) {
      const json& o = j.at("outputs");
      s.outputs.csv = detail::get_or(o, "csv", true);
      s.outputs.svg = detail::get_or(o, "svg", true);
      s.outputs.report = detail::get_or(o, "report", true);
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad scenario field: ") + e.what());
  }

  if (s.name.empty() || s.name.find_first_of("/\\") != std::string::npos) {
    throw ConfigError("scenario name must be a nonempty plain file name");
  }
  if (s.n_cells <= 0) throw ConfigError("n_cells must be positive");
  if (s.t_snapshots.empty()) throw ConfigError("t_snapshots must not be empty");
  for (double t : s.t_snapshots) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("snapshot times must be >= 0");
  }
  std::sort(s.t_snapshots.begin(), s.t_snapshots.end());
  if (!(s.cfl > 0.0 && s.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  if (s.fixed_dt && !(*s.fixed_dt > 0.0)) throw ConfigError("fixed_dt must be positive");
  if (!(s.grh_dt > 0.0)) throw ConfigError("grh.dt must be positive");
  if (!(s.exclusion_half_width >= 0.0)) throw ConfigError("exclusion_half_width must be >= 0");
  try {
    s.params.validate();
    if (s.data) s.data->validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  return s;
}

inline Scenario load_scenario(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot read scenario " + path.string());
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_scenario(ss.str());
}

// ---------------------------------------------------------------------------
// SVG

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::string color;
};

/// Line plot with axes, tick labels and a legend.
inline std::string svg_plot(const std::string& title, const std::string& xlabel,
                            const std::string& ylabel, const std::vector<Series>& series) {
  const double w = 720, h = 440, ml = 80, mr = 20, mt = 40, mb = 60;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series) {
    for (double v : s.x) {
      if (std::isfinite(v)) x0 = std::min(x0, v), x1 = std::max(x1, v);
    }
    for (double v : s.y) {
      if (std::isfinite(v)) y0 = std::min(y0, v), y1 = std::max(y1, v);
    }
  }
  if (!(x1 > x0)) x0 -= 0.5, x1 += 0.5;
  if (!(y1 > y0)) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double v) { return ml + (v - x0) / (x1 - x0) * (w - ml - mr); };
  auto py = [&](double v) { return h - mb - (v - y0) / (y1 - y0) * (h - mt - mb); };
  auto num = [](double v) {
    char b[32];
    std::snprintf(b, sizeof b, "%.4g", v);
    return std::string(b);
  };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << w / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" << title
    << "</text>\n"
    << "<line x1=\"" << ml << "\" y1=\"" << h - mb << "\" x2=\"" << w - mr << "\" y2=\""
    << h - mb << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << h - mb
    << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = x0 + (x1 - x0) * k / 5.0, yv = y0 + (y1 - y0) * k / 5.0;
    o << "<line x1=\"" << px(xv) << "\" y1=\"" << h - mb << "\" x2=\"" << px(xv) << "\" y2=\""
      << h - mb + 5 << "\" stroke=\"black\"/>"
      << "<text x=\"" << px(xv) << "\" y=\"" << h - mb + 18 << "\" text-anchor=\"middle\">"
      << num(xv) << "</text>\n"
      << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml << "\" y2=\""
      << py(yv) << "\" stroke=\"black\"/>"
      << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">"
      << num(yv) << "</text>\n";
  }
  o << "<text x=\"" << (ml + w - mr) / 2 << "\" y=\"" << h - 15 << "\" text-anchor=\"middle\">"
    << xlabel << "</text>\n"
    << "<text x=\"18\" y=\"" << (mt + h - mb) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << (mt + h - mb) / 2 << ")\">" << ylabel << "</text>\n";
  for (size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    o << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (size_t k = 0; k < s.x.size() && k < s.y.size(); ++k) {
      if (!std::isfinite(s.y[k])) continue;
      o << num(px(s.x[k])) << ',' << num(py(s.y[k])) << ' ';
    }
    o << "\"/>\n";
    const double ly = mt + 10 + 18.0 * static_cast<double>(i);
    o << "<line x1=\"" << w - mr - 150 << "\" y1=\"" << ly << "\" x2=\"" << w - mr - 120
      << "\" y2=\"" << ly << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"/>"
      << "<text x=\"" << w - mr - 112 << "\" y=\"" << ly + 4 << "\">" << s.name << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Commands

struct Overrides {
  bool rescale_alpha = false;
  std::optional<double> fixed_dt;
  std::optional<int> cells;
};

inline Scenario apply(Scenario s, const Overrides& o) {
  if (o.fixed_dt) {
    if (!(*o.fixed_dt > 0.0)) throw ConfigError("--fixed-dt must be positive");
    s.fixed_dt = o.fixed_dt;
  }
  if (o.cells) {
    if (*o.cells <= 0) throw ConfigError("--cells must be positive");
    s.n_cells = *o.cells;
  }
  return s;
}

namespace detail {

inline const RiemannData& require_riemann(const Scenario& s, const char* cmd) {
  if (!s.data) {
    throw ConfigError(std::string(cmd) + " needs a Riemann scenario ('data'); use blowup for "
                      "smooth profiles");
  }
  return *s.data;
}

inline RiemannSolution exact_solution(const Scenario& s, const char* cmd) {
  const RiemannSolution sol = solve(require_riemann(s, cmd), s.params);
  if (const auto* r = std::get_if<GrhRouted>(&sol)) {
    throw ConfigError(std::string(cmd) + ": " + r->warning + " (use the grh command)");
  }
  return sol;
}

inline fv::Grid1D grid_of(const Scenario& s) {
  return fv::Grid1D(s.domain.lo, s.domain.hi, s.n_cells);
}

inline std::string field_csv(const fv::Grid1D& g, const std::vector<double>& alpha,
                             const std::vector<double>& u, const char* alpha_name) {
  std::string out = std::string("x,") + alpha_name + ",u\n";
  for (int j = 0; j < g.n_cells; ++j) {
    const auto jj = static_cast<size_t>(j);
    out += fmt(g.center(j)) + ',' + fmt(alpha[jj]) + ',' + fmt(u[jj]) + '\n';
  }
  return out;
}

struct ExactFields {
  std::vector<double> alpha;
  std::vector<double> u;
};

inline ExactFields exact_fields(const RiemannSolution& sol, const fv::Grid1D& g, double t) {
  ExactFields f;
  for (int j = 0; j < g.n_cells; ++j) {
    const RegularState st = evaluate(sol, g.center(j), t).regular;
    f.alpha.push_back(st.alpha);
    f.u.push_back(st.u);
  }
  return f;
}

/// Numerical snapshots in increasing time order.
inline std::vector<fv::FieldState> simulate_snapshots(const Scenario& s) {
  const RiemannData& d = require_riemann(s, "simulate");
  const fv::Grid1D g = grid_of(s);
  fv::FieldState state = fv::riemann_initial_state(g, d);
  fv::AdvanceOptions opt;
  opt.cfl = s.cfl;
  opt.fixed_dt = s.fixed_dt;
  opt.velocity_bounds = fv::riemann_velocity_bounds(d, s.params);
  std::vector<fv::FieldState> out;
  for (double t : s.t_snapshots) {
    if (t > state.time) state = fv::advance(state, s.params, t, opt);
    out.push_back(state);
  }
  return out;
}

inline std::vector<double> velocities(const fv::FieldState& f, const ModelParams& p) {
  std::vector<double> u;
  for (int j = 0; j < f.grid.n_cells; ++j) u.push_back(fv::cell_velocity(f, j, p));
  return u;
}

inline std::vector<double> centers(const fv::Grid1D& g) {
  std::vector<double> x;
  for (int j = 0; j < g.n_cells; ++j) x.push_back(g.center(j));
  return x;
}

}  // namespace detail

inline void cmd_exact(const Scenario& s, const fs::path& out) {
  const RiemannSolution sol = detail::exact_solution(s, "exact");
  const fv::Grid1D g = detail::grid_of(s);
  std::string report;
  if (const auto* ds = std::get_if<DeltaShockSolution>(&sol)) {
    report = "t,xi,sigma,omega,gap_left,gap_right\n";
    for (double t : s.t_snapshots) {
      const double sg = ds->speed(t);
      report += detail::fmt(t) + ',' + detail::fmt(ds->position(t)) + ',' + detail::fmt(sg) +
                ',' + detail::fmt(ds->weight(t)) + ',' + detail::fmt(ds->left_limit(t).u - sg) +
                ',' + detail::fmt(sg - ds->right_limit(t).u) + '\n';
    }
  } else if (const auto* vs = std::get_if<VacuumSolution>(&sol)) {
    report = "t,X1,X2\n";
    for (double t : s.t_snapshots) {
      report += detail::fmt(t) + ',' + detail::fmt(vs->x1(t)) + ',' + detail::fmt(vs->x2(t)) + '\n';
    }
  } else {
    const auto& c = std::get<ContactSolution>(sol);
    report = "t,x_contact,speed,omega\n";
    for (double t : s.t_snapshots) {
      report += detail::fmt(t) + ',' + detail::fmt(c.position(t)) + ',' +
                detail::fmt(c.speed(t)) + ',' + detail::fmt(c.weight(t)) + '\n';
    }
  }
  for (double t : s.t_snapshots) {
    const auto f = detail::exact_fields(sol, g, t);
    if (s.outputs.csv) {
      detail::write_file(out / ("exact_" + detail::time_tag(t) + ".csv"),
                         detail::field_csv(g, f.alpha, f.u, "alpha_regular"));
    }
  }
  if (s.outputs.report) detail::write_file(out / "report.csv", report);
}

inline void cmd_simulate(const Scenario& s, const fs::path& out) {
  const auto snaps = detail::simulate_snapshots(s);
  for (const auto& f : snaps) {
    if (s.outputs.csv) {
      detail::write_file(out / ("simulate_" + detail::time_tag(f.time) + ".csv"),
                         detail::field_csv(f.grid, f.alpha, detail::velocities(f, s.params),
                                           "alpha"));
    }
  }
}

inline void cmd_compare(const Scenario& s, const fs::path& out, bool rescale_alpha) {
  const RiemannSolution sol = detail::exact_solution(s, "compare");
  const auto snaps = detail::simulate_snapshots(s);
  std::string errors = std::string(validation::error_csv_header()) + '\n';
  for (const auto& f : snaps) {
    const double t = f.time;
    const auto u = detail::velocities(f, s.params);
    const auto ex = detail::exact_fields(sol, f.grid, t);
    const std::string tag = detail::time_tag(t);
    if (s.outputs.csv) {
      detail::write_file(out / ("simulate_" + tag + ".csv"),
                         detail::field_csv(f.grid, f.alpha, u, "alpha"));
      detail::write_file(out / ("exact_" + tag + ".csv"),
                         detail::field_csv(f.grid, ex.alpha, ex.u, "alpha_regular"));
    }
    if (t > 0.0) {
      errors += validation::error_csv_row(s.name, validation::compare(f, sol, s.exclusion_half_width)) + '\n';
    }
    if (s.outputs.svg) {
      const double scale = rescale_alpha ? 100.0 : 1.0;
      std::vector<double> an = f.alpha, ae = ex.alpha;
      for (double& a : an) a *= scale;
      for (double& a : ae) a *= scale;
      const auto x = detail::centers(f.grid);
      const std::string alabel = rescale_alpha ? "100 alpha" : "alpha";
      detail::write_file(out / ("alpha_" + tag + ".svg"),
                         svg_plot(s.name + ": volume fraction, t = " + detail::fmt(t), "x", alabel,
                                  {{"numerical", x, an, "#1f77b4"},
                                   {"exact (regular part)", x, ae, "#d62728"}}));
      std::vector<double> ue = ex.u;
      for (size_t j = 0; j < ue.size(); ++j) {
        if (ex.alpha[j] == 0.0) ue[j] = NAN;  // vacuum: no particles, no velocity plotted
      }
      detail::write_file(out / ("u_" + tag + ".svg"),
                         svg_plot(s.name + ": velocity, t = " + detail::fmt(t), "x", "u",
                                  {{"numerical", x, u, "#1f77b4"}, {"exact", x, ue, "#d62728"}}));
    }
  }
  if (s.outputs.report) detail::write_file(out / "errors.csv", errors);
}

inline void cmd_blowup(const Scenario& s, const fs::path& out) {
  if (!s.profile) throw ConfigError("blowup needs a smooth scenario ('profile')");
  SmoothProfile prof = s.profile->build();
  try {
    prof.validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  const BlowupReport r = blowup(prof, s.params);
  const auto oracle = validation::crossing_oracle(prof, s.params, 50.0, prof.sample_count);
  std::string text = "blows_up,t_star,x0_star,t_crossing_oracle\n";
  text += std::string(r.blows_up ? "true" : "false") + ',' +
          (r.t_star ? detail::fmt(*r.t_star) : std::string()) + ',' +
          (r.x0_star ? detail::fmt(*r.x0_star) : std::string()) + ',' +
          (oracle ? detail::fmt(*oracle) : std::string()) + '\n';
  detail::write_file(out / "blowup.csv", text);
}

inline void cmd_grh(const Scenario& s, const fs::path& out) {
  const RiemannData& d = detail::require_riemann(s, "grh");
  if (!(d.u_l0 >= d.u_r0)) throw ConfigError("grh needs u_l >= u_r (no delta shock otherwise)");
  const double t_end = s.t_snapshots.back();
  if (!(t_end > 0.0)) throw ConfigError("grh needs a positive final snapshot time");
  const double dt = s.fixed_dt.value_or(s.grh_dt);
  grh::Trajectory tr;
  try {
    std::optional<double> sigma0 = s.grh_sigma0;
    if (d.u_l0 == d.u_r0) sigma0 = d.u_l0;
    if (!sigma0 && !(d.alpha_l > 0.0 && d.alpha_r > 0.0)) {
      throw ConfigError("a zero volume fraction needs grh.sigma0");
    }
    tr = grh::integrate({d.omega0, 0.0}, sigma0, t_end, dt,
                        grh::riemann_limit_states(d, s.params), s.params);
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  std::string text = "t,omega,sigma,u_l,u_r,entropy_ok\n";
  for (const auto& smp : tr.samples) {
    text += detail::fmt(smp.t) + ',' + detail::fmt(smp.omega) + ',' + detail::fmt(smp.sigma) +
            ',' + detail::fmt(smp.u_l) + ',' + detail::fmt(smp.u_r) + ',' +
            (smp.entropy_ok ? "true" : "false") + '\n';
  }
  detail::write_file(out / "trajectory.csv", text);
}

/// Runs one command on one scenario; exceptions map to exit codes.
inline int run_scenario(const std::string& command, const Scenario& scenario, const fs::path& out,
                        const Overrides& o, std::ostream& err) {
  try {
    const Scenario s = apply(scenario, o);
    fs::create_directories(out);
    detail::write_file(out / "scenario.json", s.raw);
    if (command == "exact") {
      cmd_exact(s, out);
    } else if (command == "simulate") {
      cmd_simulate(s, out);
    } else if (command == "compare") {
      cmd_compare(s, out, o.rescale_alpha);
    } else if (command == "blowup") {
      cmd_blowup(s, out);
    } else if (command == "grh") {
      cmd_grh(s, out);
    } else {
      throw ConfigError("unknown command '" + command + "'");
    }
    return kOk;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const NumericalAbort& e) {
    err << "numerical abort: " << e.what() << '\n';
    return kNumericalAbort;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const fs::filesystem_error& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
}

/// Batch file: {"jobs": [{"command": "compare", "config": "delta.json"}, ...]}.
/// Relative config paths resolve against the batch file; each job writes to
/// <out>/<scenario name>_<command>.  Jobs run concurrently; the exit code is the
/// largest of the job codes.
inline int run_batch(const fs::path& batch_path, const fs::path& out, const Overrides& o,
                     std::ostream& err) {
  struct Job {
    std::string command;
    Scenario scenario;
  };
  std::vector<Job> jobs;
  try {
    std::ifstream f(batch_path, std::ios::binary);
    if (!f) throw ConfigError("cannot read batch file " + batch_path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    json j;
    try {
      j = json::parse(ss.str());
    } catch (const json::parse_error& e) {
      throw ConfigError(std::string("batch file is not valid JSON: ") + e.what());
    }
    if (!j.contains("jobs") || !j.at("jobs").is_array() || j.at("jobs").empty()) {
      throw ConfigError("batch file needs a nonempty 'jobs' array");
    }
    std::vector<std::string> names;
    for (const auto& job : j.at("jobs")) {
      if (!job.contains("command") || !job.contains("config")) {
        throw ConfigError("each batch job needs 'command' and 'config'");
      }
      fs::path cfg = job.at("config").get<std::string>();
      if (cfg.is_relative()) cfg = batch_path.parent_path() / cfg;
      Scenario sc = load_scenario(cfg);
      const std::string cmd = job.at("command").get<std::string>();
      if (cmd == "batch") throw ConfigError("batch jobs cannot nest");
      const std::string dir = sc.name + "_" + cmd;
      if (std::find(names.begin(), names.end(), dir) != names.end()) {
        throw ConfigError("duplicate batch output directory " + dir);
      }
      names.push_back(dir);
      jobs.push_back({cmd, std::move(sc)});
    }
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  std::vector<std::future<std::pair<int, std::string>>> futures;
  for (const auto& job : jobs) {
    futures.push_back(std::async(std::launch::async, [&job, &out, &o] {
      std::ostringstream e;
      const int code = run_scenario(job.command, job.scenario,
                                    out / (job.scenario.name + "_" + job.command), o, e);
      return std::pair{code, e.str()};
    }));
  }
  int worst = kOk;
  for (auto& fut : futures) {
    const auto [code, msg] = fut.get();
    err << msg;
    worst = std::max(worst, code);
  }
  return worst;
}

inline int run(int argc, const char* const* argv, std::ostream& err = std::cerr) {
  CLI::App app{"Exact and numerical Riemann solutions of the Eulerian droplet model"};
  app.require_subcommand(1);
  std::string config, out = "out";
  Overrides o;
  double fixed_dt = 0.0;
  int cells = 0;
  const char* names[] = {"exact", "simulate", "compare", "blowup", "grh", "batch"};
  const char* help[] = {"closed-form fields and wave report",
                        "finite-volume run to each snapshot",
                        "finite-volume vs exact: error CSV and SVG overlays",
                        "blowup time of a smooth profile",
                        "RK4 integration of the point-mass ODEs",
                        "run several scenario jobs concurrently"};
  std::vector<CLI::App*> subs;
  for (int k = 0; k < 6; ++k) {
    CLI::App* sub = app.add_subcommand(names[k], help[k]);
    sub->add_option("--config", config, "scenario (or batch) JSON file")->required();
    sub->add_option("--out", out, "output directory");
    sub->add_flag("--rescale-alpha", o.rescale_alpha, "plot 100 alpha");
    sub->add_option("--fixed-dt", fixed_dt, "fixed time step");
    sub->add_option("--cells", cells, "number of cells");
    subs.push_back(sub);
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kConfigError;
  }
  std::string command;
  for (int k = 0; k < 6; ++k) {
    if (subs[static_cast<size_t>(k)]->parsed()) command = names[k];
  }
  for (CLI::App* sub : subs) {
    if (!sub->parsed()) continue;
    if (sub->count("--fixed-dt")) o.fixed_dt = fixed_dt;
    if (sub->count("--cells")) o.cells = cells;
  }
  if (command == "batch") return run_batch(config, out, o, err);
  Scenario s;
  try {
    s = load_scenario(config);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  return run_scenario(command, s, out, o, err);
}

}  // namespace droplet::cli

#endif  // DROPLET_CLI_HPP_
