#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "djcm/errors.hpp"
#include "djcm/inversion.hpp"
#include "djcm/marginals.hpp"
#include "djcm/oracle.hpp"
#include "djcm/parallel.hpp"
#include "djcm/wigner.hpp"
#include "export.hpp"
#include "presets.hpp"
#include "verify.hpp"

namespace {

using namespace djcm;
using tools::ChiSurface;

complex parse_complex(const std::string& text) {
  std::string s = text;
  s.erase(std::remove_if(s.begin(), s.end(),
                         [](unsigned char c) { return std::isspace(c); }),
          s.end());
  if (s.empty()) throw std::invalid_argument("empty complex value");

  auto to_double = [](const std::string& part) {
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    std::size_t pos = 0;
    double v = std::stod(part, &pos);
    if (pos != part.size()) {
      throw std::invalid_argument("bad number '" + part + "'");
    }
    return v;
  };

  if (s.back() != 'i') {
    return complex{to_double(s), 0.0};
  }
  s.pop_back();
  // Split real and imaginary at the last sign that is not an exponent sign.
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      return complex{to_double(s.substr(0, k)), to_double(s.substr(k))};
    }
  }
  return complex{0.0, to_double(s)};
}

struct Range {
  double start = 0;
  double stop = 0;
  int count = 0;
};

Range parse_range(const std::string& text) {
  Range r;
  std::size_t c1 = text.find(':');
  std::size_t c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw std::invalid_argument("range must be start:stop:count, got '" +
                                text + "'");
  }
  r.start = std::stod(text.substr(0, c1));
  r.stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  r.count = std::stoi(text.substr(c2 + 1));
  if (r.count < 1) throw std::invalid_argument("range count must be >= 1");
  if (r.count == 1 && r.stop != r.start) {
    throw std::invalid_argument("single-point range needs start == stop");
  }
  return r;
}

std::vector<double> range_values(const Range& r) {
  std::vector<double> out(r.count);
  for (int i = 0; i < r.count; ++i) {
    out[i] = r.count == 1 ? r.start
                          : r.start + (r.stop - r.start) * i / (r.count - 1);
  }
  return out;
}

PhaseGrid parse_grid(const std::string& text) {
  std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw std::invalid_argument(
        "grid must be qmin:qmax:nq,pmin:pmax:np, got '" + text + "'");
  }
  Range q = parse_range(text.substr(0, comma));
  Range p = parse_range(text.substr(comma + 1));
  PhaseGrid grid{q.start, q.stop, p.start, p.stop, q.count, p.count};
  grid.validate();
  return grid;
}

struct Options {
  std::string state = "coherent";
  std::string alpha = "1";
  std::string beta = "0";
  double nbar = 0.0;
  double delta_over_keff = 0.0;
  std::vector<double> eps;
  std::vector<double> kappa;
  double t = 0.0;  // kappa_eff * t
  std::string t_grid;
  std::string grid = "-10:4:61,-7:7:61";
  int ell = 0;
  std::string axis = "q";
  std::string points = "-8:8:321";
  std::string out;
  std::string format = "csv";
  bool normalized = false;
  bool plot = false;
};

void add_state_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--state", o.state,
                  "Cavity state: coherent, even, odd, or thermal")
      ->check(CLI::IsMember({"coherent", "even", "odd", "thermal"}));
  cmd->add_option("--alpha", o.alpha,
                  "Cavity amplitude, complex as re+imi (e.g. 1, 0.3-0.4i)");
  cmd->add_option("--beta", o.beta, "Drive amplitude, complex as re+imi");
  cmd->add_option("--nbar", o.nbar, "Thermal occupation (state=thermal)")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--delta-over-keff", o.delta_over_keff,
                  "Detuning in units of the effective coupling");
  // Callback-style options so each flag fills its slot of the pair without
  // disturbing the sibling; the NONNEGATIVE check rejects non-numeric and
  // negative text before the callback runs, so stod below cannot throw.
  cmd->add_option("--eps-a", [&o](const std::vector<std::string>& v) {
        o.eps.resize(2, -1.0);
        o.eps[0] = std::stod(v[0]);
        return true;
      }, "Mixing weight of the cavity mode (with --eps-b)")
      ->check(CLI::NonNegativeNumber)->type_name("FLOAT");
  cmd->add_option("--eps-b", [&o](const std::vector<std::string>& v) {
        o.eps.resize(2, -1.0);
        o.eps[1] = std::stod(v[0]);
        return true;
      }, "Mixing weight of the drive mode (with --eps-a)")
      ->check(CLI::NonNegativeNumber)->type_name("FLOAT");
  cmd->add_option("--kappa-a", [&o](const std::vector<std::string>& v) {
        o.kappa.resize(2, -1.0);
        o.kappa[0] = std::stod(v[0]);
        return true;
      }, "Atom-cavity coupling (with --kappa-b)")
      ->check(CLI::NonNegativeNumber)->type_name("FLOAT");
  cmd->add_option("--kappa-b", [&o](const std::vector<std::string>& v) {
        o.kappa.resize(2, -1.0);
        o.kappa[1] = std::stod(v[0]);
        return true;
      }, "Atom-drive coupling (with --kappa-a)")
      ->check(CLI::NonNegativeNumber)->type_name("FLOAT");
}

void add_output_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "Output base path (extension added)");
  cmd->add_option("--format", o.format, "Data file format")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_flag("--plot", o.plot, "Also write a gnuplot script");
}

ModelParams build_params(const Options& o) {
  if (!o.eps.empty() && !o.kappa.empty()) {
    throw std::invalid_argument("give either --eps-a/--eps-b or "
                                "--kappa-a/--kappa-b, not both");
  }
  if (!o.kappa.empty()) {
    if (o.kappa[0] < 0 || o.kappa[1] < 0) {
      throw std::invalid_argument("--kappa-a and --kappa-b go together");
    }
    double keff = std::hypot(o.kappa[0], o.kappa[1]);
    return ModelParams::from_couplings(o.kappa[0], o.kappa[1],
                                       o.delta_over_keff * keff);
  }
  double ea = 1.0, eb = 1.0;
  if (!o.eps.empty()) {
    if (o.eps[0] < 0 || o.eps[1] < 0) {
      throw std::invalid_argument("--eps-a and --eps-b go together");
    }
    ea = o.eps[0];
    eb = o.eps[1];
  }
  return ModelParams::from_mixing(ea, eb, o.delta_over_keff);
}

CavityState build_cavity(const Options& o) {
  complex alpha = parse_complex(o.alpha);
  if (o.state == "coherent") return CavityState::coherent(alpha);
  if (o.state == "even") return CavityState::even_cat(alpha);
  if (o.state == "odd") return CavityState::odd_cat(alpha);
  return CavityState::thermal(o.nbar);
}

std::string out_base(const Options& o, const std::string& fallback) {
  if (!o.out.empty()) return o.out;
  return fallback;
}

// Files are cross-referenced by bare name so a run is relocatable and two
// runs into different directories stay byte-identical.
std::string stem_of(const std::string& base) {
  std::size_t slash = base.find_last_of('/');
  return slash == std::string::npos ? base : base.substr(slash + 1);
}

void emit(const std::string& base, const std::string& format,
          const std::string& csv, const tools::json& meta,
          const std::string& plot_script) {
  std::string stem = stem_of(base);
  tools::json sidecar = meta;
  if (format == "csv") {
    sidecar["output"] = tools::json{{"format", "csv"},
                                    {"data_file", stem + ".csv"}};
    tools::write_text_file(base + ".csv", csv);
  } else {
    sidecar["output"] = tools::json{{"format", "json"},
                                    {"data_file", stem + ".json"}};
    // Re-encode the rows as JSON so the data file is self-contained.
    tools::json data;
    data["meta"] = sidecar;
    std::vector<std::string> columns;
    tools::json rows = tools::json::array();
    std::size_t pos = csv.find('\n');
    std::string header = csv.substr(0, pos);
    for (std::size_t start = 0; start <= header.size();) {
      std::size_t comma = header.find(',', start);
      if (comma == std::string::npos) comma = header.size();
      columns.push_back(header.substr(start, comma - start));
      start = comma + 1;
    }
    while (pos != std::string::npos && pos + 1 < csv.size()) {
      std::size_t end = csv.find('\n', pos + 1);
      std::string line = csv.substr(pos + 1, end - pos - 1);
      tools::json row = tools::json::array();
      for (std::size_t start = 0; start <= line.size();) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) comma = line.size();
        row.push_back(std::stod(line.substr(start, comma - start)));
        start = comma + 1;
      }
      rows.push_back(row);
      pos = end;
    }
    data["columns"] = columns;
    data["rows"] = rows;
    tools::write_text_file(base + ".json", data.dump(2) + "\n");
  }
  tools::write_text_file(base + ".meta.json", sidecar.dump(2) + "\n");
  if (!plot_script.empty()) {
    tools::write_text_file(base + ".gp", plot_script);
  }
}

int cmd_inversion(const Options& o) {
  ModelParams params = build_params(o);
  CavityState cavity = build_cavity(o);
  DriveState drive{parse_complex(o.beta)};
  Range grid = o.t_grid.empty() ? Range{0.0, 20.0, 201} : parse_range(o.t_grid);
  std::vector<double> times = range_values(grid);
  for (double& t : times) t /= params.kappa_eff;
  TimeSeries series = inversion_series(cavity, drive, params, times);
  std::string base = out_base(o, "inversion");
  emit(base, o.format, tools::inversion_csv(series),
       tools::inversion_meta(series),
       o.plot ? tools::inversion_plot_script(stem_of(base) + ".csv") : "");
  std::printf("wrote %s.%s (%zu points)\n", base.c_str(), o.format.c_str(),
              series.times.size());
  return 0;
}

int cmd_wigner(const Options& o) {
  ModelParams params = build_params(o);
  CavityState cavity = build_cavity(o);
  DriveState drive{parse_complex(o.beta)};
  PhaseGrid grid = parse_grid(o.grid);
  WignerSurface surface = wigner_surface(cavity, drive, params,
                                         o.t / params.kappa_eff, grid, o.ell);
  std::string base = out_base(o, "wigner");
  emit(base, o.format, tools::surface_csv(surface),
       tools::surface_meta(surface),
       o.plot ? tools::surface_plot_script(stem_of(base) + ".csv") : "");
  std::printf("wrote %s.%s (%dx%d, W in [%.6g, %.6g])\n", base.c_str(),
              o.format.c_str(), grid.n_q, grid.n_p, surface.min_value,
              surface.max_value);
  return 0;
}

int cmd_marginal(const Options& o) {
  ModelParams params = build_params(o);
  CavityState cavity = build_cavity(o);
  DriveState drive{parse_complex(o.beta)};
  Axis axis = o.axis == "p" ? Axis::p : Axis::q;
  double t = o.t / params.kappa_eff;

  MarginalCurve curve;
  if (cavity.kind == CavityKind::coherent) {
    curve = marginal_coherent(cavity.alpha, drive.beta, params, axis,
                              range_values(parse_range(o.points)), t);
  } else if (cavity.kind == CavityKind::thermal) {
    throw std::invalid_argument(
        "quadrature densities are not available for thermal cavities");
  } else {
    WignerSurface surface =
        wigner_surface(cavity, drive, params, t, parse_grid(o.grid), o.ell);
    curve = marginal_from_surface(surface, axis);
  }
  if (o.normalized) {
    for (double& v : curve.values) v /= 2.5066282746310002;
    curve.unit_normalized = true;
  }
  std::string base = out_base(o, "marginal");
  emit(base, o.format, tools::marginal_csv(curve), tools::marginal_meta(curve),
       o.plot ? tools::marginal_plot_script(stem_of(base) + ".csv") : "");
  std::printf("wrote %s.%s (%zu points)\n", base.c_str(), o.format.c_str(),
              curve.points.size());
  return 0;
}

int cmd_chi(const Options& o) {
  ModelParams params = build_params(o);
  CavityState cavity = build_cavity(o);
  if (cavity.kind != CavityKind::coherent) {
    throw std::invalid_argument(
        "the characteristic function is exposed for coherent cavities only");
  }
  DriveState drive{parse_complex(o.beta)};
  ChiSurface surface;
  surface.grid = parse_grid(o.grid);
  surface.meta = RunRecord{params, cavity, drive};
  surface.t = o.t / params.kappa_eff;
  int total = surface.grid.n_q * surface.grid.n_p;
  surface.values.assign(total, complex{0.0, 0.0});
  KernelArgs args = KernelArgs::physical(cavity.alpha, drive.beta);
  parallel_for(total, [&](int idx) {
    int ire = idx / surface.grid.n_p;
    int iim = idx % surface.grid.n_p;
    complex xi{surface.grid.q_at(ire), surface.grid.p_at(iim)};
    surface.values[idx] = char_kernel(args, params, xi, surface.t);
  });
  std::string base = out_base(o, "chi");
  emit(base, o.format, tools::chi_csv(surface), tools::chi_meta(surface), "");
  std::printf("wrote %s.%s (%dx%d)\n", base.c_str(), o.format.c_str(),
              surface.grid.n_q, surface.grid.n_p);
  return 0;
}

int cmd_preset(const std::string& name, const std::string& out_dir,
               bool plot) {
  if (name == "list") {
    for (const tools::Preset& p : tools::presets()) {
      std::printf("%-6s %-9s %-8s alpha=%g beta=%g delta=%g%s\n",
                  p.name.c_str(), p.command.c_str(),
                  p.cavity == CavityKind::even_cat
                      ? "even"
                      : (p.cavity == CavityKind::odd_cat ? "odd" : "coherent"),
                  p.alpha, p.beta, p.delta_over_keff,
                  p.oracle_feasible ? "" : " (series-only)");
    }
    return 0;
  }
  const tools::Preset* p = tools::find_preset(name);
  if (!p) {
    std::fprintf(stderr, "unknown preset '%s' (try 'preset list')\n",
                 name.c_str());
    return 1;
  }
  Options o;
  o.state = p->cavity == CavityKind::even_cat
                ? "even"
                : (p->cavity == CavityKind::odd_cat ? "odd" : "coherent");
  o.alpha = tools::fmt17(p->alpha);
  o.beta = tools::fmt17(p->beta);
  o.delta_over_keff = p->delta_over_keff;
  o.eps = {p->eps_a, p->eps_b};
  o.out = out_dir.empty() ? p->name : out_dir + "/" + p->name;
  o.plot = plot;
  if (p->command == "inversion") {
    o.t_grid = tools::fmt17(p->t_start) + ":" + tools::fmt17(p->t_stop) + ":" +
               std::to_string(p->t_count);
    return cmd_inversion(o);
  }
  o.t = p->t;
  o.ell = p->ell;
  o.grid = tools::fmt17(p->grid.q_min) + ":" + tools::fmt17(p->grid.q_max) +
           ":" + std::to_string(p->grid.n_q) + "," +
           tools::fmt17(p->grid.p_min) + ":" + tools::fmt17(p->grid.p_max) +
           ":" + std::to_string(p->grid.n_p);
  return cmd_wigner(o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Two-level atom coupled to a cavity mode and a quantized driving mode: "
      "inversion time series, phase-space quasiprobability surfaces, "
      "quadrature densities, and an independent truncated-basis verifier."};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI file "
                                 "(command-line flags win)");

  Options o;

  CLI::App* inv = app.add_subcommand(
      "inversion", "Population-difference time series for a cavity state");
  add_state_options(inv, o);
  inv->add_option("--t-grid", o.t_grid,
                  "Time grid start:stop:count in kappa_eff*t units "
                  "(default 0:20:201)");
  add_output_options(inv, o);

  CLI::App* wig = app.add_subcommand(
      "wigner", "Phase-space quasiprobability surface at one time");
  add_state_options(wig, o);
  wig->add_option("--t", o.t, "Evaluation time in kappa_eff*t units");
  wig->add_option("--grid", o.grid,
                  "Window qmin:qmax:nq,pmin:pmax:np (default "
                  "-10:4:61,-7:7:61)");
  wig->add_option("--ell", o.ell,
                  "Series order (0 = adaptive per point)")
      ->check(CLI::NonNegativeNumber);
  add_output_options(wig, o);

  CLI::App* mar = app.add_subcommand(
      "marginal", "Quadrature density along one axis");
  add_state_options(mar, o);
  mar->add_option("--t", o.t, "Evaluation time in kappa_eff*t units");
  mar->add_option("--axis", o.axis, "Quadrature axis")
      ->check(CLI::IsMember({"q", "p"}));
  mar->add_option("--points", o.points,
                  "Axis grid start:stop:count (coherent states; default "
                  "-8:8:321)");
  mar->add_option("--grid", o.grid,
                  "Surface window for superposition states (integrated "
                  "numerically)");
  mar->add_option("--ell", o.ell, "Series order for the surface route")
      ->check(CLI::NonNegativeNumber);
  mar->add_flag("--normalized-marginals", o.normalized,
                "Rescale so the curve integrates to 1 instead of sqrt(2*pi)");
  add_output_options(mar, o);

  CLI::App* chi = app.add_subcommand(
      "chi", "Displacement-operator expectation over a window of xi");
  add_state_options(chi, o);
  chi->add_option("--t", o.t, "Evaluation time in kappa_eff*t units");
  chi->add_option("--grid", o.grid,
                  "Window re_min:re_max:n,im_min:im_max:n for xi");
  add_output_options(chi, o);

  CLI::App* ver = app.add_subcommand(
      "verify", "Check the series results against the truncated-basis "
                "evolution; nonzero exit on failure");
  std::string verify_out;
  ver->add_option("--out", verify_out, "Write the JSON report here");

  CLI::App* pre = app.add_subcommand("preset",
                                     "Run a bundled named configuration");
  std::string preset_name;
  std::string preset_dir;
  bool preset_plot = false;
  pre->add_option("name", preset_name,
                  "Preset name (fig2a..fig6d) or 'list'")
      ->required();
  pre->add_option("--out-dir", preset_dir, "Directory for output files");
  pre->add_flag("--plot", preset_plot, "Also write gnuplot scripts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (inv->parsed()) return cmd_inversion(o);
    if (wig->parsed()) return cmd_wigner(o);
    if (mar->parsed()) return cmd_marginal(o);
    if (chi->parsed()) return cmd_chi(o);
    if (ver->parsed()) {
      return djcm::tools::run_verify(verify_out) == 0 ? 0 : 1;
    }
    if (pre->parsed()) return cmd_preset(preset_name, preset_dir, preset_plot);
  } catch (const djcm::series_cap_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const djcm::convergence_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
