#include "export.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace djcm::tools {

namespace {

const char* axis_name(Axis axis) { return axis == Axis::q ? "q" : "p"; }

const char* kind_name(CavityKind kind) {
  switch (kind) {
    case CavityKind::coherent: return "coherent";
    case CavityKind::even_cat: return "even";
    case CavityKind::odd_cat: return "odd";
    case CavityKind::thermal: return "thermal";
  }
  return "coherent";
}

json complex_json(complex z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

}  // namespace

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string inversion_csv(const TimeSeries& series) {
  std::string out = "kappa_eff_t,inversion\n";
  double keff = series.meta.params.kappa_eff;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    out += fmt17(series.times[i] * keff);
    out += ',';
    out += fmt17(series.values[i]);
    out += '\n';
  }
  return out;
}

std::string surface_csv(const WignerSurface& surface) {
  std::string out = "q,p,W\n";
  const PhaseGrid& g = surface.grid;
  for (int iq = 0; iq < g.n_q; ++iq) {
    for (int ip = 0; ip < g.n_p; ++ip) {
      out += fmt17(g.q_at(iq));
      out += ',';
      out += fmt17(g.p_at(ip));
      out += ',';
      out += fmt17(surface.values[static_cast<std::size_t>(iq) * g.n_p + ip]);
      out += '\n';
    }
  }
  return out;
}

std::string marginal_csv(const MarginalCurve& curve) {
  std::string out = "axis_value,density\n";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    out += fmt17(curve.points[i]);
    out += ',';
    out += fmt17(curve.values[i]);
    out += '\n';
  }
  return out;
}

std::string chi_csv(const ChiSurface& surface) {
  std::string out = "xi_re,xi_im,chi_re,chi_im\n";
  const PhaseGrid& g = surface.grid;
  for (int iq = 0; iq < g.n_q; ++iq) {
    for (int ip = 0; ip < g.n_p; ++ip) {
      const complex& v =
          surface.values[static_cast<std::size_t>(iq) * g.n_p + ip];
      out += fmt17(g.q_at(iq));
      out += ',';
      out += fmt17(g.p_at(ip));
      out += ',';
      out += fmt17(v.real());
      out += ',';
      out += fmt17(v.imag());
      out += '\n';
    }
  }
  return out;
}

json meta_record(const RunRecord& record) {
  const ModelParams& p = record.params;
  json meta;
  meta["version"] = "1.0.0";
  meta["generator"] = "djcm";
  meta["params"] = json{{"kappa_a", p.kappa_a},
                        {"kappa_b", p.kappa_b},
                        {"kappa_eff", p.kappa_eff},
                        {"eps_a", p.eps_a},
                        {"eps_b", p.eps_b},
                        {"delta", p.delta},
                        {"delta_over_kappa_eff", p.delta / p.kappa_eff},
                        {"series_cap", p.series_cap}};
  meta["cavity"] = json{{"kind", kind_name(record.cavity.kind)},
                        {"alpha", complex_json(record.cavity.alpha)},
                        {"nbar", record.cavity.nbar}};
  meta["drive"] = json{{"beta", complex_json(record.drive.beta)}};
  return meta;
}

json inversion_meta(const TimeSeries& series) {
  json meta = meta_record(series.meta);
  meta["observable"] = "inversion";
  double keff = series.meta.params.kappa_eff;
  json times;
  times["count"] = series.times.size();
  if (!series.times.empty()) {
    times["kappa_eff_t_first"] = series.times.front() * keff;
    times["kappa_eff_t_last"] = series.times.back() * keff;
  }
  meta["time_grid"] = times;
  return meta;
}

json surface_meta(const WignerSurface& surface) {
  json meta = meta_record(surface.meta);
  meta["observable"] = "wigner";
  meta["kappa_eff_t"] = surface.t * surface.meta.params.kappa_eff;
  meta["grid"] = json{{"q_min", surface.grid.q_min},
                      {"q_max", surface.grid.q_max},
                      {"p_min", surface.grid.p_min},
                      {"p_max", surface.grid.p_max},
                      {"n_q", surface.grid.n_q},
                      {"n_p", surface.grid.n_p}};
  meta["ell"] = surface.ell_used;
  meta["stats"] = json{{"min_w", surface.min_value},
                       {"max_w", surface.max_value},
                       {"max_imag_residue", surface.max_imag_residue}};
  return meta;
}

json marginal_meta(const MarginalCurve& curve) {
  json meta = meta_record(curve.meta);
  meta["observable"] = "marginal";
  meta["axis"] = axis_name(curve.axis);
  meta["kappa_eff_t"] = curve.t * curve.meta.params.kappa_eff;
  meta["unit_normalized"] = curve.unit_normalized;
  return meta;
}

json chi_meta(const ChiSurface& surface) {
  json meta = meta_record(surface.meta);
  meta["observable"] = "chi";
  meta["kappa_eff_t"] = surface.t * surface.meta.params.kappa_eff;
  meta["grid"] = json{{"xi_re_min", surface.grid.q_min},
                      {"xi_re_max", surface.grid.q_max},
                      {"xi_im_min", surface.grid.p_min},
                      {"xi_im_max", surface.grid.p_max},
                      {"n_re", surface.grid.n_q},
                      {"n_im", surface.grid.n_p}};
  return meta;
}

std::string inversion_plot_script(const std::string& csv_name) {
  return "set datafile separator ','\n"
         "set xlabel 'kappa_eff t'\n"
         "set ylabel 'inversion'\n"
         "set yrange [-1.05:1.05]\n"
         "set grid\n"
         "plot '" + csv_name + "' skip 1 using 1:2 with lines notitle\n";
}

std::string surface_plot_script(const std::string& csv_name) {
  return "set datafile separator ','\n"
         "set xlabel 'q'\n"
         "set ylabel 'p'\n"
         "set view map\n"
         "set dgrid3d 61,61\n"
         "set pm3d interpolate 2,2\n"
         "splot '" + csv_name + "' skip 1 using 1:2:3 with pm3d notitle\n";
}

std::string marginal_plot_script(const std::string& csv_name) {
  return "set datafile separator ','\n"
         "set xlabel 'axis value'\n"
         "set ylabel 'density'\n"
         "set grid\n"
         "plot '" + csv_name + "' skip 1 using 1:2 with lines notitle\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace djcm::tools
