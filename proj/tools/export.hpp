#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "djcm/inversion.hpp"
#include "djcm/marginals.hpp"
#include "djcm/wigner.hpp"

namespace djcm::tools {

using json = nlohmann::ordered_json;

// chi evaluated over a rectangle in the complex xi plane; reuses PhaseGrid
// with q ~ Re(xi), p ~ Im(xi).
struct ChiSurface {
  PhaseGrid grid;
  std::vector<complex> values;  // row-major, index ire * n_im + iim
  RunRecord meta;
  double t = 0;
};

// Shortest representation that round-trips a double exactly.
std::string fmt17(double x);

// Data payloads. CSV is RFC-4180 style with LF line endings and a header
// row; JSON carries the same columns plus the metadata block.
std::string inversion_csv(const TimeSeries& series);
std::string surface_csv(const WignerSurface& surface);
std::string marginal_csv(const MarginalCurve& curve);
std::string chi_csv(const ChiSurface& surface);

json meta_record(const RunRecord& record);
json inversion_meta(const TimeSeries& series);
json surface_meta(const WignerSurface& surface);
json marginal_meta(const MarginalCurve& curve);
json chi_meta(const ChiSurface& surface);

// Gnuplot scripts that render the matching CSV.
std::string inversion_plot_script(const std::string& csv_name);
std::string surface_plot_script(const std::string& csv_name);
std::string marginal_plot_script(const std::string& csv_name);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace djcm::tools
