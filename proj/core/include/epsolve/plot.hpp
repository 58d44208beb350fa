#ifndef EPSOLVE_PLOT_HPP
#define EPSOLVE_PLOT_HPP

#include <string>
#include <vector>

namespace epsolve {

struct PlotSeries {
  std::string label;
  std::vector<double> y;  // one value per iteration, x is 1..y.size()
};

/// Static SVG line chart with a log10 y axis (nonpositive samples are
/// skipped). Output is deterministic: no timestamps, fixed palette.
void write_log_plot_svg(const std::string& path, const std::string& title,
                        const std::vector<PlotSeries>& series);

}  // namespace epsolve

#endif  // EPSOLVE_PLOT_HPP
