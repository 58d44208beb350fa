#include "epsolve/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "epsolve/errors.hpp"

namespace epsolve {

namespace {

constexpr int kWidth = 720;
constexpr int kHeight = 540;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#0000cc", "#cc0000", "#008800", "#00aaaa",
                          "#aa00aa", "#888800"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

void write_log_plot_svg(const std::string& path, const std::string& title,
                        const std::vector<PlotSeries>& series) {
  std::size_t max_k = 1;
  double lo = 0.0, hi = 0.0;
  bool any = false;
  for (const PlotSeries& s : series) {
    max_k = std::max(max_k, s.y.size());
    for (double v : s.y) {
      if (v <= 0.0 || !std::isfinite(v)) continue;
      const double l = std::log10(v);
      if (!any) {
        lo = hi = l;
        any = true;
      } else {
        lo = std::min(lo, l);
        hi = std::max(hi, l);
      }
    }
  }
  if (!any) {
    lo = -1.0;
    hi = 1.0;
  }
  double dec_lo = std::floor(lo);
  double dec_hi = std::ceil(hi);
  if (dec_hi <= dec_lo) dec_hi = dec_lo + 1.0;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto x_of = [&](double k) {
    return kMarginLeft + plot_w * (k - 1.0) / std::max<double>(1.0, max_k - 1.0);
  };
  auto y_of = [&](double logv) {
    return kMarginTop + plot_h * (dec_hi - logv) / (dec_hi - dec_lo);
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open output file: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight
      << "\">\n";
  out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << title << "</text>\n";

  // y grid: one line per decade, thinned to at most ~12 labels
  const int decades = static_cast<int>(dec_hi - dec_lo);
  const int step = std::max(1, (decades + 11) / 12);
  for (int d = 0; d <= decades; d += step) {
    const double logv = dec_lo + d;
    const double y = y_of(logv);
    out << "<line x1=\"" << kMarginLeft << "\" y1=\"" << fmt(y) << "\" x2=\""
        << kWidth - kMarginRight << "\" y2=\"" << fmt(y)
        << "\" stroke=\"#dddddd\"/>\n";
    out << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">1e"
        << static_cast<int>(logv) << "</text>\n";
  }
  // x ticks at ~8 positions
  const std::size_t xticks = std::min<std::size_t>(8, max_k);
  for (std::size_t t = 0; t < xticks; ++t) {
    const double k = 1.0 + static_cast<double>(t) * (max_k - 1.0) /
                               std::max<std::size_t>(1, xticks - 1);
    const double x = x_of(k);
    out << "<line x1=\"" << fmt(x) << "\" y1=\"" << kHeight - kMarginBottom
        << "\" x2=\"" << fmt(x) << "\" y2=\"" << kHeight - kMarginBottom + 5
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << fmt(x) << "\" y=\"" << kHeight - kMarginBottom + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << static_cast<long>(k) << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << "iteration</text>\n";
  out << "<rect x=\"" << kMarginLeft << "\" y=\"" << kMarginTop << "\" width=\""
      << fmt(plot_w) << "\" height=\"" << fmt(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const PlotSeries& s = series[si];
    const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" "
        << "points=\"";
    bool first = true;
    for (std::size_t i = 0; i < s.y.size(); ++i) {
      const double v = s.y[i];
      if (v <= 0.0 || !std::isfinite(v)) continue;
      if (!first) out << ' ';
      out << fmt(x_of(static_cast<double>(i + 1))) << ',' << fmt(y_of(std::log10(v)));
      first = false;
    }
    out << "\"/>\n";
    const double ly = kMarginTop + 16.0 + 16.0 * static_cast<double>(si);
    out << "<line x1=\"" << kMarginLeft + 10 << "\" y1=\"" << fmt(ly - 4) << "\" x2=\""
        << kMarginLeft + 34 << "\" y2=\"" << fmt(ly - 4) << "\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << kMarginLeft + 40 << "\" y=\"" << fmt(ly)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw io_error("write failure on " + path);
}

}  // namespace epsolve
