#include "vfc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace vfc::svg {
namespace {

constexpr double kWidth = 720, kHeight = 480;
constexpr double kLeft = 70, kRight = 30, kTop = 46, kBottom = 56;
constexpr double kPlotW = kWidth - kLeft - kRight;
constexpr double kPlotH = kHeight - kTop - kBottom;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                          "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo, hi;
  double span() const { return hi - lo; }
};

Range nice_range(double lo, double hi) {
  if (!(lo < hi)) {
    const double pad = std::abs(lo) > 0 ? std::abs(lo) * 0.1 : 1.0;
    return {lo - pad, hi + pad};
  }
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

void open_svg(std::ostringstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << escape(title) << "</text>\n";
}

void axes(std::ostringstream& out, const std::string& x_label, const std::string& y_label,
          const Range& yr) {
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
      << "\" y2=\"" << kTop + kPlotH << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + kPlotH << "\" x2=\""
      << kLeft + kPlotW << "\" y2=\"" << kTop + kPlotH << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double frac = k / 4.0;
    const double y = kTop + kPlotH - frac * kPlotH;
    const double value = yr.lo + frac * yr.span();
    out << "<line x1=\"" << kLeft - 4 << "\" y1=\"" << fmt(y) << "\" x2=\"" << kLeft
        << "\" y2=\"" << fmt(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt(y + 4)
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
        << fmt(value) << "</text>\n";
  }
  out << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"" << kHeight - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
      << escape(x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << kTop + kPlotH / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << kTop + kPlotH / 2 << ")\">" << escape(y_label)
      << "</text>\n";
}

void legend(std::ostringstream& out, const std::vector<Series>& series) {
  double x = kLeft + 8;
  const double y = kTop + 8;
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % std::size(kPalette)];
    out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y) << "\" width=\"12\" height=\"12\" fill=\""
        << color << "\"/>\n";
    out << "<text x=\"" << fmt(x + 16) << "\" y=\"" << fmt(y + 10)
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape(series[s].name)
        << "</text>\n";
    x += 16.0 + 7.0 * static_cast<double>(series[s].name.size()) + 18.0;
  }
}

}  // namespace

std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  std::size_t longest = 1;
  for (const Series& s : series) {
    longest = std::max(longest, s.values.size());
    for (double v : s.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!std::isfinite(lo)) lo = 0, hi = 1;
  const Range yr = nice_range(lo, hi);

  std::ostringstream out;
  open_svg(out, title);
  axes(out, x_label, y_label, yr);

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& values = series[s].values;
    if (values.empty()) continue;
    out << "<polyline fill=\"none\" stroke=\"" << kPalette[s % std::size(kPalette)]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double fx = longest > 1 ? static_cast<double>(i) / (longest - 1) : 0.0;
      const double x = kLeft + fx * kPlotW;
      const double y = kTop + kPlotH - (values[i] - yr.lo) / yr.span() * kPlotH;
      if (i) out << ' ';
      out << fmt(x) << ',' << fmt(y);
    }
    out << "\"/>\n";
  }
  legend(out, series);
  out << "</svg>\n";
  return out.str();
}

std::string grouped_bar_chart(const std::string& title, const std::string& y_label,
                              const std::vector<std::string>& group_labels,
                              const std::vector<Series>& series) {
  double hi = 0.0;
  for (const Series& s : series) {
    for (double v : s.values) hi = std::max(hi, v);
  }
  const Range yr = nice_range(0.0, hi > 0 ? hi : 1.0);

  std::ostringstream out;
  open_svg(out, title);
  axes(out, "", y_label, yr);

  const std::size_t groups = group_labels.size();
  const double group_w = kPlotW / std::max<std::size_t>(groups, 1);
  const double bar_w = group_w * 0.8 / std::max<std::size_t>(series.size(), 1);

  for (std::size_t g = 0; g < groups; ++g) {
    const double gx = kLeft + g * group_w + group_w * 0.1;
    for (std::size_t s = 0; s < series.size(); ++s) {
      if (g >= series[s].values.size()) continue;
      const double v = series[s].values[g];
      const double h = (v - yr.lo) / yr.span() * kPlotH;
      out << "<rect x=\"" << fmt(gx + s * bar_w) << "\" y=\"" << fmt(kTop + kPlotH - h)
          << "\" width=\"" << fmt(bar_w * 0.92) << "\" height=\"" << fmt(h) << "\" fill=\""
          << kPalette[s % std::size(kPalette)] << "\"/>\n";
    }
    out << "<text x=\"" << fmt(gx + group_w * 0.4) << "\" y=\"" << kTop + kPlotH + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
        << escape(group_labels[g]) << "</text>\n";
  }
  legend(out, series);
  out << "</svg>\n";
  return out.str();
}

}  // namespace vfc::svg
