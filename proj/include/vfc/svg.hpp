#pragma once

#include <string>
#include <vector>

namespace vfc::svg {

struct Series {
  std::string name;
  std::vector<double> values;
};

/// Multi-series line chart; x is the 1-based sample index. One polyline per
/// series with exactly values.size() points. Self-contained SVG text.
std::string line_chart(const std::string& title, const std::string& x_label,
                       const std::string& y_label, const std::vector<Series>& series);

/// Grouped bar chart: one group per label, one bar per series within a group.
std::string grouped_bar_chart(const std::string& title, const std::string& y_label,
                              const std::vector<std::string>& group_labels,
                              const std::vector<Series>& series);

}  // namespace vfc::svg
