#include "cactus/export.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace cactus {

std::string format_order(OrientedCyclicOrder const& o) {
  std::ostringstream out;
  for (auto const& e : o.sequence()) out << '(' << e.point << ',' << (e.sign > 0 ? '+' : '-') << ')';
  return out.str();
}

std::string to_dot(GaussDiagram const& d) {
  std::ostringstream out;
  out << "digraph gauss {\n  node [shape=circle, fontsize=10];\n";
  for (std::size_t c = 0; c < d.circles.size(); ++c) {
    auto const& circle = d.circles[c];
    out << "  subgraph cluster_" << c << " {\n    label=\"circle " << c << "\";\n";
    if (circle.empty()) {
      out << "    loop" << c << " [shape=doublecircle, label=\"\"];\n";
    }
    for (std::size_t i = 0; i < circle.size(); ++i) {
      out << "    p" << circle[i] << " [label=\"" << circle[i] << "\"];\n";
    }
    for (std::size_t i = 0; i < circle.size(); ++i) {
      out << "    p" << circle[i] << " -> p" << circle[(i + 1) % circle.size()] << ";\n";
    }
    out << "  }\n";
  }
  for (auto const& [label, order] : d.orders) {
    out << "  s" << label << " [shape=star, label=\"" << label << "\", xlabel=\""
        << format_order(order) << "\"];\n";
    for (auto p : d.points_of(label)) {
      out << "  s" << label << " -> p" << p << " [dir=none, style=dashed];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string to_svg(GaussDiagram const& d) {
  constexpr double radius = 80.0;
  constexpr double gap = 40.0;
  constexpr double top = 40.0;
  auto const cell = 2 * radius + gap;
  auto const width = gap + cell * static_cast<double>(std::max<std::size_t>(1, d.circles.size()));
  auto const height = top + 2 * radius + gap + 20.0 * static_cast<double>(d.orders.size()) + gap;

  std::map<PointId, std::pair<double, double>> where;
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(1);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t c = 0; c < d.circles.size(); ++c) {
    auto const& circle = d.circles[c];
    double const cx = gap + radius + cell * static_cast<double>(c);
    double const cy = top + radius;
    out << "  <circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << radius
        << "\" fill=\"none\" stroke=\"black\"/>\n";
    // Orientation arrow at the top of the circle, counterclockwise.
    out << "  <path d=\"M " << cx + 6 << ' ' << cy - radius - 5 << " L " << cx - 4 << ' '
        << cy - radius << " L " << cx + 6 << ' ' << cy - radius + 5 << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (std::size_t i = 0; i < circle.size(); ++i) {
      double const angle = std::numbers::pi / 2 +
                           2 * std::numbers::pi * static_cast<double>(i + 1) /
                               static_cast<double>(circle.size() + 1);
      double const x = cx + radius * std::cos(angle);
      double const y = cy - radius * std::sin(angle);
      where[circle[i]] = {x, y};
      out << "  <circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"4\"/>\n";
      out << "  <text x=\"" << x + 1.2 * (x - cx) / radius * 10 << "\" y=\""
          << y + 1.2 * (y - cy) / radius * 10 + 4 << "\" text-anchor=\"middle\">" << circle[i]
          << "</text>\n";
    }
  }
  std::size_t row = 0;
  for (auto const& [label, order] : d.orders) {
    auto const pts = d.points_of(label);
    double sx = 0;
    double sy = 0;
    for (auto p : pts) {
      sx += where[p].first;
      sy += where[p].second;
    }
    sx /= static_cast<double>(pts.size());
    sy /= static_cast<double>(pts.size());
    for (auto p : pts) {
      out << "  <line x1=\"" << sx << "\" y1=\"" << sy << "\" x2=\"" << where[p].first
          << "\" y2=\"" << where[p].second << "\" stroke=\"steelblue\"/>\n";
    }
    out << "  <text x=\"" << sx << "\" y=\"" << sy - 4 << "\" fill=\"steelblue\">" << label
        << "</text>\n";
    double const ty = top + 2 * radius + gap + 20.0 * static_cast<double>(row++);
    out << "  <text x=\"" << gap << "\" y=\"" << ty << "\">" << label << ": "
        << format_order(order) << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace cactus
