#pragma once

// Minimal SVG chart emission for the sweep reports. Two chart styles: an
// NMAE-versus-sample-size line chart and a truth-versus-estimate overlay.

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace cliquedist::svg {

struct Series {
  std::string name;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
};

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

struct Frame {
  double width = 720, height = 480;
  double left = 70, right = 20, top = 40, bottom = 60;
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;

  double px(double x) const {
    return left + (x - x_min) / (x_max - x_min) * (width - left - right);
  }
  double py(double y) const {
    return height - bottom - (y - y_min) / (y_max - y_min) * (height - top - bottom);
  }
};

inline void open_chart(std::ostream& out, const Frame& f, const std::string& title,
                       const std::string& x_label, const std::string& y_label) {
  out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << f.width << "' height='"
      << f.height << "' viewBox='0 0 " << f.width << ' ' << f.height << "'>\n";
  out << "<rect width='100%' height='100%' fill='white'/>\n";
  out << "<text x='" << f.width / 2 << "' y='24' text-anchor='middle' "
      << "font-family='sans-serif' font-size='16'>" << title << "</text>\n";
  // axes
  out << "<line x1='" << f.left << "' y1='" << f.height - f.bottom << "' x2='"
      << f.width - f.right << "' y2='" << f.height - f.bottom
      << "' stroke='black'/>\n";
  out << "<line x1='" << f.left << "' y1='" << f.top << "' x2='" << f.left << "' y2='"
      << f.height - f.bottom << "' stroke='black'/>\n";
  out << "<text x='" << (f.left + f.width - f.right) / 2 << "' y='"
      << f.height - 16 << "' text-anchor='middle' font-family='sans-serif' "
      << "font-size='13'>" << x_label << "</text>\n";
  out << "<text x='18' y='" << (f.top + f.height - f.bottom) / 2
      << "' text-anchor='middle' font-family='sans-serif' font-size='13' "
      << "transform='rotate(-90 18 " << (f.top + f.height - f.bottom) / 2 << ")'>"
      << y_label << "</text>\n";
}

inline void y_ticks(std::ostream& out, const Frame& f, int count = 5) {
  for (int t = 0; t <= count; ++t) {
    const double v = f.y_min + (f.y_max - f.y_min) * t / count;
    const double y = f.py(v);
    out << "<line x1='" << f.left - 4 << "' y1='" << y << "' x2='" << f.left
        << "' y2='" << y << "' stroke='black'/>\n";
    out << "<line x1='" << f.left << "' y1='" << y << "' x2='" << f.width - f.right
        << "' y2='" << y << "' stroke='#dddddd'/>\n";
    std::ostringstream val;
    val.precision(3);
    val << v;
    out << "<text x='" << f.left - 8 << "' y='" << y + 4
        << "' text-anchor='end' font-family='sans-serif' font-size='11'>" << val.str()
        << "</text>\n";
  }
}

}  // namespace detail

// Line chart with categorical x positions labeled by `x_labels`.
inline void line_chart(std::ostream& out, const std::string& title,
                       const std::string& x_label, const std::string& y_label,
                       const std::vector<std::string>& x_labels,
                       const std::vector<Series>& series) {
  detail::Frame f;
  f.x_min = -0.25;
  f.x_max = static_cast<double>(x_labels.empty() ? 1 : x_labels.size() - 1) + 0.25;
  if (x_labels.size() == 1) f.x_max = 1.0;
  f.y_min = 0.0;
  f.y_max = 1e-9;
  for (const auto& s : series) {
    for (const double y : s.y) f.y_max = std::max(f.y_max, y);
  }
  f.y_max *= 1.1;

  detail::open_chart(out, f, title, x_label, y_label);
  detail::y_ticks(out, f);
  for (std::size_t i = 0; i < x_labels.size(); ++i) {
    const double x = f.px(static_cast<double>(i));
    out << "<line x1='" << x << "' y1='" << f.height - f.bottom << "' x2='" << x
        << "' y2='" << f.height - f.bottom + 4 << "' stroke='black'/>\n";
    out << "<text x='" << x << "' y='" << f.height - f.bottom + 18
        << "' text-anchor='middle' font-family='sans-serif' font-size='11'>"
        << x_labels[i] << "</text>\n";
  }
  double legend_y = f.top + 6;
  for (const auto& s : series) {
    std::ostringstream pts;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (i) pts << ' ';
      pts << f.px(s.x[i]) << ',' << f.py(s.y[i]);
    }
    out << "<polyline points='" << pts.str() << "' fill='none' stroke='" << s.color
        << "' stroke-width='2'/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << "<circle cx='" << f.px(s.x[i]) << "' cy='" << f.py(s.y[i])
          << "' r='3' fill='" << s.color << "'/>\n";
    }
    out << "<rect x='" << f.width - f.right - 150 << "' y='" << legend_y - 9
        << "' width='12' height='12' fill='" << s.color << "'/>\n";
    out << "<text x='" << f.width - f.right - 132 << "' y='" << legend_y + 2
        << "' font-family='sans-serif' font-size='12'>" << s.name << "</text>\n";
    legend_y += 18;
  }
  out << "</svg>\n";
}

// Truth bars with estimate dots on top, indexed by clique order.
inline void overlay_chart(std::ostream& out, const std::string& title,
                          const std::map<std::uint32_t, double>& truth,
                          const std::vector<Series>& estimates) {
  std::vector<std::uint32_t> orders;
  for (const auto& [o, v] : truth) {
    (void)v;
    orders.push_back(o);
  }
  for (const auto& s : estimates) {
    for (const double x : s.x) {
      const auto o = static_cast<std::uint32_t>(x);
      if (!truth.count(o)) orders.push_back(o);
    }
  }
  std::sort(orders.begin(), orders.end());
  orders.erase(std::unique(orders.begin(), orders.end()), orders.end());

  detail::Frame f;
  f.x_min = orders.empty() ? 0.0 : static_cast<double>(orders.front()) - 0.75;
  f.x_max = orders.empty() ? 1.0 : static_cast<double>(orders.back()) + 0.75;
  f.y_min = 0.0;
  f.y_max = 1e-9;
  for (const auto& [o, v] : truth) {
    (void)o;
    f.y_max = std::max(f.y_max, v);
  }
  for (const auto& s : estimates) {
    for (const double y : s.y) f.y_max = std::max(f.y_max, y);
  }
  f.y_max *= 1.1;

  detail::open_chart(out, f, title, "clique order", "count");
  detail::y_ticks(out, f);
  const double bar_w = std::min(24.0, (f.width - f.left - f.right) /
                                          std::max<std::size_t>(orders.size(), 1) * 0.6);
  for (const auto& [o, v] : truth) {
    const double x = f.px(static_cast<double>(o));
    out << "<rect x='" << x - bar_w / 2 << "' y='" << f.py(v) << "' width='" << bar_w
        << "' height='" << f.py(0) - f.py(v) << "' fill='#b0c4de'/>\n";
  }
  for (const auto o : orders) {
    const double x = f.px(static_cast<double>(o));
    out << "<text x='" << x << "' y='" << f.height - f.bottom + 18
        << "' text-anchor='middle' font-family='sans-serif' font-size='11'>" << o
        << "</text>\n";
  }
  double legend_y = f.top + 6;
  out << "<rect x='" << f.width - f.right - 150 << "' y='" << legend_y - 9
      << "' width='12' height='12' fill='#b0c4de'/>\n";
  out << "<text x='" << f.width - f.right - 132 << "' y='" << legend_y + 2
      << "' font-family='sans-serif' font-size='12'>truth</text>\n";
  legend_y += 18;
  for (const auto& s : estimates) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      out << "<circle cx='" << f.px(s.x[i]) << "' cy='" << f.py(s.y[i])
          << "' r='4' fill='" << s.color << "'/>\n";
    }
    out << "<rect x='" << f.width - f.right - 150 << "' y='" << legend_y - 9
        << "' width='12' height='12' fill='" << s.color << "'/>\n";
    out << "<text x='" << f.width - f.right - 132 << "' y='" << legend_y + 2
        << "' font-family='sans-serif' font-size='12'>" << s.name << "</text>\n";
    legend_y += 18;
  }
  out << "</svg>\n";
}

}  // namespace cliquedist::svg
