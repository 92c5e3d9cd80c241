// SPDX-License-Identifier: Apache-2.0

#include "stormlens/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "stormlens/errors.hpp"

namespace stormlens::svg {

namespace {

constexpr double kWidth = 720, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 50, kBottom = 70;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

double max_value(const std::vector<Series>& series) {
  double m = 0.0;
  for (const auto& s : series)
    for (double v : s.values) m = std::max(m, v);
  return m > 0.0 ? m : 1.0;
}

std::ofstream open(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write chart file: " + path.string());
  return out;
}

void header(std::ofstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"16\">" << escape_xml(title) << "</text>\n";
}

void axes(std::ofstream& out, double vmax) {
  const double x0 = kLeft, y0 = kHeight - kBottom, y1 = kTop;
  out << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << kWidth - kRight << "\" y2=\""
      << y0 << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << x0 << "\" y1=\"" << y0 << "\" x2=\"" << x0 << "\" y2=\"" << y1
      << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 4; ++tick) {
    const double v = vmax * tick / 4.0;
    const double y = y0 - (y0 - y1) * tick / 4.0;
    out << "<text x=\"" << x0 - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << fmt(v)
        << "</text>\n";
  }
}

}  // namespace

void write_bar_chart(const std::filesystem::path& path, const std::string& title,
                     const std::vector<std::string>& categories, const std::vector<Series>& series) {
  auto out = open(path);
  const double vmax = max_value(series);
  header(out, title);
  axes(out, vmax);

  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  const double y0 = kHeight - kBottom;
  const std::size_t groups = categories.size();
  const double group_w = plot_w / static_cast<double>(std::max<std::size_t>(1, groups));
  const double bar_w = group_w * 0.8 / static_cast<double>(std::max<std::size_t>(1, series.size()));

  for (std::size_t g = 0; g < groups; ++g) {
    for (std::size_t s = 0; s < series.size(); ++s) {
      const double v = g < series[s].values.size() ? series[s].values[g] : 0.0;
      const double h = plot_h * v / vmax;
      const double x = kLeft + group_w * static_cast<double>(g) + group_w * 0.1 +
                       bar_w * static_cast<double>(s);
      out << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(y0 - h) << "\" width=\"" << fmt(bar_w)
          << "\" height=\"" << fmt(h) << "\" fill=\"" << series[s].color << "\"/>\n";
    }
    out << "<text x=\"" << fmt(kLeft + group_w * (static_cast<double>(g) + 0.5)) << "\" y=\""
        << y0 + 16 << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
        << escape_xml(categories[g]) << "</text>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double lx = kLeft + 10 + 150 * static_cast<double>(s);
    out << "<rect x=\"" << lx << "\" y=\"" << kTop - 16 << "\" width=\"12\" height=\"12\" fill=\""
        << series[s].color << "\"/><text x=\"" << lx + 16 << "\" y=\"" << kTop - 6
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(series[s].label)
        << "</text>\n";
  }
  out << "</svg>\n";
}

void write_line_chart(const std::filesystem::path& path, const std::string& title,
                      const std::vector<std::string>& x_labels, const std::vector<Series>& series) {
  auto out = open(path);
  const double vmax = max_value(series);
  header(out, title);
  axes(out, vmax);

  const double plot_w = kWidth - kLeft - kRight, plot_h = kHeight - kTop - kBottom;
  const double y0 = kHeight - kBottom;
  const std::size_t n = x_labels.size();

  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      const double x = kLeft + (n > 1 ? plot_w * static_cast<double>(i) / static_cast<double>(n - 1)
                                      : plot_w / 2);
      const double y = y0 - plot_h * s.values[i] / vmax;
      out << fmt(x) << ',' << fmt(y) << ' ';
    }
    out << "\"/>\n";
  }
  const std::size_t step = std::max<std::size_t>(1, n / 8);
  for (std::size_t i = 0; i < n; i += step) {
    const double x = kLeft + (n > 1 ? plot_w * static_cast<double>(i) / static_cast<double>(n - 1)
                                    : plot_w / 2);
    out << "<text x=\"" << fmt(x) << "\" y=\"" << y0 + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"9\">"
        << escape_xml(x_labels[i]) << "</text>\n";
  }
  for (std::size_t s = 0; s < series.size(); ++s) {
    const double lx = kLeft + 10 + 150 * static_cast<double>(s);
    out << "<rect x=\"" << lx << "\" y=\"" << kTop - 16 << "\" width=\"12\" height=\"12\" fill=\""
        << series[s].color << "\"/><text x=\"" << lx + 16 << "\" y=\"" << kTop - 6
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_xml(series[s].label)
        << "</text>\n";
  }
  out << "</svg>\n";
}

}  // namespace stormlens::svg
