#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "medcascade/report.hpp"

namespace medcascade::report {
namespace {

struct Series {
  std::string name;
  std::string color;
  std::vector<std::pair<double, double>> points;  // already positive
};

constexpr double kWidth = 480, kHeight = 360, kLeft = 60, kRight = 20, kTop = 30, kBottom = 50;

std::string plot(const std::string& title, const std::string& x_label, const std::string& y_label,
                 const std::vector<Series>& series) {
  double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
  double y_lo = x_lo, y_hi = -x_lo;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      x_lo = std::min(x_lo, std::log10(x));
      x_hi = std::max(x_hi, std::log10(x));
      y_lo = std::min(y_lo, std::log10(y));
      y_hi = std::max(y_hi, std::log10(y));
    }
  }
  if (!std::isfinite(x_lo)) x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  x_lo = std::floor(x_lo), x_hi = std::max(std::ceil(x_hi), x_lo + 1);
  y_lo = std::floor(y_lo), y_hi = std::max(std::ceil(y_hi), y_lo + 1);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (std::log10(x) - x_lo) / (x_hi - x_lo) * pw; };
  auto sy = [&](double y) { return kTop + (1.0 - (std::log10(y) - y_lo) / (y_hi - y_lo)) * ph; };

  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{2}\" y=\"18\" font-family=\"sans-serif\" font-size=\"14\" text-anchor=\"middle\">{3}</text>\n",
      kWidth, kHeight, kWidth / 2, title);
  svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n",
                     kLeft, kTop, pw, ph);
  for (double e = x_lo; e <= x_hi; e += 1) {
    const double x = kLeft + (e - x_lo) / (x_hi - x_lo) * pw;
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"10\" "
        "text-anchor=\"middle\">1e{}</text>\n",
        x, kTop + ph + 14, static_cast<int>(e));
  }
  for (double e = y_lo; e <= y_hi; e += 1) {
    const double y = kTop + (1.0 - (e - y_lo) / (y_hi - y_lo)) * ph;
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"10\" "
        "text-anchor=\"end\">1e{}</text>\n",
        kLeft - 4, y + 3, static_cast<int>(e));
  }
  svg += fmt::format(
      "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n",
      kLeft + pw / 2, kHeight - 12, x_label);
  svg += fmt::format(
      "<text x=\"14\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 14 {:.2f})\">{}</text>\n",
      kTop + ph / 2, kTop + ph / 2, y_label);

  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& s = series[i];
    if (!s.points.empty()) {
      std::string path;
      for (auto [x, y] : s.points) path += fmt::format("{}{:.2f},{:.2f}", path.empty() ? "" : " ", sx(x), sy(y));
      svg += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", s.color, path);
    }
    svg += fmt::format(
        "<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\" fill=\"{}\">{}</text>\n",
        kLeft + pw - 80, kTop + 16 + 14.0 * static_cast<double>(i), s.color, s.name);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

std::string ccdf_svg(const cascade::SizeDistribution* biased, const cascade::SizeDistribution* unbiased) {
  std::vector<Series> series;
  auto add = [&](const cascade::SizeDistribution* d, const char* name, const char* color) {
    Series s{name, color, {}};
    if (d) {
      for (const auto& p : d->ccdf) s.points.emplace_back(std::max<double>(1, static_cast<double>(p.size)), p.ccdf);
    }
    series.push_back(std::move(s));
  };
  add(biased, "biased", "#c0392b");
  add(unbiased, "unbiased", "#2c3e9b");
  return plot("Cascade size CCDF", "unique users", "P(size >= s)", series);
}

std::string velocity_svg(const std::vector<cascade::VelocityPoint>& biased,
                         const std::vector<cascade::VelocityPoint>& unbiased) {
  auto to_series = [](const std::vector<cascade::VelocityPoint>& curve, const char* name, const char* color) {
    Series s{name, color, {}};
    for (const auto& p : curve) s.points.emplace_back(static_cast<double>(p.k), std::max(p.median_minutes, 1e-3));
    return s;
  };
  return plot("Cascade velocity", "retweets k", "median minutes",
              {to_series(biased, "biased", "#c0392b"), to_series(unbiased, "unbiased", "#2c3e9b")});
}

std::string authorship_svg(const cascade::Authorship& authorship) {
  Series s{"users", "#27613b", {}};
  for (const auto& [cascades, users] : authorship.histogram) {
    s.points.emplace_back(static_cast<double>(cascades), static_cast<double>(users));
  }
  return plot("Cascades per user", "cascades authored", "users", {s});
}

}  // namespace medcascade::report
