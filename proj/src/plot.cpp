#include "tsflow/engine.hpp"
#include "tsflow/error.hpp"

#include "fsutil.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace tsflow {

namespace {

using nlohmann::json;

constexpr double kWidth = 640.0;
constexpr double kPanelHeight = 180.0;
constexpr double kLeft = 56.0;
constexpr double kRight = 16.0;
constexpr double kTop = 28.0;
constexpr double kBottom = 24.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

struct Panel {
  std::string title;
  std::vector<double> x;
  std::vector<double> y; // NaN entries break the line
  bool stems = false;
  std::optional<double> band; // +/- reference lines for stem charts
};

void draw_panel(std::ostringstream &svg, const Panel &p, double top) {
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kPanelHeight - kTop - kBottom;
  double ymin = 0.0, ymax = 0.0;
  bool any = false;
  for (double v : p.y) {
    if (std::isnan(v)) continue;
    ymin = any ? std::min(ymin, v) : v;
    ymax = any ? std::max(ymax, v) : v;
    any = true;
  }
  if (p.stems) {
    ymin = std::min(ymin, 0.0);
    ymax = std::max(ymax, 0.0);
  }
  if (p.band) {
    ymin = std::min(ymin, -*p.band);
    ymax = std::max(ymax, *p.band);
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  const double xmin = p.x.empty() ? 0.0 : p.x.front();
  const double xmax = p.x.empty() ? 1.0 : std::max(p.x.back(), xmin + 1.0);
  auto sx = [&](double v) { return kLeft + (v - xmin) / (xmax - xmin) * plot_w; };
  auto sy = [&](double v) { return top + kTop + (ymax - v) / (ymax - ymin) * plot_h; };

  svg << "<g>\n";
  svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"" << num(top + 18) << "\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"13\">" << p.title << "</text>\n";
  // Axes
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(top + kTop) << "\" x2=\"" << num(kLeft)
      << "\" y2=\"" << num(top + kTop + plot_h) << "\" stroke=\"#333\"/>\n";
  svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(top + kTop + plot_h) << "\" x2=\""
      << num(kLeft + plot_w) << "\" y2=\"" << num(top + kTop + plot_h) << "\" stroke=\"#333\"/>\n";
  for (double tick : {ymin, 0.5 * (ymin + ymax), ymax}) {
    svg << "<text x=\"" << num(kLeft - 4) << "\" y=\"" << num(sy(tick) + 4) << "\" text-anchor=\"end\" "
        << "font-family=\"sans-serif\" font-size=\"10\">" << label(tick) << "</text>\n";
  }
  for (double tick : {xmin, xmax}) {
    svg << "<text x=\"" << num(sx(tick)) << "\" y=\"" << num(top + kTop + plot_h + 14)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << label(tick)
        << "</text>\n";
  }

  if (p.stems) {
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(kLeft + plot_w)
        << "\" y2=\"" << num(sy(0)) << "\" stroke=\"#999\"/>\n";
    if (p.band) {
      for (double b : {*p.band, -*p.band}) {
        svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(sy(b)) << "\" x2=\"" << num(kLeft + plot_w)
            << "\" y2=\"" << num(sy(b)) << "\" stroke=\"#1f77b4\" stroke-dasharray=\"4 3\"/>\n";
      }
    }
    for (std::size_t i = 0; i < p.y.size(); ++i) {
      svg << "<line class=\"stem\" x1=\"" << num(sx(p.x[i])) << "\" y1=\"" << num(sy(0)) << "\" x2=\""
          << num(sx(p.x[i])) << "\" y2=\"" << num(sy(p.y[i])) << "\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    }
  } else {
    std::string points;
    auto flush = [&] {
      if (!points.empty()) {
        svg << "<polyline fill=\"none\" stroke=\"#1f77b4\" points=\"" << points << "\"/>\n";
        points.clear();
      }
    };
    for (std::size_t i = 0; i < p.y.size(); ++i) {
      if (std::isnan(p.y[i])) {
        flush();
        continue;
      }
      if (!points.empty()) points += ' ';
      points += num(sx(p.x[i])) + "," + num(sy(p.y[i]));
    }
    flush();
  }
  svg << "</g>\n";
}

std::string render_svg(const std::string &title, const std::vector<Panel> &panels) {
  std::ostringstream svg;
  const double height = kPanelHeight * static_cast<double>(panels.size());
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(kWidth) << " " << num(height) << "\">\n";
  svg << "<title>" << title << "</title>\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t i = 0; i < panels.size(); ++i) {
    draw_panel(svg, panels[i], kPanelHeight * static_cast<double>(i));
  }
  svg << "</svg>\n";
  return svg.str();
}

std::vector<double> indices(std::size_t n, std::size_t first = 0) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(first + i);
  return x;
}

json series_json(const TimeSeries &ts) {
  json j = {{"values", ts.data()}};
  if (ts.timestamps()) j["timestamps"] = *ts.timestamps();
  return j;
}

void require(bool ok, const std::string &kind, const char *expected) {
  if (!ok) {
    throw Error(Errc::TypeMismatch, kind + " needs " + expected + " as its source");
  }
}

} // namespace

PlotArtifact render_plot(const std::string &kind, const PlotSource &source,
                         const std::filesystem::path &run_dir, const std::string &stem) {
  std::vector<Panel> panels;
  json data = {{"plot", kind}};

  if (kind == "tswf:PlotRegular") {
    const auto *ts = std::get_if<TimeSeries>(&source);
    require(ts != nullptr, kind, "a series");
    panels.push_back({kind, indices(ts->size()), ts->data(), false, std::nullopt});
    data["type"] = "line";
    data["x"] = panels.back().x;
    data["y"] = ts->data();
    if (ts->timestamps()) data["timestamps"] = *ts->timestamps();
  } else if (kind == "tswf:PlotACF") {
    const auto *r = std::get_if<AcfResult>(&source);
    require(r != nullptr, kind, "an ACF result");
    panels.push_back({kind, indices(r->rho.size()), r->rho, true, r->ci_halfwidth});
    data["type"] = "stem";
    data["lags"] = panels.back().x;
    data["values"] = r->rho;
    data["ci_halfwidth"] = r->ci_halfwidth;
  } else if (kind == "tswf:PlotPACF") {
    const auto *r = std::get_if<PacfResult>(&source);
    require(r != nullptr, kind, "a PACF result");
    panels.push_back({kind, indices(r->phi_kk.size(), 1), r->phi_kk, true, r->ci_halfwidth});
    data["type"] = "stem";
    data["lags"] = panels.back().x;
    data["values"] = r->phi_kk;
    data["ci_halfwidth"] = r->ci_halfwidth;
  } else if (kind == "tswf:PlotSTL") {
    const auto *d = std::get_if<Decomposition>(&source);
    require(d != nullptr, kind, "a decomposition");
    const std::size_t n = d->trend.size();
    std::vector<double> observed(n);
    for (std::size_t i = 0; i < n; ++i) {
      observed[i] = std::isnan(d->trend[i]) ? std::numeric_limits<double>::quiet_NaN()
                                            : d->trend[i] + d->seasonal[i] + d->remainder[i];
    }
    const auto x = indices(n);
    panels.push_back({kind + " trend", x, d->trend.data(), false, std::nullopt});
    panels.push_back({kind + " seasonal", x, d->seasonal.data(), false, std::nullopt});
    panels.push_back({kind + " remainder", x, d->remainder.data(), false, std::nullopt});
    data["type"] = "decomposition";
    data["x"] = x;
    data["trend"] = series_json(d->trend)["values"];
    data["seasonal"] = d->seasonal.data();
    data["remainder"] = series_json(d->remainder)["values"];
    data["period"] = d->period;
    data["seasonal_strength"] = d->seasonal_strength;
  } else {
    throw Error(Errc::TypeMismatch, kind + " is not a plot term");
  }

  PlotArtifact art;
  art.plot = kind;
  art.svg_path = "plots/" + stem + ".svg";
  art.data_path = "plots/" + stem + ".json";
  if (!run_dir.empty()) {
    detail::write_file_atomic(run_dir / art.svg_path, render_svg(kind, panels));
    detail::write_file_atomic(run_dir / art.data_path, data.dump(2) + "\n");
  }
  return art;
}

} // namespace tsflow
