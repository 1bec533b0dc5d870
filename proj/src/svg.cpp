#include "gridcert/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

#include "gridcert/csv.hpp"
#include "gridcert/types.hpp"

namespace gridcert::svg {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 600.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 620.0;
constexpr double kTop = 50.0;
constexpr double kBottom = 530.0;

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string fixed(double v, int digits = 2) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  std::string s(buf, ptr);
  if (s == "-0.00" || s == "-0.0" || s == "-0") s.erase(0, 1);
  return s;
}

std::string escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_step(double range) {
  const double raw = range / 5.0;
  const double base = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0})
    if (m * base >= raw) return m * base;
  return 10.0 * base;
}

struct Axis {
  double lo = 0.0;
  double hi = 1.0;
  double step = 0.2;
};

Axis make_axis(double lo, double hi) {
  lo = std::min(lo, 0.0);
  hi = std::max(hi, 0.0);
  if (hi - lo <= 0.0) hi = lo + 1.0;
  Axis a;
  a.step = nice_step(hi - lo);
  a.lo = std::floor(lo / a.step) * a.step;
  a.hi = std::ceil(hi / a.step) * a.step;
  return a;
}

std::string tick_label(double v, double step) {
  const int digits = std::max(0, -static_cast<int>(std::floor(std::log10(step))));
  return fixed(v, digits);
}

}  // namespace

std::string render(const std::vector<Series>& series, const PlotSpec& spec) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (!std::isfinite(xmin)) throw Error("nothing to plot: every series is empty");

  const Axis ax = make_axis(xmin, xmax);
  const Axis ay = make_axis(ymin, ymax);
  auto px = [&](double x) { return kLeft + (x - ax.lo) / (ax.hi - ax.lo) * (kRight - kLeft); };
  auto py = [&](double y) { return kBottom - (y - ay.lo) / (ay.hi - ay.lo) * (kBottom - kTop); };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" width=\"800\" height=\"600\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + fixed(kWidth, 0) + "\" height=\"" + fixed(kHeight, 0) +
         "\" fill=\"white\"/>\n";
  out += "<text x=\"400\" y=\"30\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         escape(spec.title) + "</text>\n";

  out += "<g stroke=\"#dddddd\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n";
  const int nx = static_cast<int>(std::lround((ax.hi - ax.lo) / ax.step));
  for (int i = 0; i <= nx; ++i) {
    const double v = ax.lo + i * ax.step;
    const std::string x = fixed(px(v));
    out += "<line x1=\"" + x + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + x + "\" y2=\"" + fixed(kBottom) + "\"/>\n";
    out += "<text x=\"" + x + "\" y=\"" + fixed(kBottom + 18) +
           "\" stroke=\"none\" fill=\"black\" text-anchor=\"middle\">" + tick_label(v, ax.step) + "</text>\n";
  }
  const int ny = static_cast<int>(std::lround((ay.hi - ay.lo) / ay.step));
  for (int i = 0; i <= ny; ++i) {
    const double v = ay.lo + i * ay.step;
    const std::string y = fixed(py(v));
    out += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + y + "\" x2=\"" + fixed(kRight) + "\" y2=\"" + y + "\"/>\n";
    out += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(py(v) + 4) +
           "\" stroke=\"none\" fill=\"black\" text-anchor=\"end\">" + tick_label(v, ay.step) + "</text>\n";
  }
  out += "</g>\n";
  out += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(kRight - kLeft) +
         "\" height=\"" + fixed(kBottom - kTop) + "\" fill=\"none\" stroke=\"black\"/>\n";
  out += "<text x=\"" + fixed(0.5 * (kLeft + kRight)) +
         "\" y=\"570\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" +
         escape(spec.x_label) + "</text>\n";
  out += "<text x=\"20\" y=\"" + fixed(0.5 * (kTop + kBottom)) + "\" transform=\"rotate(-90 20 " +
         fixed(0.5 * (kTop + kBottom)) +
         ")\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" + escape(spec.y_label) +
         "</text>\n";

  std::size_t palette = 0;
  int legend_row = 0;
  for (const auto& s : series) {
    const std::string color =
        s.color.empty() ? kPalette[palette++ % (sizeof kPalette / sizeof kPalette[0])] : s.color;
    std::string pts;
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!pts.empty()) pts += ' ';
      pts += fixed(px(x)) + ',' + fixed(py(y));
    }
    if (pts.empty()) continue;
    out += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + fixed(s.stroke_width, 1) +
           "\" points=\"" + pts + "\"><title>" + escape(s.name) + "</title></polyline>\n";
    if (s.in_legend) {
      const double ly = kTop + 10 + 20.0 * legend_row++;
      out += "<line x1=\"640\" y1=\"" + fixed(ly) + "\" x2=\"670\" y2=\"" + fixed(ly) + "\" stroke=\"" + color +
             "\" stroke-width=\"" + fixed(s.stroke_width, 1) + "\"/>\n";
      out += "<text x=\"676\" y=\"" + fixed(ly + 4) + "\" font-family=\"sans-serif\" font-size=\"12\">" +
             escape(s.name) + "</text>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

std::string render_csv(std::string_view csv_text, PlotKind kind) {
  const csv::Table table = csv::parse(csv_text);
  std::vector<Series> series;

  switch (kind) {
    case PlotKind::boundary: {
      const auto ac = table.column("angle_rad");
      const auto tc = table.column("t_star");
      const auto mc = table.column("method");
      std::map<std::string, std::size_t> index;
      for (const auto& row : table.rows) {
        auto [it, fresh] = index.try_emplace(row[mc], series.size());
        if (fresh) series.push_back(Series{row[mc], {}, "", 2.0, true});
        const double a = csv::to_double(row[ac]);
        const double t = csv::to_double(row[tc]);
        series[it->second].points.emplace_back(t * std::cos(a), t * std::sin(a));
      }
      return render(series, {"Solvability boundary", "P (p.u.)", "Q (p.u.)"});
    }
    case PlotKind::sweep: {
      const auto lc = table.column("lambda_index");
      const auto ac = table.column("angle_rad");
      const auto tc = table.column("t_star");
      std::map<std::string, std::size_t> index;
      std::map<double, double> envelope;
      for (const auto& row : table.rows) {
        auto [it, fresh] = index.try_emplace(row[lc], series.size());
        if (fresh) series.push_back(Series{"lambda " + row[lc], {}, "#9a9a9a", 0.8, false});
        const double a = csv::to_double(row[ac]);
        const double t = csv::to_double(row[tc]);
        series[it->second].points.emplace_back(t * std::cos(a), t * std::sin(a));
        auto [e, inserted] = envelope.try_emplace(a, t);
        if (!inserted) e->second = std::max(e->second, t);
      }
      Series env{"union envelope", {}, "#d62728", 2.5, true};
      for (const auto& [a, t] : envelope) env.points.emplace_back(t * std::cos(a), t * std::sin(a));
      series.push_back(std::move(env));
      return render(series, {"Rescaled certificates", "P (p.u.)", "Q (p.u.)"});
    }
    case PlotKind::pv: {
      const auto qc = table.column("q");
      const auto pc = table.column("P");
      const auto vc = table.column("v_mag");
      std::map<std::string, std::size_t> index;
      for (const auto& row : table.rows) {
        auto [it, fresh] = index.try_emplace(row[qc], series.size());
        if (fresh) series.push_back(Series{"Q = " + row[qc], {}, "", 2.0, true});
        series[it->second].points.emplace_back(csv::to_double(row[pc]), csv::to_double(row[vc]));
      }
      return render(series, {"PV curves", "P (p.u.)", "|v| (p.u.)"});
    }
  }
  throw Error("unknown plot kind");
}

}  // namespace gridcert::svg
