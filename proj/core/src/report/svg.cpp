#include "gmrf/report/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <sstream>

#include "gmrf/report/summary.hpp"

namespace gmrf::report {
namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 420;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 50;

const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

class Chart {
 public:
  Chart(std::string title, std::string x_label, std::string y_label)
      : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

  void add(Series s) { series_.push_back(std::move(s)); }
  void mark(double x, double y) { markers_.emplace_back(x, y); }

  std::string render() {
    fit();
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
        << title_ << "</text>\n";
    axes(svg);
    for (std::size_t k = 0; k < series_.size(); ++k) {
      const char* color = kColors[k % std::size(kColors)];
      svg << "<path class=\"series\" fill=\"none\" stroke-width=\"1.5\" stroke=\"" << color
          << "\" d=\"" << path_data(series_[k].points) << "\"/>\n";
      const double ly = kTop + 14 + 16 * static_cast<double>(k);
      svg << "<line x1=\"" << kWidth - 170 << "\" y1=\"" << ly - 4 << "\" x2=\""
          << kWidth - 150 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
          << "\" stroke-width=\"2\"/>\n"
          << "<text x=\"" << kWidth - 144 << "\" y=\"" << ly << "\">" << series_[k].label
          << "</text>\n";
    }
    for (const auto& [x, y] : markers_) {
      svg << "<circle class=\"event\" cx=\"" << coord(sx(x)) << "\" cy=\"" << coord(sy(y))
          << "\" r=\"5\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    }
    svg << "</svg>\n";
    return svg.str();
  }

 private:
  void fit() {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const Series& s : series_) {
      for (const auto& [x, y] : s.points) {
        if (!std::isfinite(x) || !std::isfinite(y)) continue;
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
    }
    if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (x1 - x0 <= 0) x0 -= 0.5, x1 += 0.5;
    if (y1 - y0 <= 0) y0 -= 0.5, y1 += 0.5;
    const double pad = 0.05 * (y1 - y0);
    x_min_ = x0, x_max_ = x1, y_min_ = y0 - pad, y_max_ = y1 + pad;
  }

  double sx(double x) const {
    return kLeft + (x - x_min_) / (x_max_ - x_min_) * (kWidth - kLeft - kRight);
  }
  double sy(double y) const {
    return kHeight - kBottom - (y - y_min_) / (y_max_ - y_min_) * (kHeight - kTop - kBottom);
  }

  std::string path_data(const std::vector<std::pair<double, double>>& points) const {
    std::string d;
    bool pen_down = false;
    for (const auto& [x, y] : points) {
      if (!std::isfinite(x) || !std::isfinite(y)) {
        pen_down = false;
        continue;
      }
      d += pen_down ? " L" : (d.empty() ? "M" : " M");
      d += coord(sx(x)) + ' ' + coord(sy(y));
      pen_down = true;
    }
    return d.empty() ? "M0 0" : d;
  }

  void axes(std::ostringstream& svg) const {
    const double bottom = kHeight - kBottom;
    const double right = kWidth - kRight;
    svg << "<g stroke=\"black\" stroke-width=\"1\">\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << bottom << "\" x2=\"" << right
        << "\" y2=\"" << bottom << "\"/>\n"
        << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft
        << "\" y2=\"" << bottom << "\"/>\n";
    if (y_min_ < 0 && y_max_ > 0) {
      svg << "<line x1=\"" << kLeft << "\" y1=\"" << coord(sy(0)) << "\" x2=\"" << right
          << "\" y2=\"" << coord(sy(0)) << "\" stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n";
    }
    svg << "</g>\n";
    for (int t = 0; t <= 4; ++t) {
      const double fx = x_min_ + (x_max_ - x_min_) * t / 4.0;
      const double fy = y_min_ + (y_max_ - y_min_) * t / 4.0;
      svg << "<text x=\"" << coord(sx(fx)) << "\" y=\"" << bottom + 16
          << "\" text-anchor=\"middle\">" << num(fx) << "</text>\n"
          << "<text x=\"" << kLeft - 6 << "\" y=\"" << coord(sy(fy) + 4)
          << "\" text-anchor=\"end\">" << num(fy) << "</text>\n";
    }
    svg << "<text x=\"" << (kLeft + right) / 2 << "\" y=\"" << kHeight - 12
        << "\" text-anchor=\"middle\">" << x_label_ << "</text>\n"
        << "<text transform=\"translate(16 " << (kTop + bottom) / 2
        << ") rotate(-90)\" text-anchor=\"middle\">" << y_label_ << "</text>\n";
  }

  std::string title_, x_label_, y_label_;
  std::vector<Series> series_;
  std::vector<std::pair<double, double>> markers_;
  double x_min_ = 0, x_max_ = 1, y_min_ = 0, y_max_ = 1;
};

template <typename F>
Series over_iterations(const std::vector<CycleRecord>& records, std::string label, F value) {
  Series s{std::move(label), {}};
  for (const CycleRecord& r : records) s.points.emplace_back(r.iteration, value(r));
  return s;
}

}  // namespace

std::vector<std::string> emit_plots(const std::vector<CycleRecord>& records,
                                    const std::vector<SignChangeEvent>& events,
                                    const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<std::string> paths;
  auto save = [&](const std::string& name, Chart& chart) {
    const std::string path = (std::filesystem::path(out_dir) / name).string();
    write_text(path, chart.render());
    paths.push_back(path);
  };

  Chart beta("Inverse temperature", "iteration", "beta");
  beta.add(over_iterations(records, "beta", [](const CycleRecord& r) { return r.beta; }));
  save("beta.svg", beta);

  Chart ent("Entropy", "iteration", "entropy");
  ent.add(over_iterations(records, "entropy", [](const CycleRecord& r) { return r.entropy; }));
  save("entropy.svg", ent);

  Chart tq("Second form components", "iteration", "value");
  tq.add(over_iterations(records, "T", [](const CycleRecord& r) { return r.forms.T; }));
  tq.add(over_iterations(records, "Q", [](const CycleRecord& r) { return r.forms.Q; }));
  save("second_form_tq.svg", tq);

  Chart k("Gaussian curvature", "iteration", "K");
  k.add(over_iterations(records, "K", [](const CycleRecord& r) { return r.gaussian_k; }));
  for (const SignChangeEvent& e : events) {
    const auto it = std::find_if(records.begin(), records.end(), [&](const CycleRecord& r) {
      return r.iteration == e.iteration;
    });
    k.mark(e.iteration, it == records.end() ? 0.0 : it->gaussian_k);
  }
  save("gaussian_curvature.svg", k);

  Chart h("Mean and principal curvatures", "iteration", "curvature");
  h.add(over_iterations(records, "H", [](const CycleRecord& r) { return r.mean_h; }));
  h.add(over_iterations(records, "k1", [](const CycleRecord& r) { return r.principal[0]; }));
  h.add(over_iterations(records, "k2", [](const CycleRecord& r) { return r.principal[1]; }));
  h.add(over_iterations(records, "k3", [](const CycleRecord& r) { return r.principal[2]; }));
  save("mean_principal.svg", h);

  for (const auto& [quantity, name, label] :
       {std::tuple{CurvatureQuantity::gaussian_k, "hysteresis_k.svg", "K"},
        std::tuple{CurvatureQuantity::mean_h, "hysteresis_h.svg", "H"}}) {
    const HysteresisPath loop = hysteresis_path(records, quantity);
    Chart chart(std::string("Entropy against ") + label, label, "entropy");
    chart.add({"heating", loop.heating});
    chart.add({"cooling", loop.cooling});
    save(name, chart);
  }
  return paths;
}

}  // namespace gmrf::report
