#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "semrel/analysis.hpp"
#include "semrel/error.hpp"
#include "semrel/text.hpp"

namespace semrel {

namespace fs = std::filesystem;

namespace {

std::string num(double v) { return fmt::format("{:.10g}", v); }

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << contents;
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

std::string render_curve_svg(const gam::PartialEffect& curve, std::string_view title,
                             std::string_view x_label, std::string_view y_label) {
  constexpr double kWidth = 480, kHeight = 360;
  constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  double x_lo = 0, x_hi = 1, y_lo = -1, y_hi = 1;
  if (!curve.grid.empty()) {
    const auto [xmin, xmax] = std::minmax_element(curve.grid.begin(), curve.grid.end());
    const auto [ymin, ymax] = std::minmax_element(curve.values.begin(), curve.values.end());
    x_lo = *xmin;
    x_hi = *xmax;
    y_lo = *ymin;
    y_hi = *ymax;
  }
  if (!(x_hi > x_lo)) x_hi = x_lo + 1;
  if (!(y_hi > y_lo)) {
    y_lo -= 0.5;
    y_hi += 0.5;
  }
  const double pad = 0.05 * (y_hi - y_lo);
  y_lo -= pad;
  y_hi += pad;
  auto sx = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
  auto sy = [&](double y) { return kTop + (y_hi - y) / (y_hi - y_lo) * plot_h; };

  std::ostringstream svg;
  svg << fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" "
      "viewBox=\"0 0 {} {}\">\n",
      kWidth, kHeight, kWidth, kHeight);
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << fmt::format("<text x=\"{}\" y=\"24\" font-family=\"sans-serif\" font-size=\"14\" "
                     "text-anchor=\"middle\">{}</text>\n",
                     kWidth / 2, xml_escape(title));
  svg << fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" "
                     "stroke=\"black\"/>\n",
                     kLeft, kTop, plot_w, plot_h);
  if (y_lo < 0 && y_hi > 0) {
    svg << fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" "
                       "stroke=\"#999\" stroke-dasharray=\"4 3\"/>\n",
                       kLeft, sy(0), kLeft + plot_w, sy(0));
  }
  for (int t = 0; t <= 4; ++t) {
    const double xv = x_lo + (x_hi - x_lo) * t / 4;
    const double yv = y_lo + (y_hi - y_lo) * t / 4;
    svg << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" "
                       "font-size=\"10\" text-anchor=\"middle\">{:.3g}</text>\n",
                       sx(xv), kTop + plot_h + 14, xv);
    svg << fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" "
                       "font-size=\"10\" text-anchor=\"end\">{:.3g}</text>\n",
                       kLeft - 4, sy(yv) + 3, yv);
  }
  svg << fmt::format("<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" "
                     "text-anchor=\"middle\">{}</text>\n",
                     kLeft + plot_w / 2, kHeight - 12, xml_escape(x_label));
  svg << fmt::format("<text x=\"16\" y=\"{}\" font-family=\"sans-serif\" font-size=\"12\" "
                     "text-anchor=\"middle\" transform=\"rotate(-90 16 {})\">{}</text>\n",
                     kTop + plot_h / 2, kTop + plot_h / 2, xml_escape(y_label));
  svg << "<polyline fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < curve.grid.size(); ++i) {
    if (i > 0) svg << ' ';
    svg << fmt::format("{:.2f},{:.2f}", sx(curve.grid[i]), sy(curve.values[i]));
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

ReportPaths emit_report(const CorrelationMatrix& corr,
                        const std::vector<ComparisonResult>& comparisons,
                        const fs::path& out_dir,
                        const std::vector<std::pair<std::string, std::string>>& manifest) {
  if (comparisons.empty()) {
    throw Error(ErrorCode::InvalidArgument, "no comparisons to report");
  }
  std::error_code ec;
  fs::create_directories(out_dir / "partial_effects", ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + out_dir.string() + ": " + ec.message());

  ReportPaths paths;
  paths.corr_csv = out_dir / "corr.csv";
  paths.delta_aic_csv = out_dir / "delta_aic.csv";
  paths.comparisons_csv = out_dir / "comparisons.csv";
  paths.manifest = out_dir / "manifest.txt";

  {
    std::ostringstream csv;
    csv << "column";
    for (const auto& c : corr.columns) csv << ',' << text::csv_field(c);
    csv << '\n';
    for (std::size_t a = 0; a < corr.columns.size(); ++a) {
      csv << text::csv_field(corr.columns[a]);
      for (std::size_t b = 0; b < corr.columns.size(); ++b) {
        csv << ',' << num(corr.r(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
      }
      csv << '\n';
    }
    write_file(paths.corr_csv, csv.str());
  }

  {
    // Rows in order of first appearance; one column per response.
    std::vector<std::string> metrics;
    std::map<std::pair<std::string, std::string>, double> cells;
    for (const auto& c : comparisons) {
      if (std::find(metrics.begin(), metrics.end(), c.metric_name) == metrics.end()) {
        metrics.push_back(c.metric_name);
      }
      cells[{c.metric_name, c.response_name}] = c.delta_aic;
    }
    std::ostringstream csv;
    csv << "metric,log_first,log_gaze,log_total\n";
    for (const auto& m : metrics) {
      csv << text::csv_field(m);
      for (Response r : kAllResponses) {
        const auto it = cells.find({m, std::string(to_string(r))});
        csv << ',' << (it == cells.end() ? std::string() : num(it->second));
      }
      csv << '\n';
    }
    write_file(paths.delta_aic_csv, csv.str());
  }

  {
    std::ostringstream csv;
    csv << "metric,response,n_used,aic_base,aic_full,delta_aic,metric_edf,metric_significant\n";
    for (const auto& c : comparisons) {
      csv << text::csv_field(c.metric_name) << ',' << c.response_name << ',' << c.n_used << ','
          << num(c.aic_base) << ',' << num(c.aic_full) << ',' << num(c.delta_aic) << ','
          << num(c.metric_edf) << ',' << (c.metric_significant ? "true" : "false") << '\n';
    }
    write_file(paths.comparisons_csv, csv.str());
  }

  for (const auto& c : comparisons) {
    const auto stem = fmt::format("{}__{}", c.metric_name, c.response_name);
    const auto csv_path = out_dir / "partial_effects" / (stem + ".csv");
    const auto svg_path = out_dir / "partial_effects" / (stem + ".svg");
    std::ostringstream csv;
    csv << "grid,value\n";
    for (std::size_t i = 0; i < c.curve.grid.size(); ++i) {
      csv << num(c.curve.grid[i]) << ',' << num(c.curve.values[i]) << '\n';
    }
    write_file(csv_path, csv.str());
    write_file(svg_path,
               render_curve_svg(c.curve, fmt::format("Partial effect of {} on {}", c.metric_name,
                                                     c.response_name),
                                c.metric_name, "partial effect"));
    paths.curve_files.push_back(csv_path);
    paths.curve_files.push_back(svg_path);
  }

  {
    std::ostringstream out;
    for (const auto& [key, value] : manifest) out << key << '=' << value << '\n';
    std::map<std::string, std::size_t> rows_per_response;
    for (const auto& c : comparisons) rows_per_response[c.response_name] = c.n_used;
    for (const auto& [response, n] : rows_per_response) {
      out << "rows." << response << '=' << n << '\n';
    }
    out << "comparisons=" << comparisons.size() << '\n';
    write_file(paths.manifest, out.str());
  }
  return paths;
}

}  // namespace semrel
