#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "interplab/harness.hpp"

namespace interplab {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

constexpr const char* kCsvHeader =
    "config_id,mode,n,trial,seed,alpha,rel_l2_error,rel_excess_risk,"
    "cond_RRstar,c_value,resamples,wall_ms";

}  // namespace

void emit_csv(const SweepResult& result, const std::string& path,
              bool include_timing) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit_csv: cannot open " + path);
  out << kCsvHeader << "\n";
  for (const RiskRecord& rec : result.records) {
    out << result.config.config_id << ',' << rec.mode << ',' << rec.n << ','
        << rec.trial << ',' << rec.seed << ',' << fmt(rec.alpha) << ','
        << fmt(rec.rel_l2_error) << ',' << fmt(rec.rel_excess_risk) << ',';
    if (rec.diagnostics) {
      out << fmt(rec.diagnostics->cond_rr_star) << ','
          << fmt(rec.diagnostics->c_value);
    } else {
      out << ',';
    }
    out << ',' << rec.resamples << ',';
    if (include_timing) out << fmt(rec.wall_ms);
    out << "\n";
  }
  if (!out) throw IoError("emit_csv: write failed for " + path);
}

std::vector<CsvRow> read_records_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("read_records_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) {
    throw IoError("read_records_csv: empty file " + path);
  }
  if (line != kCsvHeader) {
    throw IoError("read_records_csv: unexpected header in " + path);
  }
  std::vector<CsvRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    // a trailing empty wall_ms field is eaten by getline; restore it
    while (fields.size() < 12) fields.emplace_back();
    if (fields.size() != 12) {
      throw IoError("read_records_csv: malformed row: " + line);
    }
    CsvRow row;
    row.config_id = fields[0];
    row.mode = fields[1];
    row.n = std::stoll(fields[2]);
    row.trial = std::stoi(fields[3]);
    row.rel_l2_error = std::stod(fields[6]);
    row.rel_excess_risk = std::stod(fields[7]);
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

struct Series {
  std::string label;
  // (n, mean rel l2, mean rel excess), sorted by n
  std::vector<std::tuple<long long, double, double>> points;
};

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};

struct Panel {
  double x0, y0, width, height;  // plot area in svg coordinates
  double log_n_min, log_n_max, log_v_min, log_v_max;

  double map_x(double log_n) const {
    if (log_n_max == log_n_min) return x0 + width / 2.0;
    return x0 + (log_n - log_n_min) / (log_n_max - log_n_min) * width;
  }
  double map_y(double log_v) const {
    if (log_v_max == log_v_min) return y0 + height / 2.0;
    return y0 + height - (log_v - log_v_min) / (log_v_max - log_v_min) * height;
  }
};

// Values are clamped away from zero before taking logs; an exactly-zero mean
// excess risk is legitimate and must still plot.
constexpr double kPlotFloor = 1e-8;

double safe_log10(double v) { return std::log10(std::max(v, kPlotFloor)); }

void draw_panel(std::ostream& out, const Panel& panel, const char* title,
                const std::vector<Series>& series, int value_index) {
  out << "  <rect x=\"" << panel.x0 << "\" y=\"" << panel.y0 << "\" width=\""
      << panel.width << "\" height=\"" << panel.height
      << "\" fill=\"none\" stroke=\"#444444\"/>\n";
  out << "  <text x=\"" << panel.x0 + panel.width / 2.0 << "\" y=\""
      << panel.y0 - 10.0
      << "\" text-anchor=\"middle\" font-size=\"14\">" << title << "</text>\n";

  // decade ticks
  for (int e = static_cast<int>(std::ceil(panel.log_n_min));
       e <= static_cast<int>(std::floor(panel.log_n_max)); ++e) {
    const double x = panel.map_x(e);
    out << "  <line x1=\"" << x << "\" y1=\"" << panel.y0 + panel.height
        << "\" x2=\"" << x << "\" y2=\"" << panel.y0 + panel.height + 5.0
        << "\" stroke=\"#444444\"/>\n";
    out << "  <text x=\"" << x << "\" y=\"" << panel.y0 + panel.height + 18.0
        << "\" text-anchor=\"middle\" font-size=\"11\">1e" << e << "</text>\n";
  }
  for (int e = static_cast<int>(std::ceil(panel.log_v_min));
       e <= static_cast<int>(std::floor(panel.log_v_max)); ++e) {
    const double y = panel.map_y(e);
    out << "  <line x1=\"" << panel.x0 - 5.0 << "\" y1=\"" << y << "\" x2=\""
        << panel.x0 << "\" y2=\"" << y << "\" stroke=\"#444444\"/>\n";
    out << "  <text x=\"" << panel.x0 - 8.0 << "\" y=\"" << y + 4.0
        << "\" text-anchor=\"end\" font-size=\"11\">1e" << e << "</text>\n";
  }
  out << "  <text x=\"" << panel.x0 + panel.width / 2.0 << "\" y=\""
      << panel.y0 + panel.height + 34.0
      << "\" text-anchor=\"middle\" font-size=\"12\">n</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::ostringstream points;
    for (const auto& [n, l2, excess] : series[s].points) {
      const double value = value_index == 0 ? l2 : excess;
      points << panel.map_x(safe_log10(static_cast<double>(n))) << ","
             << panel.map_y(safe_log10(value)) << " ";
    }
    if (series[s].points.size() > 1) {
      out << "  <polyline points=\"" << points.str()
          << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"1.5\"/>\n";
    }
    for (const auto& [n, l2, excess] : series[s].points) {
      const double value = value_index == 0 ? l2 : excess;
      out << "  <circle cx=\"" << panel.map_x(safe_log10(static_cast<double>(n)))
          << "\" cy=\"" << panel.map_y(safe_log10(value))
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    }
    // legend row
    const double ly = panel.y0 + 14.0 + 14.0 * static_cast<double>(s);
    out << "  <line x1=\"" << panel.x0 + panel.width - 120.0 << "\" y1=\"" << ly
        << "\" x2=\"" << panel.x0 + panel.width - 104.0 << "\" y2=\"" << ly
        << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "  <text x=\"" << panel.x0 + panel.width - 100.0 << "\" y=\""
        << ly + 4.0 << "\" font-size=\"11\">" << series[s].label << "</text>\n";
  }
}

void emit_svg_series(const std::vector<Series>& series,
                     const std::string& path) {
  if (series.empty()) throw EmptyResult("emit_svg: no summary points");

  double log_n_min = 1e300, log_n_max = -1e300;
  double log_l2_min = 1e300, log_l2_max = -1e300;
  double log_ex_min = 1e300, log_ex_max = -1e300;
  for (const Series& s : series) {
    for (const auto& [n, l2, excess] : s.points) {
      const double ln = safe_log10(static_cast<double>(n));
      log_n_min = std::min(log_n_min, ln);
      log_n_max = std::max(log_n_max, ln);
      log_l2_min = std::min(log_l2_min, safe_log10(l2));
      log_l2_max = std::max(log_l2_max, safe_log10(l2));
      log_ex_min = std::min(log_ex_min, safe_log10(excess));
      log_ex_max = std::max(log_ex_max, safe_log10(excess));
    }
  }
  auto pad = [](double& lo, double& hi) {
    if (hi - lo < 0.2) {
      lo -= 0.5;
      hi += 0.5;
    } else {
      lo -= 0.1 * (hi - lo);
      hi += 0.1 * (hi - lo);
    }
  };
  pad(log_n_min, log_n_max);
  pad(log_l2_min, log_l2_max);
  pad(log_ex_min, log_ex_max);

  const double width = 960.0, height = 420.0;
  Panel left{70.0, 50.0, 360.0, 300.0, log_n_min, log_n_max, log_l2_min,
             log_l2_max};
  Panel right{550.0, 50.0, 360.0, 300.0, log_n_min, log_n_max, log_ex_min,
              log_ex_max};

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("emit_svg: cannot open " + path);
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " "
      << height << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#ffffff\"/>\n";
  draw_panel(out, left, "relative L2 error vs n", series, 0);
  draw_panel(out, right, "relative excess risk vs n", series, 1);
  out << "</svg>\n";
  if (!out) throw IoError("emit_svg: write failed for " + path);
}

}  // namespace

void emit_svg(const SweepResult& result, const std::string& path) {
  std::map<std::string, Series> by_mode;
  for (const SummaryPoint& point : result.summary) {
    Series& series = by_mode[point.mode];
    series.label = result.config.config_id + "/" + point.mode;
    series.points.emplace_back(point.n, point.mean_rel_l2,
                               point.mean_rel_excess);
  }
  std::vector<Series> series;
  for (auto& [mode, s] : by_mode) {
    std::sort(s.points.begin(), s.points.end());
    series.push_back(std::move(s));
  }
  emit_svg_series(series, path);
}

void emit_svg_from_csv(const std::string& csv_path,
                       const std::string& svg_path) {
  const std::vector<CsvRow> rows = read_records_csv(csv_path);
  // group by (config_id, mode, n) and average
  std::map<std::tuple<std::string, std::string, long long>,
           std::pair<int, std::pair<double, double>>>
      cells;
  for (const CsvRow& row : rows) {
    auto& cell = cells[{row.config_id, row.mode, row.n}];
    cell.first += 1;
    cell.second.first += row.rel_l2_error;
    cell.second.second += row.rel_excess_risk;
  }
  std::map<std::pair<std::string, std::string>, Series> grouped;
  for (const auto& [key, agg] : cells) {
    const auto& [config_id, mode, n] = key;
    Series& series = grouped[{config_id, mode}];
    series.label = config_id + "/" + mode;
    series.points.emplace_back(n, agg.second.first / agg.first,
                               agg.second.second / agg.first);
  }
  std::vector<Series> series;
  for (auto& [key, s] : grouped) {
    std::sort(s.points.begin(), s.points.end());
    series.push_back(std::move(s));
  }
  emit_svg_series(series, svg_path);
}

}  // namespace interplab
