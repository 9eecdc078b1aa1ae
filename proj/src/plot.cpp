#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "htee/harness.hpp"

namespace htee {

namespace {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

Table read_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path.string());
  Table t;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first) {
      t.header = cells;
      first = false;
      continue;
    }
    std::vector<double> row;
    for (const auto& c : cells) row.push_back(c == "nan" ? std::numeric_limits<double>::quiet_NaN() : std::stod(c));
    t.rows.push_back(std::move(row));
  }
  return t;
}

struct Series {
  std::string label;
  std::size_t column;
};

void render(const Table& t, const std::vector<Series>& series, const std::string& ylabel,
            const std::filesystem::path& out) {
  constexpr double W = 640, H = 420, L = 70, R = 20, T = 20, B = 50;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin, ymin = xmin, ymax = -xmin;
  for (const auto& row : t.rows) {
    xmin = std::min(xmin, row[0]);
    xmax = std::max(xmax, row[0]);
    for (const auto& s : series) {
      if (std::isnan(row[s.column])) continue;
      ymin = std::min(ymin, row[s.column]);
      ymax = std::max(ymax, row[s.column]);
    }
  }
  if (!(xmax > xmin)) xmax = xmin + 1;
  if (!(ymax > ymin)) ymax = ymin + 1;
  ymin = std::min(ymin, 0.0);
  auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto sy = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c"};
  std::ofstream os(out);
  if (!os) throw std::runtime_error("cannot write " + out.string());
  os << fmt::format(R"svg(<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="12">)svg", W, H) << '\n';
  os << fmt::format(R"svg(<rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="black"/>)svg", L, T, W - L - R, H - T - B) << '\n';
  for (int k = 0; k <= 5; ++k) {
    const double x = xmin + (xmax - xmin) * k / 5.0;
    const double y = ymin + (ymax - ymin) * k / 5.0;
    os << fmt::format(R"svg(<text x="{:.1f}" y="{:.1f}" text-anchor="middle">{:.3g}</text>)svg", sx(x), H - B + 16, x) << '\n';
    os << fmt::format(R"svg(<text x="{:.1f}" y="{:.1f}" text-anchor="end">{:.3g}</text>)svg", L - 6, sy(y) + 4, y) << '\n';
  }
  os << fmt::format(R"svg(<text x="{:.1f}" y="{:.1f}" text-anchor="middle">Maximum Tx Power P [dBm]</text>)svg", (W + L - R) / 2, H - 10) << '\n';
  os << fmt::format(R"svg(<text transform="translate(16,{:.1f}) rotate(-90)" text-anchor="middle">{}</text>)svg", (H - B + T) / 2, ylabel) << '\n';
  for (std::size_t k = 0; k < series.size(); ++k) {
    std::string pts;
    for (const auto& row : t.rows) {
      const double v = row[series[k].column];
      if (std::isnan(v)) continue;
      pts += fmt::format("{:.2f},{:.2f} ", sx(row[0]), sy(v));
    }
    os << fmt::format(R"svg(<polyline fill="none" stroke="{}" stroke-width="2" points="{}"/>)svg", colors[k % 3], pts) << '\n';
    os << fmt::format(R"svg(<text x="{:.1f}" y="{:.1f}" fill="{}">{}</text>)svg", L + 10, T + 16 + 14 * k, colors[k % 3], series[k].label) << '\n';
  }
  os << "</svg>\n";
}

std::size_t column(const Table& t, const std::string& name) {
  const auto it = std::find(t.header.begin(), t.header.end(), name);
  if (it == t.header.end()) throw std::runtime_error("CSV lacks column " + name);
  return static_cast<std::size_t>(it - t.header.begin());
}

}  // namespace

std::vector<std::string> plot_sweep(const std::string& in_dir, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  struct Spec {
    const char* csv;
    const char* prefix;
    const char* ylabel;
  };
  const Spec specs[] = {{"throughput.csv", "tp_", "Throughput [Mbit/s]"},
                        {"gee.csv", "gee_", "GEE [Mbit/J]"},
                        {"power.csv", "prel_", "Relative Tx Power [%]"}};
  std::vector<std::string> written;
  for (const auto& s : specs) {
    const fs::path csv = fs::path(in_dir) / s.csv;
    if (!fs::exists(csv)) continue;
    const Table t = read_csv(csv);
    std::vector<Series> series;
    for (const char* name : {"tp", "htee", "gee"}) {
      series.push_back({fmt::format("{}", name), column(t, std::string(s.prefix) + name)});
    }
    const fs::path out = fs::path(out_dir) / (fs::path(s.csv).stem().string() + ".svg");
    render(t, series, s.ylabel, out);
    written.push_back(out.string());
  }
  if (written.empty()) throw std::runtime_error("no sweep CSV files found in " + in_dir);
  return written;
}

}  // namespace htee
