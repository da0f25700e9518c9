#include "grbench/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "grbench/errors.hpp"
#include "grbench/util.hpp"

namespace grbench {

ResultRow row_from_summary(const Summary& summary, std::string_view backend_label) {
  ResultRow row;
  row.backend = std::string(backend_label);
  row.workload = summary.label;
  row.nodes = summary.config.nodes;
  row.dimensionality = to_string(summary.config.dim);
  row.distribution = to_string(summary.config.dist.kind);
  row.concurrency = summary.config.concurrency;
  row.cache = to_string(summary.config.cache);
  row.query_type = to_string(summary.config.query_type);
  row.mean_time_s = summary.time.mean;
  row.stddev_time_s = summary.time.stddev;
  if (summary.ram) {
    row.mean_ram_b = summary.ram->mean;
    row.stddev_ram_b = summary.ram->stddev;
  }
  return row;
}

namespace {

auto sort_key(const ResultRow& r) {
  return std::tie(r.workload, r.backend, r.nodes, r.dimensionality, r.distribution,
                  r.concurrency, r.cache, r.query_type, r.mean_time_s);
}

std::string csv_cell(const std::optional<double>& value) {
  return value ? util::format_double(*value) : std::string();
}

}  // namespace

std::string render_results_csv(std::vector<ResultRow> rows) {
  if (rows.empty()) raise(ErrorCode::invalid_argument, "no result rows to write");
  std::sort(rows.begin(), rows.end(),
            [](const ResultRow& a, const ResultRow& b) { return sort_key(a) < sort_key(b); });
  std::string out(kResultsHeader);
  out.push_back('\n');
  for (const ResultRow& r : rows) {
    out += r.backend;
    out.push_back(',');
    out += r.workload;
    out.push_back(',');
    out += std::to_string(r.nodes);
    out.push_back(',');
    out += r.dimensionality;
    out.push_back(',');
    out += r.distribution;
    out.push_back(',');
    out += r.concurrency ? "true" : "false";
    out.push_back(',');
    out += r.cache;
    out.push_back(',');
    out += r.query_type;
    out.push_back(',');
    out += util::format_double(r.mean_time_s);
    out.push_back(',');
    out += util::format_double(r.stddev_time_s);
    out.push_back(',');
    out += csv_cell(r.mean_ram_b);
    out.push_back(',');
    out += csv_cell(r.stddev_ram_b);
    out.push_back('\n');
  }
  return out;
}

void write_results(const std::vector<ResultRow>& rows, const std::filesystem::path& path) {
  util::write_file(path, render_results_csv(rows));
}

std::vector<ResultRow> parse_results(std::string_view text) {
  const auto lines = util::text_lines(text);
  if (lines.empty() || util::trim(lines.front()) != kResultsHeader) {
    raise(ErrorCode::io, "results file lacks the expected CSV header");
  }
  std::vector<ResultRow> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = util::split(lines[i], ',');
    if (f.size() != 12) {
      raise(ErrorCode::io, "results line " + std::to_string(i + 1) + " needs 12 fields");
    }
    ResultRow r;
    r.backend = f[0];
    r.workload = f[1];
    r.dimensionality = f[3];
    r.distribution = f[4];
    if (f[5] == "true") r.concurrency = true;
    else if (f[5] == "false") r.concurrency = false;
    else raise(ErrorCode::io, "results line " + std::to_string(i + 1) +
                                  ": concurrency must be true or false");
    r.cache = f[6];
    r.query_type = f[7];
    try {
      r.nodes = util::parse_u64(f[2]);
      r.mean_time_s = util::parse_double(f[8]);
      r.stddev_time_s = util::parse_double(f[9]);
      if (!f[10].empty()) r.mean_ram_b = util::parse_double(f[10]);
      if (!f[11].empty()) r.stddev_ram_b = util::parse_double(f[11]);
    } catch (const Error&) {
      raise(ErrorCode::io,
            "results line " + std::to_string(i + 1) + " has a malformed number");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<ResultRow> read_results(const std::filesystem::path& path) {
  return parse_results(util::read_file(path));
}

namespace {

struct SweepAxis {
  std::string value;  // raw field value, used for grouping
  std::string label;  // printed under the group
  int order = 0;
};

SweepAxis axis_of(const ResultRow& row, std::string_view sweep) {
  if (sweep == "concurrency") {
    return row.concurrency ? SweepAxis{"true", "concurrent", 1}
                           : SweepAxis{"false", "sequential", 0};
  }
  if (sweep == "cache") {
    static const std::map<std::string, int> order{
        {"cold", 0}, {"warm", 1}, {"warmer", 2}, {"hot", 3}};
    const auto it = order.find(row.cache);
    return {row.cache, row.cache, it != order.end() ? it->second : 99};
  }
  if (sweep == "dimensionality") {
    static const std::map<std::string, int> order{
        {"1dstar", 0}, {"1d", 1}, {"2d", 2}, {"3d", 3}};
    const auto it = order.find(row.dimensionality);
    return {row.dimensionality, row.dimensionality,
            it != order.end() ? it->second : 99};
  }
  if (sweep == "nodes") {
    return {std::to_string(row.nodes), std::to_string(row.nodes),
            static_cast<int>(std::min<std::uint64_t>(
                row.nodes, std::numeric_limits<int>::max()))};
  }
  raise(ErrorCode::invalid_argument,
        "unknown sweep parameter '" + std::string(sweep) +
            "' (concurrency|cache|dimensionality|nodes)");
}

void check_uniform(const std::vector<ResultRow>& rows, std::string_view sweep) {
  const ResultRow& first = rows.front();
  for (const ResultRow& r : rows) {
    if (r.workload != first.workload) {
      raise(ErrorCode::invalid_argument, "plot rows mix workloads");
    }
    if (r.distribution != first.distribution) {
      raise(ErrorCode::invalid_argument, "plot rows mix cost distributions");
    }
    if (sweep != "concurrency" && r.concurrency != first.concurrency) {
      raise(ErrorCode::invalid_argument, "plot rows mix submission modes");
    }
    if (sweep != "cache" && r.cache != first.cache) {
      raise(ErrorCode::invalid_argument, "plot rows mix cache states");
    }
    if (r.query_type != first.query_type) {
      raise(ErrorCode::invalid_argument, "plot rows mix query types");
    }
    if (sweep != "dimensionality" && r.dimensionality != first.dimensionality) {
      raise(ErrorCode::invalid_argument, "plot rows mix grid shapes");
    }
    // A dimensionality sweep holds the edge count roughly constant, so the
    // node count legitimately varies with it.
    if (sweep != "nodes" && sweep != "dimensionality" && r.nodes != first.nodes) {
      raise(ErrorCode::invalid_argument, "plot rows mix graph sizes");
    }
  }
}

std::string fmt2(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string xml_escape(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

double nice_step(double raw) {
  if (!(raw > 0.0)) return 1.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double mult : {1.0, 2.0, 2.5, 5.0, 10.0}) {
    if (mag * mult >= raw) return mag * mult;
  }
  return mag * 10.0;
}

void append_text(std::string& svg, double x, double y, const std::string& text,
                 const std::string& anchor, int size, const char* fill = "#333333") {
  svg += "<text x=\"" + fmt2(x) + "\" y=\"" + fmt2(y) + "\" text-anchor=\"" + anchor +
         "\" font-size=\"" + std::to_string(size) + "\" fill=\"" + fill + "\">" +
         xml_escape(text) + "</text>\n";
}

}  // namespace

std::string render_plot(const std::vector<ResultRow>& rows, std::string_view sweep_parameter,
                        bool log_time) {
  if (rows.empty()) raise(ErrorCode::invalid_argument, "no rows to plot");
  check_uniform(rows, sweep_parameter);

  // Group axis: sweep values in canonical order. Series: backends sorted.
  std::map<int, SweepAxis> groups_by_order;
  std::set<std::string> backend_set;
  std::map<std::pair<std::string, std::string>, const ResultRow*> cell;  // (value, backend)
  for (const ResultRow& r : rows) {
    const SweepAxis axis = axis_of(r, sweep_parameter);
    groups_by_order.emplace(axis.order, axis);
    backend_set.insert(r.backend);
    if (!cell.emplace(std::make_pair(axis.value, r.backend), &r).second) {
      raise(ErrorCode::invalid_argument,
            "duplicate plot cell for " + r.backend + " at " + axis.label);
    }
  }
  std::vector<SweepAxis> groups;
  for (const auto& [order, axis] : groups_by_order) groups.push_back(axis);
  const std::vector<std::string> backends(backend_set.begin(), backend_set.end());

  static const char* kPalette[] = {"#4477aa", "#ee6677", "#228833",
                                   "#ccbb44", "#66ccee", "#aa3377"};
  constexpr int kPaletteSize = 6;

  const double width = 900, height = 480;
  const double left = 84, right = 36, top = 64, bottom = 72;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double max_v = 0.0;
  double min_pos = std::numeric_limits<double>::infinity();
  for (const ResultRow& r : rows) {
    const double upper =
        r.mean_time_s + (r.time_stddev_visible() ? r.stddev_time_s : 0.0);
    max_v = std::max(max_v, upper);
    if (r.mean_time_s > 0.0) min_pos = std::min(min_pos, r.mean_time_s);
  }
  if (max_v <= 0.0) max_v = 1.0;
  if (!std::isfinite(min_pos)) min_pos = max_v / 10.0;

  double y_lo = 0.0, y_hi = max_v;
  if (log_time) {
    y_lo = std::pow(10.0, std::floor(std::log10(min_pos)));
    y_hi = std::pow(10.0, std::ceil(std::log10(max_v * 1.05)));
    if (y_hi <= y_lo) y_hi = y_lo * 10.0;
  } else {
    const double step = nice_step(max_v / 4.0);
    y_hi = step * std::ceil(max_v * 1.02 / step);
  }

  auto y_of = [&](double v) {
    if (log_time) {
      const double clamped = std::max(v, y_lo);
      const double t = (std::log10(clamped) - std::log10(y_lo)) /
                       (std::log10(y_hi) - std::log10(y_lo));
      return top + plot_h * (1.0 - t);
    }
    return top + plot_h * (1.0 - (v - y_lo) / (y_hi - y_lo));
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt2(width) +
         "\" height=\"" + fmt2(height) + "\" viewBox=\"0 0 " + fmt2(width) + " " +
         fmt2(height) + "\" font-family=\"Helvetica,Arial,sans-serif\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt2(width) + "\" height=\"" + fmt2(height) +
         "\" fill=\"#ffffff\"/>\n";

  const ResultRow& first = rows.front();
  append_text(svg, left, 28, first.workload + " \xE2\x80\x94 mean wall time by " +
                                 std::string(sweep_parameter),
              "start", 17, "#111111");
  // Subtitle lists only the held-constant parameters.
  std::vector<std::string> constants;
  if (sweep_parameter != "dimensionality") {
    constants.push_back(first.dimensionality);
    if (sweep_parameter != "nodes") {
      constants.push_back(std::to_string(first.nodes) + " nodes");
    }
  }
  constants.push_back(first.distribution + " costs");
  constants.push_back(first.query_type + " queries");
  if (sweep_parameter != "cache") constants.push_back(first.cache + " cache");
  if (sweep_parameter != "concurrency") {
    constants.push_back(first.concurrency ? "concurrent" : "sequential");
  }
  std::string subtitle;
  for (const std::string& part : constants) {
    if (!subtitle.empty()) subtitle += ", ";
    subtitle += part;
  }
  append_text(svg, left, 46, subtitle, "start", 12, "#666666");

  // Horizontal gridlines and y tick labels.
  auto grid_line = [&](double v, const std::string& label) {
    const double y = y_of(v);
    svg += "<line x1=\"" + fmt2(left) + "\" y1=\"" + fmt2(y) + "\" x2=\"" +
           fmt2(left + plot_w) + "\" y2=\"" + fmt2(y) +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    append_text(svg, left - 8, y + 4, label, "end", 11, "#555555");
  };
  if (log_time) {
    for (double v = y_lo; v <= y_hi * 1.0001; v *= 10.0) {
      grid_line(v, util::format_double(v));
    }
  } else {
    const double step = nice_step(y_hi / 4.0);
    for (double v = 0.0; v <= y_hi * 1.0001; v += step) {
      grid_line(v, util::format_double(v));
    }
  }
  append_text(svg, 20, top + plot_h / 2, "mean time [s]", "middle", 12, "#555555");

  // Bars with error bars where the deviation is visible.
  const double group_w = plot_w / static_cast<double>(groups.size());
  const double bar_w = group_w * 0.72 / static_cast<double>(backends.size());
  const double base_y = y_of(y_lo);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const double group_x = left + group_w * static_cast<double>(g);
    for (std::size_t b = 0; b < backends.size(); ++b) {
      const auto it = cell.find(std::make_pair(groups[g].value, backends[b]));
      if (it == cell.end()) continue;
      const ResultRow& r = *it->second;
      const double x = group_x + group_w * 0.14 +
                       bar_w * static_cast<double>(b) +
                       bar_w * 0.1;
      const double w = bar_w * 0.8;
      const double y = y_of(r.mean_time_s);
      svg += "<rect x=\"" + fmt2(x) + "\" y=\"" + fmt2(y) + "\" width=\"" + fmt2(w) +
             "\" height=\"" + fmt2(std::max(base_y - y, 0.0)) + "\" fill=\"" +
             kPalette[b % kPaletteSize] + "\"/>\n";
      if (r.time_stddev_visible()) {
        const double cx = x + w / 2.0;
        const double y_top = y_of(r.mean_time_s + r.stddev_time_s);
        const double y_bot = y_of(std::max(r.mean_time_s - r.stddev_time_s, y_lo));
        const double cap = w * 0.35;
        for (const auto& [x1, y1, x2, y2] :
             {std::tuple{cx, y_top, cx, y_bot},
              std::tuple{cx - cap, y_top, cx + cap, y_top},
              std::tuple{cx - cap, y_bot, cx + cap, y_bot}}) {
          svg += "<line x1=\"" + fmt2(x1) + "\" y1=\"" + fmt2(y1) + "\" x2=\"" +
                 fmt2(x2) + "\" y2=\"" + fmt2(y2) +
                 "\" stroke=\"#222222\" stroke-width=\"1.5\"/>\n";
        }
      }
    }
    append_text(svg, group_x + group_w / 2.0, top + plot_h + 22, groups[g].label,
                "middle", 12, "#333333");
  }

  // Axes over the bars, then the legend.
  svg += "<line x1=\"" + fmt2(left) + "\" y1=\"" + fmt2(top) + "\" x2=\"" + fmt2(left) +
         "\" y2=\"" + fmt2(top + plot_h) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  svg += "<line x1=\"" + fmt2(left) + "\" y1=\"" + fmt2(top + plot_h) + "\" x2=\"" +
         fmt2(left + plot_w) + "\" y2=\"" + fmt2(top + plot_h) +
         "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  append_text(svg, left + plot_w / 2.0, height - 16, std::string(sweep_parameter),
              "middle", 12, "#555555");
  double legend_y = top + 6;
  for (std::size_t b = 0; b < backends.size(); ++b) {
    const double lx = left + plot_w - 150;
    svg += "<rect x=\"" + fmt2(lx) + "\" y=\"" + fmt2(legend_y - 9) +
           "\" width=\"12\" height=\"12\" fill=\"" + kPalette[b % kPaletteSize] +
           "\"/>\n";
    append_text(svg, lx + 18, legend_y + 2, backends[b], "start", 12);
    legend_y += 18;
  }

  svg += "</svg>\n";
  return svg;
}

void render_plot_svg(const std::vector<ResultRow>& rows, std::string_view sweep_parameter,
                     const std::filesystem::path& path, bool log_time) {
  util::write_file(path, render_plot(rows, sweep_parameter, log_time));
}

}  // namespace grbench
