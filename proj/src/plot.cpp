#include "mrsav/plot.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "mrsav/csv.hpp"
#include "mrsav/errors.hpp"

namespace mrsav {

namespace {

constexpr double kWidth = 720.0, kHeight = 420.0;
constexpr double kMarginLeft = 84.0, kMarginRight = 24.0;
constexpr double kMarginTop = 40.0, kMarginBottom = 56.0;

struct Range {
    double lo = 0.0, hi = 1.0;
    double map(double v, double pix_lo, double pix_hi) const {
        const double t = hi > lo ? (v - lo) / (hi - lo) : 0.5;
        return pix_lo + t * (pix_hi - pix_lo);
    }
};

Range nice_range(double lo, double hi) {
    if (!(hi > lo)) {
        const double pad = std::max(1.0, std::abs(lo)) * 0.5;
        return {lo - pad, hi + pad};
    }
    const double pad = (hi - lo) * 0.05;
    return {lo - pad, hi + pad};
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

void svg_header(std::ostream& os, const std::string& title) {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
       << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
          "font-family=\"sans-serif\" font-size=\"16\">"
       << title << "</text>\n";
}

void axes(std::ostream& os, const Range& xr, const Range& yr, const std::string& x_label,
          const std::string& y_label, bool log_y) {
    const double x0 = kMarginLeft, x1 = kWidth - kMarginRight;
    const double y0 = kHeight - kMarginBottom, y1 = kMarginTop;
    os << "<rect x=\"" << x0 << "\" y=\"" << y1 << "\" width=\"" << x1 - x0 << "\" height=\""
       << y0 - y1 << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double fx = xr.lo + (xr.hi - xr.lo) * i / 5.0;
        const double px = xr.map(fx, x0, x1);
        os << "<line x1=\"" << px << "\" y1=\"" << y0 << "\" x2=\"" << px << "\" y2=\"" << y0 + 5
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << px << "\" y=\"" << y0 + 20
           << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt_tick(fx) << "</text>\n";
        const double fy = yr.lo + (yr.hi - yr.lo) * i / 5.0;
        const double py = yr.map(fy, y0, y1);
        os << "<line x1=\"" << x0 - 5 << "\" y1=\"" << py << "\" x2=\"" << x0 << "\" y2=\"" << py
           << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << x0 - 8 << "\" y=\"" << py + 4
           << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
           << fmt_tick(log_y ? std::pow(10.0, fy) : fy) << "</text>\n";
    }
    os << "<text x=\"" << (x0 + x1) / 2 << "\" y=\"" << kHeight - 14
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << x_label
       << "</text>\n";
    os << "<text x=\"18\" y=\"" << (y0 + y1) / 2
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
          "transform=\"rotate(-90 18 "
       << (y0 + y1) / 2 << ")\">" << y_label << "</text>\n";
}

}  // namespace

void write_line_plot_svg(const std::string& path, const std::vector<PlotSeries>& series,
                         const std::string& title, const std::string& x_label,
                         const std::string& y_label, bool log_y) {
    if (series.empty()) throw ConfigError("plot: no series given");
    double x_lo = std::numeric_limits<double>::infinity(), x_hi = -x_lo;
    double y_lo = x_lo, y_hi = -x_lo;
    double y_max_abs = 0.0;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size() || s.x.empty())
            throw ConfigError("plot: series '" + s.label + "' is empty or ragged");
        for (double v : s.x) {
            x_lo = std::min(x_lo, v);
            x_hi = std::max(x_hi, v);
        }
        for (double v : s.y) y_max_abs = std::max(y_max_abs, std::abs(v));
    }
    auto y_value = [&](double v) {
        if (!log_y) return v;
        const double floor = y_max_abs > 0.0 ? y_max_abs * 1e-12 : 1e-300;
        return std::log10(std::max(v, floor));
    };
    for (const auto& s : series)
        for (double v : s.y) {
            y_lo = std::min(y_lo, y_value(v));
            y_hi = std::max(y_hi, y_value(v));
        }

    const Range xr = nice_range(x_lo, x_hi);
    const Range yr = nice_range(y_lo, y_hi);
    const double px0 = kMarginLeft, px1 = kWidth - kMarginRight;
    const double py0 = kHeight - kMarginBottom, py1 = kMarginTop;

    std::ofstream os(path);
    if (!os) throw IoError("cannot open plot file for writing: " + path);
    svg_header(os, title);
    axes(os, xr, yr, x_label, y_label, log_y);
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        os << "<polyline fill=\"none\" stroke=\"" << kColors[si % 6]
           << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i)
            os << xr.map(s.x[i], px0, px1) << "," << yr.map(y_value(s.y[i]), py0, py1) << " ";
        os << "\"/>\n";
        if (series.size() > 1 || !s.label.empty()) {
            os << "<text x=\"" << px1 - 8 << "\" y=\"" << py1 + 16 + 16 * si
               << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\" fill=\""
               << kColors[si % 6] << "\">" << s.label << "</text>\n";
        }
    }
    os << "</svg>\n";
    if (!os) throw IoError("plot write failed: " + path);
}

void write_bar_chart_svg(const std::string& path, const std::vector<double>& values,
                         const std::string& title, const std::string& y_label) {
    if (values.empty()) throw ConfigError("plot: no bars to draw");
    double hi = 0.0;
    for (double v : values) hi = std::max(hi, v);
    const Range yr = nice_range(0.0, hi);
    const Range xr{0.0, static_cast<double>(values.size())};
    const double px0 = kMarginLeft, px1 = kWidth - kMarginRight;
    const double py0 = kHeight - kMarginBottom, py1 = kMarginTop;

    std::ofstream os(path);
    if (!os) throw IoError("cannot open plot file for writing: " + path);
    svg_header(os, title);
    axes(os, xr, yr, "event index", y_label, false);
    const double slot = (px1 - px0) / static_cast<double>(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double x = px0 + slot * static_cast<double>(i) + slot * 0.15;
        const double y = yr.map(values[i], py0, py1);
        os << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << slot * 0.7 << "\" height=\""
           << py0 - y << "\" fill=\"#1f77b4\"/>\n";
    }
    os << "</svg>\n";
    if (!os) throw IoError("plot write failed: " + path);
}

namespace {

void require_rows(const CsvTable& table, const std::string& path) {
    if (table.rows() == 0)
        throw IoError("CSV schema error: no data rows in " + path);
}

}  // namespace

std::vector<std::string> emit_series_plots(const std::string& csv_path,
                                           const std::string& out_dir) {
    const CsvTable table = read_csv(csv_path);
    if (!table.has_column("t"))
        throw IoError("CSV schema error: missing column 't' in " + csv_path);
    require_rows(table, csv_path);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);

    const auto& t = table.column("t");
    std::vector<std::string> written;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (table.columns[c] == "t") continue;
        const std::string name = table.columns[c];
        const std::string path = out_dir + "/" + name + ".svg";
        const bool log_scale = name == "q_dev";
        write_line_plot_svg(path, {PlotSeries{t, table.data[c], name}}, name + " vs t", "t", name,
                            log_scale);
        written.push_back(path);
    }
    return written;
}

std::string emit_psd_plot(const std::string& csv_path, const std::string& out_dir) {
    const CsvTable table = read_csv(csv_path);
    if (!table.has_column("frequency") || !table.has_column("power"))
        throw IoError("CSV schema error: PSD file needs 'frequency' and 'power' columns: " +
                      csv_path);
    require_rows(table, csv_path);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const std::string path = out_dir + "/psd.svg";
    write_line_plot_svg(path, {PlotSeries{table.column("frequency"), table.column("power"), ""}},
                        "power spectral density", "frequency (cycles per time unit)", "power",
                        true);
    return path;
}

std::string emit_interval_plot(const std::string& csv_path, const std::string& out_dir) {
    const CsvTable table = read_csv(csv_path);
    if (!table.has_column("interval"))
        throw IoError("CSV schema error: interval file needs an 'interval' column: " + csv_path);
    require_rows(table, csv_path);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    const std::string path = out_dir + "/intervals.svg";
    write_bar_chart_svg(path, table.column("interval"), "time interval between bursts",
                        "interval");
    return path;
}

}  // namespace mrsav
