#pragma once

#include <string>
#include <vector>

namespace mrsav {

/// Minimal self-contained SVG output: line plots for series, a semilog-y
/// variant for spectra, and a bar chart for burst intervals. Purely derived
/// from the tabulated data, no solver dependency.
struct PlotSeries {
    std::vector<double> x;
    std::vector<double> y;
    std::string label;
};

void write_line_plot_svg(const std::string& path, const std::vector<PlotSeries>& series,
                         const std::string& title, const std::string& x_label,
                         const std::string& y_label, bool log_y = false);

void write_bar_chart_svg(const std::string& path, const std::vector<double>& values,
                         const std::string& title, const std::string& y_label);

/// Renders the standard plot set from a simulation series CSV (one line plot
/// per data column against t) into `out_dir`. Returns the file paths.
std::vector<std::string> emit_series_plots(const std::string& csv_path,
                                           const std::string& out_dir);

/// PSD (frequency/power CSV) to a semilog plot.
std::string emit_psd_plot(const std::string& csv_path, const std::string& out_dir);

/// Burst intervals CSV to a bar chart.
std::string emit_interval_plot(const std::string& csv_path, const std::string& out_dir);

}  // namespace mrsav
