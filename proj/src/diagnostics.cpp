#include "mrsav/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mrsav/errors.hpp"
#include "mrsav/fft.hpp"
#include "mrsav/spectral_ops.hpp"

namespace mrsav {

void TimeSeries::validate() const {
    if (times.size() != values.size())
        throw ConfigError("time series: times and values lengths differ");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw ConfigError("time series: times must be strictly increasing");
}

bool TimeSeries::uniform(double rel_tol) const {
    if (times.size() < 2) return true;
    const double dt = times[1] - times[0];
    for (std::size_t i = 2; i < times.size(); ++i)
        if (std::abs((times[i] - times[i - 1]) - dt) > rel_tol * std::abs(dt)) return false;
    return true;
}

std::pair<double, double> field_norms(const SpectralField& omega, double froude) {
    return {sobolev_norm_sq(omega, 0, froude), sobolev_norm_sq(omega, 1, froude)};
}

std::complex<double> mode_trace(const SpectralField& omega, const Wavevector& kappa) {
    return omega.at_mode(kappa);
}

Periodogram periodogram(const TimeSeries& series, PsdWindow window) {
    series.validate();
    const std::size_t n = series.size();
    if (n < 8) throw ConfigError("periodogram: need at least 8 samples");
    if (!series.uniform()) throw ConfigError("periodogram: sampling must be uniform");
    const double dt = series.times[1] - series.times[0];

    double mean = 0.0;
    for (double v : series.values) mean += v;
    mean /= static_cast<double>(n);

    std::vector<std::complex<double>> in(n), out(n);
    double window_power = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double w = 1.0;
        if (window == PsdWindow::hann)
            w = 0.5 * (1.0 - std::cos(2.0 * M_PI * static_cast<double>(j) /
                                      static_cast<double>(n)));
        window_power += w * w;
        in[j] = w * (series.values[j] - mean);
    }
    window_power /= static_cast<double>(n);
    detail::fft_1d(in, out);

    // One-sided folding normalized so the total power equals the variance of
    // the detrended series (divided by the mean-square window gain).
    const double scale = 1.0 / (static_cast<double>(n) * static_cast<double>(n) * window_power);
    Periodogram pg;
    const std::size_t half = n / 2;
    pg.frequency.reserve(half + 1);
    pg.power.reserve(half + 1);
    for (std::size_t k = 0; k <= half; ++k) {
        double p = std::norm(out[k]) * scale;
        if (k != 0 && !(n % 2 == 0 && k == half)) p += std::norm(out[n - k]) * scale;
        pg.frequency.push_back(static_cast<double>(k) / (static_cast<double>(n) * dt));
        pg.power.push_back(p);
    }
    return pg;
}

BurstReport detect_bursts(const TimeSeries& series, double threshold, double min_separation) {
    series.validate();
    BurstReport report;
    bool inside = false;
    BurstEvent cur;
    auto flush = [&]() {
        if (!report.events.empty() &&
            cur.onset - report.events.back().end < min_separation) {
            report.events.back().end = cur.end;
            report.events.back().peak = std::max(report.events.back().peak, cur.peak);
        } else {
            report.events.push_back(cur);
        }
    };
    for (std::size_t i = 0; i < series.size(); ++i) {
        const double t = series.times[i];
        const double v = series.values[i];
        if (v > threshold) {
            if (!inside) {
                inside = true;
                cur = BurstEvent{t, t, v};
            } else {
                cur.end = t;
                cur.peak = std::max(cur.peak, v);
            }
        } else if (inside) {
            inside = false;
            flush();
        }
    }
    if (inside) flush();
    for (std::size_t i = 1; i < report.events.size(); ++i)
        report.intervals.push_back(report.events[i].onset - report.events[i - 1].onset);
    return report;
}

std::vector<double> tail_probabilities(const TimeSeries& series, const std::vector<Band>& bands,
                                       double spin_up) {
    series.validate();
    if (series.size() == 0) throw ConfigError("tail_probabilities: empty series");
    for (const auto& b : bands)
        if (!(b.hi >= b.lo)) throw ConfigError("tail_probabilities: band bounds out of order");

    std::size_t first = 0;
    while (first < series.size() && series.times[first] < spin_up) ++first;
    const std::size_t count = series.size() - first;
    if (count == 0) throw ConfigError("tail_probabilities: no samples left after spin-up discard");

    std::vector<double> fractions(bands.size(), 0.0);
    for (std::size_t i = first; i < series.size(); ++i) {
        const double v = series.values[i];
        for (std::size_t b = 0; b < bands.size(); ++b)
            if (v >= bands[b].lo && v <= bands[b].hi) fractions[b] += 1.0;
    }
    for (auto& f : fractions) f /= static_cast<double>(count);
    return fractions;
}

std::vector<ConvergenceRow> convergence_order(
    const std::vector<std::pair<double, double>>& errors) {
    std::vector<ConvergenceRow> rows;
    rows.reserve(errors.size());
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < errors.size(); ++i) {
        ConvergenceRow row;
        row.k = errors[i].first;
        row.error = errors[i].second;
        row.order = nan;
        if (i > 0) {
            if (!(errors[i].first < errors[i - 1].first))
                throw ConfigError("convergence_order: k values must be strictly decreasing");
            const double e_prev = errors[i - 1].second;
            const double e_cur = errors[i].second;
            if (e_prev > 0.0 && e_cur > 0.0 && std::isfinite(e_prev) && std::isfinite(e_cur)) {
                row.order = std::log(e_prev / e_cur) / std::log(errors[i - 1].first / errors[i].first);
                row.has_order = true;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace mrsav
