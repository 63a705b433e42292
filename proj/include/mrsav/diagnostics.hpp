#pragma once

#include <complex>
#include <string>
#include <vector>

#include "mrsav/spectral_field.hpp"

namespace mrsav {

/// Sampled scalar time series with strictly increasing times.
struct TimeSeries {
    std::vector<double> times;
    std::vector<double> values;
    std::string label;

    std::size_t size() const { return times.size(); }
    void validate() const;
    bool uniform(double rel_tol = 1e-9) const;
};

struct BurstEvent {
    double onset = 0.0;
    double end = 0.0;
    double peak = 0.0;
};

struct BurstReport {
    std::vector<BurstEvent> events;
    std::vector<double> intervals;  // onset-to-onset gaps
};

/// (||omega||^2, ||grad omega||^2): squared L2 norms; callers take square
/// roots when reporting plain norms.
std::pair<double, double> field_norms(const SpectralField& omega, double froude = 0.0);

/// Fourier coefficient at one signed wavevector.
std::complex<double> mode_trace(const SpectralField& omega, const Wavevector& kappa);

struct Periodogram {
    std::vector<double> frequency;  // cycles per time unit, one-sided
    std::vector<double> power;      // sums to the series variance (window-corrected)
};

enum class PsdWindow { none, hann };

/// One-sided periodogram of the mean-removed series. Requires uniform
/// sampling and at least 8 samples.
Periodogram periodogram(const TimeSeries& series, PsdWindow window = PsdWindow::hann);

/// Maximal excursions above `threshold`; excursions with onset gaps smaller
/// than `min_separation` from the previous end are merged.
BurstReport detect_bursts(const TimeSeries& series, double threshold, double min_separation);

struct Band {
    double lo = 0.0;
    double hi = 0.0;  // +inf for half-open bands
};

/// Fraction of samples with t >= spin_up falling inside each closed band.
std::vector<double> tail_probabilities(const TimeSeries& series, const std::vector<Band>& bands,
                                       double spin_up = 0.0);

struct ConvergenceRow {
    double k = 0.0;
    double error = 0.0;
    double order = 0.0;     // NaN on the first row or when undefined
    bool has_order = false;
};

/// order_i = log(e_{i-1}/e_i) / log(k_{i-1}/k_i) over successive rows; a zero
/// error leaves the order flagged undefined.
std::vector<ConvergenceRow> convergence_order(const std::vector<std::pair<double, double>>& errors);

}  // namespace mrsav
