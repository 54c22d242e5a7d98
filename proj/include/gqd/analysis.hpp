// analysis.hpp - peak extraction, revival statistics, and scaling fits

#pragma once

#include <vector>

#include "gqd/dynamics.hpp"

namespace gqd {

struct PeakSet {
    std::vector<double> peak_times;  // strictly increasing
    std::vector<double> peak_values; // each >= threshold
    double threshold = 0.0;

    int count() const { return static_cast<int>(peak_times.size()); }
};

struct FitResult {
    std::vector<double> coefficients; // constant first
    double residual_rms = 0.0;
    int degree = 0;
};

// Strict three-point local maxima at or above the threshold; a plateau peak
// is reported at its leftmost index. Needs at least 3 points.
PeakSet find_peaks(const TimeSeries& series, double threshold);

// Threshold defaulted to 5% of the series maximum.
PeakSet find_peaks(const TimeSeries& series);

// Maxima per unit scaled time (m_R; the figure captions call it t_R).
double revival_rate(const PeakSet& peaks, double t_span);

struct SeriesMax {
    double value = 0.0;
    double time = 0.0; // earliest time attaining the maximum within 1e-12
};

SeriesMax max_quantifier(const TimeSeries& series);

// Delta t_2 = t_peak(reference) - t_peak(target); positive when the target's
// revival arrives earlier. Uses the second peak by default.
double revival_shift(const PeakSet& reference, const PeakSet& target, int peak_index = 1);

// Least-squares polynomial fit, degree 1 or 2; throws on rank deficiency.
FitResult polyfit(const std::vector<double>& xs, const std::vector<double>& ys, int degree);

// Degree-1 fit of GQD values against VNE values on a shared time grid.
FitResult slope_gqd_vs_vne(const TimeSeries& gqd, const TimeSeries& vne);

} // namespace gqd
