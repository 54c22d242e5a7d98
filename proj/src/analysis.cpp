#include "gqd/analysis.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace gqd {

PeakSet find_peaks(const TimeSeries& series, double threshold) {
    const auto& v = series.values;
    const auto n = v.size();
    if (n < 3) {
        throw std::invalid_argument("find_peaks: series needs at least 3 points");
    }
    if (series.times.size() != n) {
        throw std::invalid_argument("find_peaks: times/values size mismatch");
    }
    PeakSet peaks;
    peaks.threshold = threshold;
    std::size_t i = 1;
    while (i + 1 < n) {
        if (v[i] <= v[i - 1]) {
            ++i;
            continue;
        }
        // extend over a possible plateau; the peak index stays at its left edge
        std::size_t j = i;
        while (j + 1 < n && v[j + 1] == v[i]) {
            ++j;
        }
        if (j + 1 < n && v[j + 1] < v[i] && v[i] >= threshold) {
            peaks.peak_times.push_back(series.times[i]);
            peaks.peak_values.push_back(v[i]);
        }
        i = j + 1;
    }
    return peaks;
}

PeakSet find_peaks(const TimeSeries& series) {
    double max_value = 0.0;
    for (const double v : series.values) {
        max_value = std::max(max_value, v);
    }
    return find_peaks(series, 0.05 * max_value);
}

double revival_rate(const PeakSet& peaks, double t_span) {
    if (!(t_span > 0.0)) {
        throw std::invalid_argument("revival_rate: t_span must be > 0");
    }
    return static_cast<double>(peaks.count()) / t_span;
}

SeriesMax max_quantifier(const TimeSeries& series) {
    if (series.values.empty()) {
        throw std::invalid_argument("max_quantifier: empty series");
    }
    double max_value = series.values.front();
    for (const double v : series.values) {
        max_value = std::max(max_value, v);
    }
    for (std::size_t i = 0; i < series.values.size(); ++i) {
        if (series.values[i] >= max_value - 1e-12) {
            return {max_value, series.times[i]};
        }
    }
    return {max_value, series.times.front()}; // unreachable
}

double revival_shift(const PeakSet& reference, const PeakSet& target, int peak_index) {
    if (peak_index < 0) {
        throw std::invalid_argument("revival_shift: peak_index must be >= 0");
    }
    if (reference.count() <= peak_index || target.count() <= peak_index) {
        throw std::invalid_argument("revival_shift: not enough peaks");
    }
    return reference.peak_times[static_cast<std::size_t>(peak_index)] -
           target.peak_times[static_cast<std::size_t>(peak_index)];
}

FitResult polyfit(const std::vector<double>& xs, const std::vector<double>& ys, int degree) {
    if (degree < 1 || degree > 2) {
        throw std::invalid_argument("polyfit: degree must be 1 or 2");
    }
    const auto n = xs.size();
    if (ys.size() != n || static_cast<int>(n) < degree + 1) {
        throw std::invalid_argument("polyfit: need at least degree+1 samples");
    }

    Eigen::MatrixXd vander(n, degree + 1);
    Eigen::VectorXd rhs(n);
    for (std::size_t i = 0; i < n; ++i) {
        double power = 1.0;
        for (int d = 0; d <= degree; ++d) {
            vander(static_cast<Eigen::Index>(i), d) = power;
            power *= xs[i];
        }
        rhs(static_cast<Eigen::Index>(i)) = ys[i];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vander);
    if (qr.rank() < degree + 1) {
        throw std::invalid_argument("polyfit: rank-deficient design (duplicate xs)");
    }
    const Eigen::VectorXd coeffs = qr.solve(rhs);

    FitResult fit;
    fit.degree = degree;
    fit.coefficients.assign(coeffs.data(), coeffs.data() + coeffs.size());
    fit.residual_rms =
        std::sqrt((vander * coeffs - rhs).squaredNorm() / static_cast<double>(n));
    return fit;
}

FitResult slope_gqd_vs_vne(const TimeSeries& gqd, const TimeSeries& vne) {
    if (gqd.times != vne.times) {
        throw std::invalid_argument("slope_gqd_vs_vne: time grids differ");
    }
    return polyfit(vne.values, gqd.values, 1);
}

} // namespace gqd
