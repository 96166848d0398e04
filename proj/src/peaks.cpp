#include "probespec/peaks.hpp"

#include <cstddef>
#include <stdexcept>

namespace probespec {

namespace {

// Lowest sample on the walk from `from` toward `step` until the terrain
// first rises above `level` (exclusive) or the trace ends.
double base_level(const std::vector<double>& a, std::ptrdiff_t from,
                  std::ptrdiff_t step, double level) {
    double low = level;
    for (std::ptrdiff_t i = from;
         i >= 0 && i < static_cast<std::ptrdiff_t>(a.size()); i += step) {
        if (a[static_cast<std::size_t>(i)] > level) break;
        if (a[static_cast<std::size_t>(i)] < low)
            low = a[static_cast<std::size_t>(i)];
    }
    return low;
}

}  // namespace

std::vector<FoundPeak> find_peaks(const SpectrumTrace& trace,
                                  double min_prominence) {
    const auto& x = trace.delta;
    const auto& y = trace.absorption;
    if (x.size() != y.size())
        throw std::invalid_argument("find_peaks: delta/absorption length mismatch");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i - 1] < x[i]))
            throw std::invalid_argument("find_peaks: grid not strictly increasing");
    if (min_prominence < 0)
        throw std::invalid_argument("find_peaks: negative min_prominence");

    std::vector<FoundPeak> out;
    const std::size_t n = x.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(y[i] > y[i - 1])) continue;
        // Extend across a flat run at this height.
        std::size_t j = i;
        while (j + 1 < n && y[j + 1] == y[i]) ++j;
        if (j + 1 >= n || !(y[j + 1] < y[i])) {
            i = j;
            continue;  // rises again or runs off the edge: not a maximum
        }

        const std::size_t p = (i + j) / 2;
        FoundPeak peak;
        peak.delta = x[p];
        peak.height = y[p];

        const double left = base_level(y, static_cast<std::ptrdiff_t>(i) - 1,
                                       -1, y[i]);
        const double right = base_level(y, static_cast<std::ptrdiff_t>(j) + 1,
                                        +1, y[i]);
        peak.prominence = y[i] - (left > right ? left : right);

        if (i == j) {
            // Quadratic through the three samples around an isolated maximum
            // (Newton form handles non-uniform grids).
            const double s01 = (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
            const double s12 = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
            const double curv = (s12 - s01) / (x[i + 1] - x[i - 1]);
            if (curv < 0) {
                double v = 0.5 * (x[i - 1] + x[i]) - s01 / (2 * curv);
                if (v < x[i - 1]) v = x[i - 1];
                if (v > x[i + 1]) v = x[i + 1];
                peak.delta = v;
                peak.height = y[i - 1] + s01 * (v - x[i - 1]) +
                              curv * (v - x[i - 1]) * (v - x[i]);
            }
        }

        if (peak.prominence >= min_prominence) out.push_back(peak);
        i = j;
    }
    return out;
}

}  // namespace probespec
