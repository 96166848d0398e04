#pragma once

#include <vector>

#include "probespec/pathways.hpp"

namespace probespec {

// One local maximum of a sampled spectrum.
struct FoundPeak {
    double delta = 0.0;       // position, refined below grid resolution
    double height = 0.0;      // value at the refined position
    double prominence = 0.0;  // drop to the lowest contour enclosing only this peak
};

// Scans a sampled trace for local maxima.
//
// A peak is a sample strictly above both neighbours (a flat run bounded by
// lower samples counts once, at its midpoint).  Prominence follows the
// topographic convention: walk outward from the peak on each side until the
// terrain first exceeds the peak height (or the trace ends), take the lowest
// sample seen on each walk, and measure the drop to the higher of the two.
// Isolated maxima get a quadratic sub-grid refinement of position and height
// through the three samples around the peak; refinement never leaves that
// three-sample cell, and prominence is always measured on the raw samples.
//
// Peaks with prominence < min_prominence are dropped.  The result is sorted
// by position.  Throws std::invalid_argument for malformed traces (length
// mismatch, non-increasing grid) or a negative min_prominence.
std::vector<FoundPeak> find_peaks(const SpectrumTrace& trace,
                                  double min_prominence = 0.0);

}  // namespace probespec
