// discretize.hpp
//
// Supervised binning for the learners that need discrete predictors. Bins
// are (lo, hi]: k cuts define k+1 bins, bin b covers (cut[b-1], cut[b]], and
// values above the last cut fall in the final bin.

#ifndef MIBWARDEN_DISCRETIZE_HPP
#define MIBWARDEN_DISCRETIZE_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "mibwarden/traffic_class.hpp"

namespace mibwarden {

struct bin_cuts {
    std::size_t attribute_index = 0;
    std::vector<double> cuts; // strictly ascending, possibly empty

    std::size_t bin_count() const { return cuts.size() + 1; }
    bool operator==(const bin_cuts &) const = default;
};

using labeled_value = std::pair<double, traffic_class>;

/// Holte-style 1R bucketing: sort by value, sweep left to right, close a
/// bucket at the earliest distinct-value boundary where its majority class
/// holds at least min_bucket instances, then merge adjacent buckets that
/// share a majority class. Cuts sit midway between adjacent distinct values.
bin_cuts fit_oner_buckets(std::vector<labeled_value> values,
                          std::size_t min_bucket,
                          std::size_t attribute_index = 0);

/// Recursive entropy-minimizing binary splits accepted only when information
/// gain clears the MDL encoding cost of the split. Candidate cuts are
/// midpoints between adjacent distinct values whose label sets differ; equal
/// entropy picks the leftmost candidate.
bin_cuts fit_mdl_bins(std::vector<labeled_value> values,
                      std::size_t attribute_index = 0);

std::size_t bin_of(const bin_cuts &cuts, double value);

} // namespace mibwarden

#endif // MIBWARDEN_DISCRETIZE_HPP
