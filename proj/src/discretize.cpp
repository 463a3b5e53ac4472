// discretize.cpp

#include "mibwarden/discretize.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "mibwarden/errors.hpp"

namespace mibwarden {

namespace {

struct value_group {
    double value = 0.0;
    std::array<std::size_t, traffic_class_count> counts{};
    std::size_t total = 0;
};

// sort by (value, class) and collapse equal values into one group
std::vector<value_group> group_values(std::vector<labeled_value> &values) {
    std::sort(values.begin(), values.end(), [](const labeled_value &a, const labeled_value &b) {
        if (a.first != b.first)
            return a.first < b.first;
        return class_index(a.second) < class_index(b.second);
    });
    std::vector<value_group> groups;
    for (const auto &[v, c] : values) {
        if (groups.empty() || groups.back().value != v) {
            groups.push_back(value_group{});
            groups.back().value = v;
        }
        ++groups.back().counts[class_index(c)];
        ++groups.back().total;
    }
    return groups;
}

std::size_t majority_of(const std::array<std::size_t, traffic_class_count> &counts) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < traffic_class_count; ++c) {
        if (counts[c] > counts[best])
            best = c;
    }
    return best;
}

double entropy(const std::array<std::size_t, traffic_class_count> &counts, std::size_t total) {
    if (total == 0)
        return 0.0;
    double e = 0.0;
    for (const std::size_t n : counts) {
        if (n == 0)
            continue;
        const double p = static_cast<double>(n) / static_cast<double>(total);
        e -= p * std::log2(p);
    }
    return e;
}

std::size_t distinct_classes(const std::array<std::size_t, traffic_class_count> &counts) {
    std::size_t k = 0;
    for (const std::size_t n : counts)
        k += n > 0 ? 1 : 0;
    return k;
}

// Fayyad & Irani's MDL stopping criterion, recursing over [lo, hi) groups.
void mdl_split(const std::vector<value_group> &groups, std::size_t lo, std::size_t hi,
               std::vector<double> &cuts) {
    std::array<std::size_t, traffic_class_count> total_counts{};
    std::size_t total = 0;
    for (std::size_t g = lo; g < hi; ++g) {
        for (std::size_t c = 0; c < traffic_class_count; ++c)
            total_counts[c] += groups[g].counts[c];
        total += groups[g].total;
    }
    if (hi - lo < 2 || distinct_classes(total_counts) < 2)
        return;

    const double parent_entropy = entropy(total_counts, total);

    // best boundary candidate; strict improvement keeps the leftmost on ties
    double best_split_entropy = 0.0;
    std::size_t best_boundary = 0; // split before group index best_boundary
    bool found = false;

    std::array<std::size_t, traffic_class_count> left_counts{};
    std::size_t left_total = 0;
    for (std::size_t g = lo; g + 1 < hi; ++g) {
        for (std::size_t c = 0; c < traffic_class_count; ++c)
            left_counts[c] += groups[g].counts[c];
        left_total += groups[g].total;

        // a boundary exists unless both neighbours are pure in the same class
        const auto &a = groups[g], &b = groups[g + 1];
        const std::size_t am = majority_of(a.counts), bm = majority_of(b.counts);
        const bool same_pure = a.counts[am] == a.total && b.counts[bm] == b.total && am == bm;
        if (same_pure)
            continue;

        std::array<std::size_t, traffic_class_count> right_counts{};
        for (std::size_t c = 0; c < traffic_class_count; ++c)
            right_counts[c] = total_counts[c] - left_counts[c];
        const std::size_t right_total = total - left_total;

        const double split_entropy =
            (static_cast<double>(left_total) * entropy(left_counts, left_total) +
             static_cast<double>(right_total) * entropy(right_counts, right_total)) /
            static_cast<double>(total);
        if (!found || split_entropy < best_split_entropy) {
            found = true;
            best_split_entropy = split_entropy;
            best_boundary = g + 1;
        }
    }
    if (!found)
        return;

    const double gain = parent_entropy - best_split_entropy;

    // recompute subset stats at the winning boundary for the MDL test
    std::array<std::size_t, traffic_class_count> lc{}, rc{};
    std::size_t ln = 0, rn = 0;
    for (std::size_t g = lo; g < best_boundary; ++g) {
        for (std::size_t c = 0; c < traffic_class_count; ++c)
            lc[c] += groups[g].counts[c];
        ln += groups[g].total;
    }
    for (std::size_t c = 0; c < traffic_class_count; ++c)
        rc[c] = total_counts[c] - lc[c];
    rn = total - ln;

    const double k = static_cast<double>(distinct_classes(total_counts));
    const double k1 = static_cast<double>(distinct_classes(lc));
    const double k2 = static_cast<double>(distinct_classes(rc));
    const double delta = std::log2(std::pow(3.0, k) - 2.0) -
                         (k * parent_entropy - k1 * entropy(lc, ln) - k2 * entropy(rc, rn));
    const double n = static_cast<double>(total);
    const double threshold = (std::log2(n - 1.0) + delta) / n;
    if (gain <= threshold)
        return;

    mdl_split(groups, lo, best_boundary, cuts);
    cuts.push_back((groups[best_boundary - 1].value + groups[best_boundary].value) / 2.0);
    mdl_split(groups, best_boundary, hi, cuts);
}

} // namespace

bin_cuts fit_oner_buckets(std::vector<labeled_value> values, std::size_t min_bucket,
                          std::size_t attribute_index) {
    if (values.empty())
        throw config_error("fit_oner_buckets: empty input");
    if (min_bucket < 1)
        throw config_error("fit_oner_buckets: min_bucket must be >= 1");

    const std::vector<value_group> groups = group_values(values);

    // sweep: close a bucket once its majority class has min_bucket members
    std::vector<std::size_t> boundaries; // bucket ends at group index (exclusive)
    std::array<std::size_t, traffic_class_count> bucket{};
    std::size_t bucket_max = 0;
    for (std::size_t g = 0; g < groups.size(); ++g) {
        for (std::size_t c = 0; c < traffic_class_count; ++c) {
            bucket[c] += groups[g].counts[c];
            bucket_max = std::max(bucket_max, bucket[c]);
        }
        if (bucket_max >= min_bucket && g + 1 < groups.size()) {
            boundaries.push_back(g + 1);
            bucket.fill(0);
            bucket_max = 0;
        }
    }
    boundaries.push_back(groups.size());

    // majority per bucket, then merge adjacent buckets of the same majority
    std::vector<std::size_t> majorities;
    std::size_t start = 0;
    for (const std::size_t end : boundaries) {
        std::array<std::size_t, traffic_class_count> counts{};
        for (std::size_t g = start; g < end; ++g) {
            for (std::size_t c = 0; c < traffic_class_count; ++c)
                counts[c] += groups[g].counts[c];
        }
        majorities.push_back(majority_of(counts));
        start = end;
    }

    bin_cuts out;
    out.attribute_index = attribute_index;
    for (std::size_t b = 0; b + 1 < boundaries.size(); ++b) {
        if (majorities[b] == majorities[b + 1])
            continue;
        const std::size_t g = boundaries[b];
        out.cuts.push_back((groups[g - 1].value + groups[g].value) / 2.0);
    }
    return out;
}

bin_cuts fit_mdl_bins(std::vector<labeled_value> values, std::size_t attribute_index) {
    if (values.empty())
        throw config_error("fit_mdl_bins: empty input");
    const std::vector<value_group> groups = group_values(values);
    bin_cuts out;
    out.attribute_index = attribute_index;
    mdl_split(groups, 0, groups.size(), out.cuts);
    return out;
}

std::size_t bin_of(const bin_cuts &cuts, double value) {
    const auto it = std::lower_bound(cuts.cuts.begin(), cuts.cuts.end(), value);
    return static_cast<std::size_t>(it - cuts.cuts.begin());
}

} // namespace mibwarden
