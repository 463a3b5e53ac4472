// learner_util.hpp  (internal)

#ifndef MIBWARDEN_LEARNER_UTIL_HPP
#define MIBWARDEN_LEARNER_UTIL_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "mibwarden/schema.hpp"

namespace mibwarden::detail {

using index_list = std::vector<std::uint32_t>;

inline index_list all_indices(const dataset &ds) {
    index_list out(ds.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = static_cast<std::uint32_t>(i);
    return out;
}

inline std::array<std::size_t, traffic_class_count> count_classes(const dataset &ds,
                                                                  const index_list &rows) {
    std::array<std::size_t, traffic_class_count> counts{};
    for (const auto i : rows)
        ++counts[class_index(*ds.records()[i].label)];
    return counts;
}

/// lowest class index among maxima — the canonical-order tie-break
inline traffic_class majority_class(const std::array<std::size_t, traffic_class_count> &counts) {
    std::size_t best = 0;
    for (std::size_t c = 1; c < traffic_class_count; ++c) {
        if (counts[c] > counts[best])
            best = c;
    }
    return all_traffic_classes()[best];
}

inline double entropy_of(const std::array<std::size_t, traffic_class_count> &counts,
                         std::size_t total) {
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

} // namespace mibwarden::detail

#endif // MIBWARDEN_LEARNER_UTIL_HPP
