// test_data.hpp — shared dataset builders for the test suites

#ifndef MIBWARDEN_TEST_DATA_HPP
#define MIBWARDEN_TEST_DATA_HPP

#include <string>
#include <vector>

#include "mibwarden/rng.hpp"
#include "mibwarden/rule_model.hpp"
#include "mibwarden/schema.hpp"

namespace mibwarden::test {

inline schema make_schema(std::size_t n_attrs) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n_attrs; ++i)
        names.push_back("x" + std::to_string(i));
    return schema{names};
}

inline dataset make_dataset(const std::vector<std::vector<double>> &rows,
                            const std::vector<traffic_class> &labels,
                            const std::string &provenance = "test") {
    std::vector<mib_record> records;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        mib_record r;
        r.values = rows[i];
        if (i < labels.size())
            r.label = labels[i];
        records.push_back(std::move(r));
    }
    return dataset(make_schema(rows.empty() ? 0 : rows[0].size()), std::move(records), provenance);
}

/// Noiseless dataset whose classes occupy disjoint axis-aligned boxes: class
/// k lives in grid cell (k mod 3, k div 3) on two randomly chosen signature
/// attributes; box edges are separated by gaps of width 4. Remaining
/// attributes are uninformative uniform noise.
inline dataset grid_box_dataset(rng &gen, std::size_t n_classes, std::size_t n_attrs,
                                std::size_t per_class) {
    const std::size_t a1 = gen.below(n_attrs);
    std::size_t a2 = gen.below(n_attrs);
    if (n_attrs > 1) {
        while (a2 == a1)
            a2 = gen.below(n_attrs);
    }

    std::vector<std::vector<double>> rows;
    std::vector<traffic_class> labels;
    for (std::size_t c = 0; c < n_classes; ++c) {
        // single-attribute datasets fall back to one slab per class
        const double lo1 = n_attrs == 1 ? 20.0 * static_cast<double>(c) + 2.0
                                        : 20.0 * static_cast<double>(c % 3) + 2.0;
        const double lo2 = 20.0 * static_cast<double>(c / 3) + 2.0;
        for (std::size_t k = 0; k < per_class; ++k) {
            std::vector<double> row(n_attrs);
            for (std::size_t a = 0; a < n_attrs; ++a)
                row[a] = gen.uniform(0.0, 100.0);
            row[a1] = gen.uniform(lo1, lo1 + 16.0);
            if (n_attrs > 1)
                row[a2] = gen.uniform(lo2, lo2 + 16.0);
            rows.push_back(std::move(row));
            labels.push_back(all_traffic_classes()[c]);
        }
    }
    return make_dataset(rows, labels, "boxes");
}

inline double training_accuracy(const rule_model &model, const dataset &ds) {
    std::size_t correct = 0;
    for (const auto &r : ds.records())
        correct += predict(model, r) == *r.label ? 1 : 0;
    return static_cast<double>(correct) / static_cast<double>(ds.size());
}

} // namespace mibwarden::test

#endif
