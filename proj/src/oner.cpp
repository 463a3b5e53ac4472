// oner.cpp
//
// Holte's 1R: bucket every attribute against the labels, score each
// attribute by its bucket rules' training errors, keep the cheapest one.

#include "mibwarden/errors.hpp"
#include "mibwarden/learners.hpp"

#include "learner_util.hpp"

namespace mibwarden {

rule_model train_oner(const dataset &train, const oner_params &params) {
    if (train.size() == 0)
        throw config_error("train_oner: empty training set");
    if (train.get_schema().size() == 0)
        throw config_error("train_oner: schema has no attributes");
    if (!train.fully_labeled())
        throw data_format_error("train_oner: training set has unlabeled records");

    const std::size_t n_attrs = train.get_schema().size();

    std::size_t best_attr = 0;
    std::size_t best_errors = 0;
    bin_cuts best_cuts;
    std::vector<traffic_class> best_bin_classes;

    for (std::size_t a = 0; a < n_attrs; ++a) {
        std::vector<labeled_value> column;
        column.reserve(train.size());
        for (const auto &r : train.records())
            column.emplace_back(r.values[a], *r.label);

        const bin_cuts cuts = fit_oner_buckets(std::move(column), params.min_bucket, a);

        // majority class and error count per bin
        std::vector<std::array<std::size_t, traffic_class_count>> bins(cuts.bin_count());
        for (const auto &r : train.records())
            ++bins[bin_of(cuts, r.values[a])][class_index(*r.label)];

        std::vector<traffic_class> bin_classes;
        std::size_t errors = 0;
        for (const auto &counts : bins) {
            const traffic_class m = detail::majority_class(counts);
            bin_classes.push_back(m);
            std::size_t total = 0;
            for (const std::size_t c : counts)
                total += c;
            errors += total - counts[class_index(m)];
        }

        if (a == 0 || errors < best_errors) { // ties keep the lowest index
            best_attr = a;
            best_errors = errors;
            best_cuts = cuts;
            best_bin_classes = std::move(bin_classes);
        }
    }

    rule_model model;
    model.learner = learner_id::oner;
    model.schema_fingerprint = train.get_schema().fingerprint();
    model.params["min_bucket"] = std::to_string(params.min_bucket);
    model.default_class = detail::majority_class(class_histogram(train));
    model.cut_table.push_back(best_cuts);
    for (std::size_t b = 0; b < best_bin_classes.size(); ++b) {
        rule ru;
        ru.conditions.push_back(condition{best_attr, condition::kind::in_bin, 0.0, b});
        ru.consequent = best_bin_classes[b];
        model.ordered_rules.push_back(std::move(ru));
    }
    return model;
}

} // namespace mibwarden
