// decision_table.cpp
//
// Decision table over MDL-discretized attributes. Best-first forward search
// from the empty attribute subset, each subset scored by leave-one-out
// accuracy of its induced table: a cell predicts the majority class of the
// other training records sharing its bin tuple, and empty cells fall back to
// the global majority. The search stops after max_stale expansions that fail
// to improve the incumbent.

#include <algorithm>
#include <map>
#include <set>

#include "mibwarden/errors.hpp"
#include "mibwarden/learners.hpp"

#include "learner_util.hpp"

namespace mibwarden {

namespace {

using subset = std::vector<std::size_t>; // sorted attribute indices

struct loo_scorer {
    const dataset *ds = nullptr;
    std::vector<std::vector<std::size_t>> bins; // [record][attribute]
    traffic_class global_majority = traffic_class::normal;

    std::size_t score(const subset &attrs) const {
        std::map<std::vector<std::size_t>, std::array<std::size_t, traffic_class_count>> cells;
        std::vector<std::size_t> key(attrs.size());
        for (std::size_t i = 0; i < ds->size(); ++i) {
            for (std::size_t k = 0; k < attrs.size(); ++k)
                key[k] = bins[i][attrs[k]];
            ++cells[key][class_index(*ds->records()[i].label)];
        }

        std::size_t correct = 0;
        for (std::size_t i = 0; i < ds->size(); ++i) {
            for (std::size_t k = 0; k < attrs.size(); ++k)
                key[k] = bins[i][attrs[k]];
            auto counts = cells.find(key)->second;
            --counts[class_index(*ds->records()[i].label)]; // leave self out
            std::size_t total = 0;
            for (const std::size_t n : counts)
                total += n;
            const traffic_class predicted =
                total == 0 ? global_majority : detail::majority_class(counts);
            correct += predicted == *ds->records()[i].label ? 1 : 0;
        }
        return correct;
    }
};

// lower is better on equal accuracy: smaller subsets, then lexicographic
bool subset_preferred(const subset &a, const subset &b) {
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

} // namespace

rule_model train_decision_table(const dataset &train, const dtable_params &params) {
    if (train.size() == 0)
        throw config_error("train_decision_table: empty training set");
    if (!train.fully_labeled())
        throw data_format_error("train_decision_table: training set has unlabeled records");

    const std::size_t n_attrs = train.get_schema().size();

    std::vector<bin_cuts> all_cuts(n_attrs);
    for (std::size_t a = 0; a < n_attrs; ++a) {
        std::vector<labeled_value> column;
        column.reserve(train.size());
        for (const auto &r : train.records())
            column.emplace_back(r.values[a], *r.label);
        all_cuts[a] = fit_mdl_bins(std::move(column), a);
    }

    loo_scorer scorer;
    scorer.ds = &train;
    scorer.global_majority = detail::majority_class(class_histogram(train));
    scorer.bins.assign(train.size(), std::vector<std::size_t>(n_attrs));
    for (std::size_t i = 0; i < train.size(); ++i) {
        for (std::size_t a = 0; a < n_attrs; ++a)
            scorer.bins[i][a] = bin_of(all_cuts[a], train.records()[i].values[a]);
    }

    // best-first search
    std::map<subset, std::size_t> evaluated;
    auto evaluate = [&](const subset &s) {
        const auto it = evaluated.find(s);
        if (it != evaluated.end())
            return it->second;
        const std::size_t correct = scorer.score(s);
        evaluated.emplace(s, correct);
        return correct;
    };

    subset best_subset;
    std::size_t best_correct = evaluate(best_subset);

    // open list ordered best first: higher accuracy, then preferred subset
    auto open_order = [](const std::pair<std::size_t, subset> &a,
                         const std::pair<std::size_t, subset> &b) {
        if (a.first != b.first)
            return a.first > b.first;
        return subset_preferred(a.second, b.second);
    };
    std::set<std::pair<std::size_t, subset>, decltype(open_order)> open(open_order);
    std::set<subset> queued;
    open.emplace(best_correct, best_subset);
    queued.insert(best_subset);

    std::size_t stale = 0;
    while (!open.empty() && stale < params.max_stale) {
        const auto [node_correct, node] = *open.begin();
        open.erase(open.begin());

        bool improved = false;
        for (std::size_t a = 0; a < n_attrs; ++a) {
            if (std::find(node.begin(), node.end(), a) != node.end())
                continue;
            subset child = node;
            child.insert(std::lower_bound(child.begin(), child.end(), a), a);
            const bool fresh = !queued.contains(child);
            const std::size_t correct = evaluate(child);
            if (fresh) {
                open.emplace(correct, child);
                queued.insert(child);
            }
            if (correct > best_correct ||
                (correct == best_correct && subset_preferred(child, best_subset))) {
                improved = improved || correct > best_correct;
                best_correct = correct;
                best_subset = child;
            }
        }
        stale = improved ? 0 : stale + 1;
    }

    // final table cells hold the full-data majority per bin tuple
    decision_table_core core;
    core.selected_attributes = best_subset;
    core.majority_class = scorer.global_majority;
    if (!best_subset.empty()) {
        std::map<std::vector<std::size_t>, std::array<std::size_t, traffic_class_count>> cells;
        std::vector<std::size_t> key(best_subset.size());
        for (std::size_t i = 0; i < train.size(); ++i) {
            for (std::size_t k = 0; k < best_subset.size(); ++k)
                key[k] = scorer.bins[i][best_subset[k]];
            ++cells[key][class_index(*train.records()[i].label)];
        }
        for (const auto &[cell_key, counts] : cells)
            core.cells.emplace(cell_key, detail::majority_class(counts));
    }

    rule_model model;
    model.learner = learner_id::dtable;
    model.schema_fingerprint = train.get_schema().fingerprint();
    model.params["max_stale"] = std::to_string(params.max_stale);
    model.params["seed"] = std::to_string(params.seed);
    model.default_class = scorer.global_majority;
    for (const std::size_t a : best_subset)
        model.cut_table.push_back(all_cuts[a]);
    model.table = std::move(core);
    return model;
}

rule_model train(learner_id id, const dataset &train_set, std::uint64_t seed) {
    switch (id) {
    case learner_id::zeror: return train_zeror(train_set);
    case learner_id::oner: return train_oner(train_set, oner_params{});
    case learner_id::jrip: {
        jrip_params p;
        p.seed = seed;
        return train_jrip(train_set, p);
    }
    case learner_id::part: {
        part_params p;
        p.seed = seed;
        return train_part(train_set, p);
    }
    case learner_id::dtable: {
        dtable_params p;
        p.seed = seed;
        return train_decision_table(train_set, p);
    }
    }
    throw config_error("unknown learner");
}

} // namespace mibwarden
