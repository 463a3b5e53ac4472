// learners.hpp
//
// Training entry points for the five rule learners. All training is pure
// given (dataset, params, seed) and all tie-breaks are fixed: lowest
// attribute index, leftmost threshold, canonical class order. Identical
// inputs therefore serialize to identical models.

#ifndef MIBWARDEN_LEARNERS_HPP
#define MIBWARDEN_LEARNERS_HPP

#include <cstdint>

#include "mibwarden/rule_model.hpp"

namespace mibwarden {

struct jrip_params {
    std::size_t folds = 3;         // grow/prune split is (1 - 1/folds) vs 1/folds
    std::size_t min_covered = 2;   // positives a rule must cover at acceptance
    std::size_t optimizations = 2; // revision passes
    std::uint64_t seed = 1;
};

struct part_params {
    double confidence = 0.25; // pessimistic-error confidence factor
    std::size_t min_leaf = 2; // minimum records per numeric branch
    std::uint64_t seed = 1;
};

struct dtable_params {
    std::size_t max_stale = 5; // best-first non-improving expansions
    std::uint64_t seed = 1;
};

struct oner_params {
    std::size_t min_bucket = 6;
};

/// Majority-class baseline: no rules, default class only.
rule_model train_zeror(const dataset &train);

/// Holte's 1R: bucket every attribute, keep the attribute whose bucket rules
/// make the fewest training errors.
rule_model train_oner(const dataset &train, const oner_params &params = {});

/// RIPPER: per class in ascending frequency order, grow rules by FOIL gain,
/// prune by (p - n) / (p + n), stop on the description-length criterion, then
/// run optimization passes that pit replacement and revision against each
/// accepted rule.
rule_model train_jrip(const dataset &train, const jrip_params &params = {});

/// PART: repeatedly build a partial C4.5 tree on the remaining records and
/// convert the leaf with the largest coverage into a rule.
rule_model train_part(const dataset &train, const part_params &params = {});

/// Decision table over MDL-discretized attributes; best-first subset search
/// scored by leave-one-out accuracy.
rule_model train_decision_table(const dataset &train, const dtable_params &params = {});

rule_model train(learner_id id, const dataset &train, std::uint64_t seed);

} // namespace mibwarden

#endif // MIBWARDEN_LEARNERS_HPP
