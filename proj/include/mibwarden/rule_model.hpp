// rule_model.hpp
//
// Shared trained-model representation for the five learners, plus the one
// prediction contract. A model is immutable once trained and safe to share
// across threads.

#ifndef MIBWARDEN_RULE_MODEL_HPP
#define MIBWARDEN_RULE_MODEL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mibwarden/discretize.hpp"
#include "mibwarden/schema.hpp"

namespace mibwarden {

enum class learner_id : std::uint8_t { zeror = 0, oner, jrip, part, dtable };

inline constexpr std::size_t learner_count = 5;

constexpr std::array<learner_id, learner_count> all_learners() {
    return {learner_id::zeror, learner_id::oner, learner_id::jrip,
            learner_id::part, learner_id::dtable};
}

std::string_view to_string(learner_id id);
std::optional<learner_id> learner_from(std::string_view name);

/// One antecedent atom: a threshold test or a bin-membership test.
struct condition {
    enum class kind : std::uint8_t { leq, gt, in_bin };

    std::size_t attribute_index = 0;
    kind test = kind::leq;
    double threshold = 0.0; // leq / gt
    std::size_t bin = 0;    // in_bin

    bool matches(const mib_record &r, const std::vector<bin_cuts> &cut_table) const;
    bool operator==(const condition &) const = default;
};

/// Conjunction of conditions; an empty conjunction matches everything.
struct rule {
    std::vector<condition> conditions;
    traffic_class consequent = traffic_class::normal;

    bool matches(const mib_record &r, const std::vector<bin_cuts> &cut_table) const;
    bool operator==(const rule &) const = default;
};

/// Decision-table body: bin-id tuples over the selected attributes mapped to
/// a class; lookups that miss fall back to the majority class.
struct decision_table_core {
    std::vector<std::size_t> selected_attributes;
    // cell key = bin ids in selected_attributes order
    std::map<std::vector<std::size_t>, traffic_class> cells;
    traffic_class majority_class = traffic_class::normal;

    bool operator==(const decision_table_core &) const = default;
};

struct rule_model {
    learner_id learner = learner_id::zeror;
    std::string schema_fingerprint;
    std::map<std::string, std::string> params;

    std::vector<rule> ordered_rules;       // first match wins
    traffic_class default_class = traffic_class::normal;

    // cut tables for in_bin conditions (oner) and for dtable lookups,
    // indexed by position, each entry naming its attribute_index
    std::vector<bin_cuts> cut_table;
    std::optional<decision_table_core> table; // dtable only

    bool operator==(const rule_model &) const = default;
};

/// First matching rule's class, else table lookup for dtable, else the
/// default class. Throws schema_error when the record width does not match
/// the model's conditions.
traffic_class predict(const rule_model &model, const mib_record &record);

std::vector<traffic_class> predict_all(const rule_model &model, const dataset &ds);

/// Text format round trip (grammar in docs/formats.md).
std::string serialize_model(const rule_model &model);
rule_model parse_model(std::istream &in);
rule_model parse_model_text(const std::string &text);

void write_model_file(const rule_model &model, const std::string &path);
rule_model load_model_file(const std::string &path);

} // namespace mibwarden

#endif // MIBWARDEN_RULE_MODEL_HPP
