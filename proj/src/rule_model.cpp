// rule_model.cpp

#include "mibwarden/rule_model.hpp"

#include <string>

#include "mibwarden/errors.hpp"

namespace mibwarden {

std::string_view to_string(learner_id id) {
    switch (id) {
    case learner_id::zeror: return "zeror";
    case learner_id::oner: return "oner";
    case learner_id::jrip: return "jrip";
    case learner_id::part: return "part";
    case learner_id::dtable: return "dtable";
    }
    return "?";
}

std::optional<learner_id> learner_from(std::string_view name) {
    for (learner_id id : all_learners()) {
        if (name == to_string(id))
            return id;
    }
    return std::nullopt;
}

namespace {

const bin_cuts &cuts_for(const std::vector<bin_cuts> &cut_table, std::size_t attribute_index) {
    for (const auto &cuts : cut_table) {
        if (cuts.attribute_index == attribute_index)
            return cuts;
    }
    throw schema_error("model references missing cut table for attribute " +
                       std::to_string(attribute_index));
}

double attribute_value(const mib_record &r, std::size_t attribute_index) {
    if (attribute_index >= r.values.size())
        throw schema_error("record has " + std::to_string(r.values.size()) +
                           " attributes, model tests attribute " +
                           std::to_string(attribute_index));
    return r.values[attribute_index];
}

} // namespace

bool condition::matches(const mib_record &r, const std::vector<bin_cuts> &cut_table) const {
    const double v = attribute_value(r, attribute_index);
    switch (test) {
    case kind::leq: return v <= threshold;
    case kind::gt: return v > threshold;
    case kind::in_bin: return bin_of(cuts_for(cut_table, attribute_index), v) == bin;
    }
    return false;
}

bool rule::matches(const mib_record &r, const std::vector<bin_cuts> &cut_table) const {
    for (const auto &c : conditions) {
        if (!c.matches(r, cut_table))
            return false;
    }
    return true;
}

traffic_class predict(const rule_model &model, const mib_record &record) {
    for (const auto &ru : model.ordered_rules) {
        if (ru.matches(record, model.cut_table))
            return ru.consequent;
    }
    if (model.table) {
        const auto &core = *model.table;
        std::vector<std::size_t> key;
        key.reserve(core.selected_attributes.size());
        for (const std::size_t a : core.selected_attributes)
            key.push_back(bin_of(cuts_for(model.cut_table, a), attribute_value(record, a)));
        const auto it = core.cells.find(key);
        return it != core.cells.end() ? it->second : core.majority_class;
    }
    return model.default_class;
}

std::vector<traffic_class> predict_all(const rule_model &model, const dataset &ds) {
    if (!model.schema_fingerprint.empty() &&
        ds.get_schema().fingerprint() != model.schema_fingerprint)
        throw schema_error("dataset schema fingerprint " + ds.get_schema().fingerprint() +
                           " does not match model schema " + model.schema_fingerprint);
    std::vector<traffic_class> out;
    out.reserve(ds.size());
    for (const auto &r : ds.records())
        out.push_back(predict(model, r));
    return out;
}

} // namespace mibwarden
