// schema.cpp

#include "mibwarden/schema.hpp"

#include <cmath>
#include <cstdio>
#include <unordered_set>

#include "mibwarden/errors.hpp"
#include "mibwarden/rng.hpp"

namespace mibwarden {

schema::schema(std::vector<std::string> names) {
    std::unordered_set<std::string_view> seen;
    attrs_.reserve(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i].empty())
            throw data_format_error("schema: empty attribute name at index " + std::to_string(i));
        if (!seen.insert(names[i]).second)
            throw data_format_error("schema: duplicate attribute name '" + names[i] + "'");
        attrs_.push_back(attribute_spec{std::move(names[i]), i});
    }
}

std::vector<std::string> schema::names() const {
    std::vector<std::string> out;
    out.reserve(attrs_.size());
    for (const auto &a : attrs_)
        out.push_back(a.name);
    return out;
}

std::optional<std::size_t> schema::find(std::string_view name) const {
    for (const auto &a : attrs_) {
        if (a.name == name)
            return a.index;
    }
    return std::nullopt;
}

std::string schema::fingerprint() const {
    // FNV-1a over names separated by '\n'
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](char ch) {
        h ^= static_cast<unsigned char>(ch);
        h *= 0x100000001b3ULL;
    };
    for (const auto &a : attrs_) {
        for (char ch : a.name)
            mix(ch);
        mix('\n');
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

bool schema::operator==(const schema &other) const {
    if (attrs_.size() != other.attrs_.size())
        return false;
    for (std::size_t i = 0; i < attrs_.size(); ++i) {
        if (attrs_[i].name != other.attrs_[i].name)
            return false;
    }
    return true;
}

schema schema::default_interface_group() {
    return schema{{
        "ifInOctets", "ifOutOctets", "ifInUcastPkts", "ifOutUcastPkts",
        "ifInNUcastPkts", "ifOutNUcastPkts", "ifInDiscards", "ifOutDiscards",
        "ifInErrors", "ifOutErrors", "ifOutQLen",
    }};
}

dataset::dataset(schema s, std::vector<mib_record> records, std::string provenance)
    : schema_(std::move(s)), records_(std::move(records)), provenance_(std::move(provenance)) {
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto &r = records_[i];
        if (r.values.size() != schema_.size())
            throw data_format_error("record " + std::to_string(i) + ": has " +
                                    std::to_string(r.values.size()) + " values, schema has " +
                                    std::to_string(schema_.size()));
        for (std::size_t j = 0; j < r.values.size(); ++j) {
            const double v = r.values[j];
            if (!std::isfinite(v) || v < 0.0)
                throw data_format_error("record " + std::to_string(i) + ", attribute '" +
                                        schema_.at(j).name + "': value must be finite and >= 0");
        }
    }
}

bool dataset::fully_labeled() const {
    for (const auto &r : records_) {
        if (!r.label)
            return false;
    }
    return true;
}

std::array<std::size_t, traffic_class_count> class_histogram(const dataset &ds) {
    std::array<std::size_t, traffic_class_count> counts{};
    for (std::size_t i = 0; i < ds.records().size(); ++i) {
        const auto &r = ds.records()[i];
        if (!r.label)
            throw data_format_error("record " + std::to_string(i) + " is unlabeled");
        ++counts[class_index(*r.label)];
    }
    return counts;
}

namespace {

// floor(fraction * n) with the fraction taken at 9-decimal precision, in
// integer arithmetic. The IEEE double for 0.7 sits just below the decimal
// value, so a naive floor(0.7 * 600) can land on 419; the split counts are
// contractual, so the written decimal wins.
std::size_t exact_floor_mul(double fraction, std::size_t n) {
    const auto scaled = static_cast<unsigned long long>(std::llround(fraction * 1e9));
    const unsigned __int128 prod =
        static_cast<unsigned __int128>(scaled) * static_cast<unsigned __int128>(n);
    return static_cast<std::size_t>(prod / 1000000000ULL);
}

} // namespace

std::pair<dataset, dataset> stratified_split(const dataset &ds, double train_fraction,
                                             std::uint64_t seed) {
    if (!(train_fraction > 0.0 && train_fraction < 1.0))
        throw config_error("train fraction must lie in (0, 1)");

    std::array<std::vector<std::size_t>, traffic_class_count> by_class;
    for (std::size_t i = 0; i < ds.records().size(); ++i) {
        const auto &r = ds.records()[i];
        if (!r.label)
            throw data_format_error("record " + std::to_string(i) + " is unlabeled");
        by_class[class_index(*r.label)].push_back(i);
    }

    rng gen(seed);
    std::vector<bool> in_train(ds.size(), false);
    for (auto &indices : by_class) {
        gen.shuffle(indices);
        const std::size_t take = exact_floor_mul(train_fraction, indices.size());
        for (std::size_t k = 0; k < take; ++k)
            in_train[indices[k]] = true;
    }

    std::vector<mib_record> train, test;
    for (std::size_t i = 0; i < ds.records().size(); ++i)
        (in_train[i] ? train : test).push_back(ds.records()[i]);

    return {dataset(ds.get_schema(), std::move(train), ds.provenance() + ":train"),
            dataset(ds.get_schema(), std::move(test), ds.provenance() + ":test")};
}

dataset relabel_binary(const dataset &ds, traffic_class attack_stand_in) {
    std::vector<mib_record> records = ds.records();
    for (auto &r : records) {
        if (r.label && *r.label != traffic_class::normal)
            r.label = attack_stand_in;
    }
    return dataset(ds.get_schema(), std::move(records), ds.provenance() + ":binary");
}

} // namespace mibwarden
