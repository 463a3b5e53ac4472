// schema.hpp
//
// Feature schema and dataset containers. A dataset is immutable after
// construction; every operation downstream reads it concurrently without
// locking.

#ifndef MIBWARDEN_SCHEMA_HPP
#define MIBWARDEN_SCHEMA_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mibwarden/traffic_class.hpp"

namespace mibwarden {

/// One numeric counter-delta column.
struct attribute_spec {
    std::string name;
    std::size_t index = 0;
};

/// Ordered attribute list; names unique, indices contiguous from 0.
class schema {
public:
    schema() = default;
    explicit schema(std::vector<std::string> names);

    std::size_t size() const { return attrs_.size(); }
    const attribute_spec &at(std::size_t i) const { return attrs_.at(i); }
    const std::vector<attribute_spec> &attributes() const { return attrs_; }
    std::vector<std::string> names() const;
    std::optional<std::size_t> find(std::string_view name) const;

    /// FNV-1a hash over the ordered attribute names, 16 hex digits.
    std::string fingerprint() const;

    bool operator==(const schema &other) const;

    /// The standard ifEntry counter set used when no schema is supplied.
    static schema default_interface_group();

private:
    std::vector<attribute_spec> attrs_;
};

/// One polling-interval feature row.
struct mib_record {
    std::vector<double> values;
    std::optional<traffic_class> label;
};

class dataset {
public:
    dataset() = default;

    /// Validates every record: length matches the schema, values finite and
    /// non-negative, labels restricted to the eight classes by construction.
    dataset(schema s, std::vector<mib_record> records, std::string provenance);

    const schema &get_schema() const { return schema_; }
    const std::vector<mib_record> &records() const { return records_; }
    const std::string &provenance() const { return provenance_; }
    std::size_t size() const { return records_.size(); }
    bool fully_labeled() const;

private:
    schema schema_;
    std::vector<mib_record> records_;
    std::string provenance_;
};

/// Per-class record counts in canonical class order. Throws
/// data_format_error if any record is unlabeled.
std::array<std::size_t, traffic_class_count> class_histogram(const dataset &ds);

/// Seeded stratified partition. Each class c with n_c records contributes
/// floor(train_fraction * n_c) records to the train side, the rest to test;
/// which records go where is a seeded uniform within-class shuffle.
std::pair<dataset, dataset> stratified_split(const dataset &ds,
                                             double train_fraction,
                                             std::uint64_t seed);

/// Rewrites every attack label as `attack_stand_in`, producing a two-class
/// normal-vs-attack view of the same rows.
dataset relabel_binary(const dataset &ds,
                       traffic_class attack_stand_in = traffic_class::tcp_syn);

} // namespace mibwarden

#endif // MIBWARDEN_SCHEMA_HPP
