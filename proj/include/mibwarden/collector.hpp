// collector.hpp
//
// Turns periodic raw counter snapshots into unlabeled feature records:
// per-attribute deltas modulo the counter wrap size. Input is a line
// protocol, one snapshot per line:
//
//   t=<seconds> <name>=<uint> <name>=<uint> ...

#ifndef MIBWARDEN_COLLECTOR_HPP
#define MIBWARDEN_COLLECTOR_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "mibwarden/rule_model.hpp"
#include "mibwarden/schema.hpp"

namespace mibwarden {

struct snapshot {
    std::int64_t timestamp = 0; // seconds since epoch
    std::map<std::string, std::uint64_t> counters;
};

struct delta_config {
    std::int64_t expected_interval = 15;            // seconds between polls
    std::uint64_t wrap_modulus = 1ULL << 32;        // 0 means full 64-bit wrap
    std::int64_t max_gap = 4;                       // intervals before assuming a reset
};

/// Parses one snapshot line against the active schema. Rejects unknown and
/// duplicate names and requires every schema attribute to be present.
snapshot parse_snapshot_line(const std::string &line, const schema &s);

struct delta_result {
    mib_record record;   // unlabeled counter deltas in schema order
    bool degraded = false; // poll gap exceeded max_gap * expected_interval
};

/// Per attribute: (curr - prev) mod wrap_modulus. Throws data_format_error
/// on non-increasing timestamps or counter values >= wrap_modulus.
delta_result deltas(const snapshot &prev, const snapshot &curr,
                    const schema &s, const delta_config &cfg);

struct stream_stats {
    std::size_t emitted = 0;
    std::size_t line_errors = 0;
    std::size_t degraded = 0;
};

/// Incremental snapshot-stream classifier: feed one line at a time, get one
/// `t=<int> class=<Name>` output line per consecutive valid snapshot pair.
/// Malformed lines are logged and skipped; the stream keeps going. The
/// active schema comes from `schema_hint` when given, otherwise it is
/// recovered from the first valid line's counter-name order; either way it
/// must hash to the model's schema fingerprint (schema_error otherwise).
class line_classifier {
public:
    line_classifier(const rule_model &model, const delta_config &cfg, std::ostream &out,
                    std::ostream &log, const schema *schema_hint = nullptr);

    void feed(const std::string &line);
    const stream_stats &stats() const { return stats_; }

private:
    const rule_model &model_;
    delta_config cfg_;
    std::ostream &out_;
    std::ostream &log_;
    schema active_;
    bool have_schema_ = false;
    snapshot prev_;
    bool have_prev_ = false;
    std::size_t line_no_ = 0;
    stream_stats stats_;
};

/// Drives a line_classifier over a whole istream. `limit` > 0 stops after
/// that many classifications.
stream_stats stream_classify(std::istream &in, const rule_model &model,
                             const delta_config &cfg, std::ostream &out,
                             std::ostream &log,
                             const schema *schema_hint = nullptr,
                             std::size_t limit = 0);

} // namespace mibwarden

#endif // MIBWARDEN_COLLECTOR_HPP
