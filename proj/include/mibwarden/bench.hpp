// bench.hpp
//
// The five-way comparison pipeline: split, train every learner, evaluate on
// the holdout split and on the full data (resubstitution), rank by holdout
// accuracy. Both views are always reported; neither is silently preferred.

#ifndef MIBWARDEN_BENCH_HPP
#define MIBWARDEN_BENCH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "mibwarden/evaluation.hpp"
#include "mibwarden/learners.hpp"

namespace mibwarden {

struct bench_config {
    double split = 0.7;
    std::uint64_t seed = 1;
    bool binary = false; // collapse attacks into one class before training
    jrip_params jrip;
    part_params part;
    dtable_params dtable;
    oner_params oner;
};

struct bench_result {
    std::uint64_t seed = 0;
    double split = 0.7;
    bool binary = false;
    std::string dataset_provenance;
    std::size_t dataset_records = 0;
    std::size_t attribute_count = 0;
    std::size_t train_records = 0;
    std::size_t test_records = 0;
    std::vector<rule_model> models;         // canonical learner order
    std::vector<eval_report> holdout;       // canonical learner order
    std::vector<eval_report> resubstitution;
    std::vector<std::size_t> ranking;       // indices into holdout, best first
};

bench_result run_bench(const dataset &ds, const bench_config &cfg);

/// Machine-readable report with fixed key names (docs/formats.md). Every
/// byte is determined by (dataset bytes, config); wall-clock timings are
/// deliberately excluded so reruns diff clean.
std::string bench_report_json(const bench_result &result);

/// Aligned human-readable tables: per-class precision/recall/F per learner,
/// the accuracy ranking, and train/test timings.
void print_bench_report(const bench_result &result, std::ostream &out);

/// Single-model evaluation report as JSON (same per-report schema).
std::string eval_report_json(const eval_report &report, const std::string &view);

void print_eval_report(const eval_report &report, std::ostream &out);

} // namespace mibwarden

#endif // MIBWARDEN_BENCH_HPP
