// evaluation.hpp
//
// Confusion-matrix construction and the derived metrics, per class and
// aggregated: precision = tp/(tp+fp), recall = tp/(tp+fn),
// f = 2PR/(P+R), accuracy = trace/total. Any 0/0 yields 0.

#ifndef MIBWARDEN_EVALUATION_HPP
#define MIBWARDEN_EVALUATION_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mibwarden/rule_model.hpp"

namespace mibwarden {

/// 8x8 actual-vs-predicted counts in canonical class order.
struct confusion_matrix {
    std::array<std::array<std::uint64_t, traffic_class_count>, traffic_class_count> counts{};

    std::uint64_t total() const;
    std::uint64_t trace() const;
    std::uint64_t row_sum(std::size_t actual) const;
    std::uint64_t col_sum(std::size_t predicted) const;
};

struct class_metrics {
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
    double precision = 0.0, recall = 0.0, f_measure = 0.0;
};

struct eval_report {
    std::string learner;
    std::string dataset_provenance;
    std::uint64_t seed = 0;
    confusion_matrix matrix;
    std::array<class_metrics, traffic_class_count> per_class{};
    double accuracy = 0.0;
    double weighted_precision = 0.0;
    double weighted_recall = 0.0;
    double weighted_f = 0.0;
    double train_seconds = 0.0;
    double test_seconds = 0.0;
};

/// Throws schema_error on fingerprint mismatch and data_format_error on an
/// unlabeled record.
confusion_matrix confusion(const rule_model &model, const dataset &test);

class_metrics compute_class_metrics(const confusion_matrix &cm, traffic_class c);

/// trace/total; throws config_error on an empty matrix.
double accuracy(const confusion_matrix &cm);

eval_report evaluate(const rule_model &model, const dataset &test);

/// Indices into `reports` sorted best first: accuracy descending, weighted F
/// descending, then canonical learner order.
std::vector<std::size_t> compare(const std::vector<eval_report> &reports);

} // namespace mibwarden

#endif // MIBWARDEN_EVALUATION_HPP
