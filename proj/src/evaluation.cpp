// evaluation.cpp

#include "mibwarden/evaluation.hpp"

#include <algorithm>
#include <chrono>

#include "mibwarden/errors.hpp"

namespace mibwarden {

std::uint64_t confusion_matrix::total() const {
    std::uint64_t sum = 0;
    for (const auto &row : counts)
        for (const auto n : row)
            sum += n;
    return sum;
}

std::uint64_t confusion_matrix::trace() const {
    std::uint64_t sum = 0;
    for (std::size_t c = 0; c < traffic_class_count; ++c)
        sum += counts[c][c];
    return sum;
}

std::uint64_t confusion_matrix::row_sum(std::size_t actual) const {
    std::uint64_t sum = 0;
    for (const auto n : counts[actual])
        sum += n;
    return sum;
}

std::uint64_t confusion_matrix::col_sum(std::size_t predicted) const {
    std::uint64_t sum = 0;
    for (std::size_t r = 0; r < traffic_class_count; ++r)
        sum += counts[r][predicted];
    return sum;
}

confusion_matrix confusion(const rule_model &model, const dataset &test) {
    if (!test.fully_labeled())
        throw data_format_error("evaluation requires a fully labeled dataset");
    const std::vector<traffic_class> predicted = predict_all(model, test);
    confusion_matrix cm;
    for (std::size_t i = 0; i < test.size(); ++i)
        ++cm.counts[class_index(*test.records()[i].label)][class_index(predicted[i])];
    return cm;
}

class_metrics compute_class_metrics(const confusion_matrix &cm, traffic_class c) {
    const std::size_t i = class_index(c);
    class_metrics m;
    m.tp = cm.counts[i][i];
    m.fn = cm.row_sum(i) - m.tp;
    m.fp = cm.col_sum(i) - m.tp;
    m.tn = cm.total() - m.tp - m.fp - m.fn;

    const auto ratio = [](std::uint64_t num, std::uint64_t den) {
        return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
    };
    m.precision = ratio(m.tp, m.tp + m.fp);
    m.recall = ratio(m.tp, m.tp + m.fn);
    m.f_measure = m.precision + m.recall == 0.0
                      ? 0.0
                      : 2.0 * m.precision * m.recall / (m.precision + m.recall);
    return m;
}

double accuracy(const confusion_matrix &cm) {
    const std::uint64_t total = cm.total();
    if (total == 0)
        throw config_error("accuracy of an empty confusion matrix");
    return static_cast<double>(cm.trace()) / static_cast<double>(total);
}

eval_report evaluate(const rule_model &model, const dataset &test) {
    eval_report report;
    report.learner = to_string(model.learner);
    report.dataset_provenance = test.provenance();

    const auto start = std::chrono::steady_clock::now();
    report.matrix = confusion(model, test);
    report.test_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::uint64_t total = report.matrix.total();
    report.accuracy = total == 0 ? 0.0 : accuracy(report.matrix);
    for (std::size_t c = 0; c < traffic_class_count; ++c) {
        report.per_class[c] = compute_class_metrics(report.matrix, all_traffic_classes()[c]);
        const double weight =
            total == 0 ? 0.0
                       : static_cast<double>(report.matrix.row_sum(c)) / static_cast<double>(total);
        report.weighted_precision += weight * report.per_class[c].precision;
        report.weighted_recall += weight * report.per_class[c].recall;
        report.weighted_f += weight * report.per_class[c].f_measure;
    }
    return report;
}

std::vector<std::size_t> compare(const std::vector<eval_report> &reports) {
    const auto canonical_rank = [](const std::string &name) {
        for (std::size_t i = 0; i < learner_count; ++i) {
            if (name == to_string(all_learners()[i]))
                return i;
        }
        return learner_count;
    };

    std::vector<std::size_t> order(reports.size());
    for (std::size_t i = 0; i < order.size(); ++i)
        order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (reports[a].accuracy != reports[b].accuracy)
            return reports[a].accuracy > reports[b].accuracy;
        if (reports[a].weighted_f != reports[b].weighted_f)
            return reports[a].weighted_f > reports[b].weighted_f;
        return canonical_rank(reports[a].learner) < canonical_rank(reports[b].learner);
    });
    return order;
}

} // namespace mibwarden
