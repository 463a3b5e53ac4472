// bench.cpp

#include "mibwarden/bench.hpp"

#include <chrono>
#include <future>
#include <iomanip>
#include <ostream>

#include <json.hpp>

#include "mibwarden/errors.hpp"

namespace mibwarden {

namespace {

using ordered_json = nlohmann::ordered_json;

struct timed_model {
    rule_model model;
    double train_seconds = 0.0;
};

timed_model train_timed(learner_id id, const dataset &train_set, const bench_config &cfg) {
    const auto start = std::chrono::steady_clock::now();
    timed_model out;
    switch (id) {
    case learner_id::zeror: out.model = train_zeror(train_set); break;
    case learner_id::oner: out.model = train_oner(train_set, cfg.oner); break;
    case learner_id::jrip: out.model = train_jrip(train_set, cfg.jrip); break;
    case learner_id::part: out.model = train_part(train_set, cfg.part); break;
    case learner_id::dtable: out.model = train_decision_table(train_set, cfg.dtable); break;
    }
    out.train_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return out;
}

ordered_json view_json(const eval_report &r) {
    ordered_json view;
    view["accuracy"] = r.accuracy;
    view["weighted_precision"] = r.weighted_precision;
    view["weighted_recall"] = r.weighted_recall;
    view["weighted_f_measure"] = r.weighted_f;
    view["per_class"] = ordered_json::array();
    for (std::size_t c = 0; c < traffic_class_count; ++c) {
        const auto &m = r.per_class[c];
        ordered_json row;
        row["class"] = to_string(all_traffic_classes()[c]);
        row["tp"] = m.tp;
        row["fp"] = m.fp;
        row["fn"] = m.fn;
        row["tn"] = m.tn;
        row["precision"] = m.precision;
        row["recall"] = m.recall;
        row["f_measure"] = m.f_measure;
        view["per_class"].push_back(std::move(row));
    }
    view["matrix"] = ordered_json::array();
    for (const auto &row : r.matrix.counts)
        view["matrix"].push_back(row);
    return view;
}

} // namespace

bench_result run_bench(const dataset &ds, const bench_config &cfg) {
    if (!(cfg.split > 0.0 && cfg.split < 1.0))
        throw config_error("split fraction must lie in (0, 1)");

    const dataset working = cfg.binary ? relabel_binary(ds) : ds;
    auto [train_set, test_set] = stratified_split(working, cfg.split, cfg.seed);

    bench_result result;
    result.seed = cfg.seed;
    result.split = cfg.split;
    result.binary = cfg.binary;
    result.dataset_provenance = ds.provenance();
    result.dataset_records = ds.size();
    result.attribute_count = ds.get_schema().size();
    result.train_records = train_set.size();
    result.test_records = test_set.size();

    // the learners share only read-only data, so they train concurrently;
    // results are merged back in canonical learner order
    std::vector<std::future<timed_model>> futures;
    for (const learner_id id : all_learners())
        futures.push_back(std::async(std::launch::async, train_timed, id, std::cref(train_set),
                                     std::cref(cfg)));

    for (auto &future : futures) {
        timed_model trained = future.get();
        eval_report holdout = evaluate(trained.model, test_set);
        holdout.seed = cfg.seed;
        holdout.train_seconds = trained.train_seconds;
        eval_report resub = evaluate(trained.model, working);
        resub.seed = cfg.seed;
        resub.train_seconds = trained.train_seconds;
        result.models.push_back(std::move(trained.model));
        result.holdout.push_back(std::move(holdout));
        result.resubstitution.push_back(std::move(resub));
    }

    result.ranking = compare(result.holdout);
    return result;
}

std::string bench_report_json(const bench_result &result) {
    ordered_json doc;
    doc["tool"] = "mibwarden";
    doc["report"] = "bench";
    doc["seed"] = result.seed;
    doc["split"] = result.split;
    doc["binary"] = result.binary;
    doc["dataset"] = {{"provenance", result.dataset_provenance},
                      {"records", result.dataset_records},
                      {"attributes", result.attribute_count}};
    doc["train_records"] = result.train_records;
    doc["test_records"] = result.test_records;
    doc["learners"] = ordered_json::array();
    for (std::size_t i = 0; i < result.holdout.size(); ++i) {
        ordered_json entry;
        entry["learner"] = result.holdout[i].learner;
        entry["holdout"] = view_json(result.holdout[i]);
        entry["resubstitution"] = view_json(result.resubstitution[i]);
        doc["learners"].push_back(std::move(entry));
    }
    doc["ranking"] = ordered_json::array();
    for (const std::size_t i : result.ranking)
        doc["ranking"].push_back(result.holdout[i].learner);
    return doc.dump(2) + "\n";
}

std::string eval_report_json(const eval_report &report, const std::string &view) {
    ordered_json doc;
    doc["tool"] = "mibwarden";
    doc["report"] = "eval";
    doc["learner"] = report.learner;
    doc["dataset"] = report.dataset_provenance;
    doc["view"] = view;
    doc["metrics"] = view_json(report);
    return doc.dump(2) + "\n";
}

namespace {

void print_metric_table(const std::vector<eval_report> &reports, std::ostream &out,
                        const char *title, double class_metrics::*field) {
    out << title << '\n';
    out << std::left << std::setw(12) << "class";
    for (const auto &r : reports)
        out << std::right << std::setw(9) << r.learner;
    out << '\n';
    for (std::size_t c = 0; c < traffic_class_count; ++c) {
        out << std::left << std::setw(12) << to_string(all_traffic_classes()[c]);
        for (const auto &r : reports)
            out << std::right << std::setw(9) << std::fixed << std::setprecision(3)
                << r.per_class[c].*field;
        out << '\n';
    }
    out << '\n';
}

} // namespace

void print_eval_report(const eval_report &report, std::ostream &out) {
    out << "learner " << report.learner << " on " << report.dataset_provenance << '\n';
    out << "  accuracy " << std::fixed << std::setprecision(4) << report.accuracy
        << "  weighted precision " << report.weighted_precision << "  recall "
        << report.weighted_recall << "  F " << report.weighted_f << '\n';
    out << "  class         precision   recall        F  support\n";
    for (std::size_t c = 0; c < traffic_class_count; ++c) {
        const auto &m = report.per_class[c];
        out << "  " << std::left << std::setw(12) << to_string(all_traffic_classes()[c])
            << std::right << std::fixed << std::setprecision(3) << std::setw(10) << m.precision
            << std::setw(9) << m.recall << std::setw(9) << m.f_measure << std::setw(9)
            << report.matrix.row_sum(c) << '\n';
    }
}

void print_bench_report(const bench_result &result, std::ostream &out) {
    out << "dataset " << result.dataset_provenance << ": " << result.dataset_records
        << " records, " << result.attribute_count << " attributes ("
        << result.train_records << " train / " << result.test_records << " test, seed "
        << result.seed << (result.binary ? ", binary relabeling)" : ")") << "\n\n";

    out << "== holdout (train fraction " << std::defaultfloat << result.split << ") ==\n\n";
    print_metric_table(result.holdout, out, "precision", &class_metrics::precision);
    print_metric_table(result.holdout, out, "recall", &class_metrics::recall);
    print_metric_table(result.holdout, out, "F-measure", &class_metrics::f_measure);

    out << "accuracy ranking (holdout):\n";
    for (std::size_t place = 0; place < result.ranking.size(); ++place) {
        const auto &r = result.holdout[result.ranking[place]];
        out << "  " << place + 1 << ". " << std::left << std::setw(8) << r.learner << std::right
            << std::fixed << std::setprecision(4) << std::setw(8) << r.accuracy << "  (weighted F "
            << std::setprecision(4) << r.weighted_f << ")\n";
    }
    out << '\n';

    out << "== resubstitution (evaluated on the full dataset) ==\n\n";
    out << std::left << std::setw(10) << "learner" << std::right << std::setw(10) << "accuracy"
        << std::setw(12) << "weighted F" << std::setw(12) << "train s" << std::setw(10)
        << "test s" << '\n';
    for (std::size_t i = 0; i < result.resubstitution.size(); ++i) {
        const auto &r = result.resubstitution[i];
        out << std::left << std::setw(10) << r.learner << std::right << std::fixed
            << std::setprecision(4) << std::setw(10) << r.accuracy << std::setw(12)
            << r.weighted_f << std::setprecision(3) << std::setw(12) << r.train_seconds
            << std::setw(10) << r.test_seconds << '\n';
    }
}

} // namespace mibwarden
