#include <doctest.h>

#include <cmath>

#include "mibwarden/evaluation.hpp"
#include "mibwarden/errors.hpp"
#include "mibwarden/learners.hpp"
#include "mibwarden/rng.hpp"
#include "mibwarden/synth.hpp"

#include "support/oracles.hpp"
#include "support/test_data.hpp"

using namespace mibwarden;
using test::metrics_oracle;
using test::random_matrix;

TEST_CASE("class_metrics identities") {
    SUBCASE("single true positive") {
        confusion_matrix cm;
        cm.counts[0][0] = 1;
        const class_metrics m = compute_class_metrics(cm, traffic_class::normal);
        CHECK(m.precision == 1.0);
        CHECK(m.recall == 1.0);
        CHECK(m.f_measure == 1.0);
    }
    SUBCASE("F of precision 0.8 and recall 0.6") {
        // tp=12, fp=3 -> precision 0.8; fn=8 -> recall 0.6
        confusion_matrix cm;
        cm.counts[0][0] = 12;
        cm.counts[1][0] = 3;
        cm.counts[0][1] = 8;
        const class_metrics m = compute_class_metrics(cm, traffic_class::normal);
        CHECK(m.precision == doctest::Approx(0.8).epsilon(1e-12));
        CHECK(m.recall == doctest::Approx(0.6).epsilon(1e-12));
        CHECK(m.f_measure == doctest::Approx(2.0 * 0.8 * 0.6 / 1.4).epsilon(1e-12));
        CHECK(m.f_measure == doctest::Approx(0.685714285714).epsilon(1e-9));
    }
    SUBCASE("class absent from actual and predicted scores zero by convention") {
        confusion_matrix cm;
        cm.counts[0][0] = 5;
        cm.counts[1][1] = 5;
        const class_metrics m = compute_class_metrics(cm, traffic_class::brute_force);
        CHECK(m.tp == 0);
        CHECK(m.fp == 0);
        CHECK(m.fn == 0);
        CHECK(m.tn == 10);
        CHECK(m.precision == 0.0);
        CHECK(m.recall == 0.0);
        CHECK(m.f_measure == 0.0);
    }
}

TEST_CASE("accuracy") {
    SUBCASE("diagonal matrix scores 1") {
        confusion_matrix cm;
        for (std::size_t c = 0; c < traffic_class_count; ++c)
            cm.counts[c][c] = 10 + c;
        CHECK(accuracy(cm) == 1.0);
    }
    SUBCASE("majority-only prediction over the canonical test split") {
        // ZeroR predicting the plurality column: 288 of 1500 correct
        confusion_matrix cm;
        const std::size_t test_counts[8] = {180, 288, 232, 190, 172, 234, 144, 60};
        for (std::size_t c = 0; c < traffic_class_count; ++c)
            cm.counts[c][class_index(traffic_class::tcp_syn)] = test_counts[c];
        CHECK(accuracy(cm) == doctest::Approx(0.192).epsilon(1e-12));
        CHECK(accuracy(cm) == 288.0 / 1500.0);
    }
    SUBCASE("one error in 1500") {
        confusion_matrix cm;
        cm.counts[0][0] = 1499;
        cm.counts[1][0] = 1;
        CHECK(accuracy(cm) == doctest::Approx(1499.0 / 1500.0).epsilon(1e-12));
    }
    SUBCASE("empty matrix throws") {
        CHECK_THROWS_AS(accuracy(confusion_matrix{}), config_error);
    }
}

TEST_CASE("class_metrics agrees with the pair-counting oracle") {
    rng gen(41);
    for (int trial = 0; trial < 100; ++trial) {
        const confusion_matrix cm = random_matrix(gen, 2000);
        for (const traffic_class c : all_traffic_classes()) {
            const class_metrics got = compute_class_metrics(cm, c);
            const class_metrics want = metrics_oracle(cm, c);
            CHECK(got.tp == want.tp);
            CHECK(got.fp == want.fp);
            CHECK(got.fn == want.fn);
            CHECK(got.tn == want.tn);
            CHECK(std::abs(got.precision - want.precision) <= 1e-12);
            CHECK(std::abs(got.recall - want.recall) <= 1e-12);
            CHECK(std::abs(got.f_measure - want.f_measure) <= 1e-12);
        }
    }
}

TEST_CASE("micro-averaged precision equals accuracy") {
    rng gen(43);
    for (int trial = 0; trial < 100; ++trial) {
        confusion_matrix cm = random_matrix(gen, 5000);
        cm.counts[0][0] += 1; // keep the matrix nonempty
        std::uint64_t tp_sum = 0, tp_fp_sum = 0, tp_fn_sum = 0;
        for (const traffic_class c : all_traffic_classes()) {
            const class_metrics m = compute_class_metrics(cm, c);
            tp_sum += m.tp;
            tp_fp_sum += m.tp + m.fp;
            tp_fn_sum += m.tp + m.fn;
        }
        CHECK(tp_sum == cm.trace());
        CHECK(tp_fp_sum == cm.total());
        CHECK(tp_fn_sum == cm.total());
        const double micro_precision = double(tp_sum) / double(tp_fp_sum);
        CHECK(std::abs(micro_precision - accuracy(cm)) <= 1e-12);
    }
}

TEST_CASE("per-class metrics stay inside [0,1] with f below max(p,r)") {
    rng gen(47);
    for (int trial = 0; trial < 50; ++trial) {
        const confusion_matrix cm = random_matrix(gen, 1000);
        for (const traffic_class c : all_traffic_classes()) {
            const class_metrics m = compute_class_metrics(cm, c);
            CHECK(m.precision >= 0.0);
            CHECK(m.precision <= 1.0);
            CHECK(m.recall >= 0.0);
            CHECK(m.recall <= 1.0);
            CHECK(m.f_measure <= std::max(m.precision, m.recall) + 1e-15);
            if (m.precision == m.recall)
                CHECK(m.f_measure == doctest::Approx(m.precision).epsilon(1e-12));
        }
    }
}

TEST_CASE("confusion matrix structure") {
    rng gen(51);
    const dataset ds = test::grid_box_dataset(gen, 4, 3, 30);
    SUBCASE("a perfect model produces a diagonal matrix") {
        const rule_model model = train_part(ds);
        const confusion_matrix cm = confusion(model, ds);
        const auto histogram = class_histogram(ds);
        for (std::size_t a = 0; a < traffic_class_count; ++a)
            for (std::size_t p = 0; p < traffic_class_count; ++p)
                CHECK(cm.counts[a][p] == (a == p ? histogram[a] : 0));
    }
    SUBCASE("zeror concentrates a single column") {
        const rule_model model = train_zeror(ds);
        const confusion_matrix cm = confusion(model, ds);
        const std::size_t majority = class_index(model.default_class);
        for (std::size_t a = 0; a < traffic_class_count; ++a)
            for (std::size_t p = 0; p < traffic_class_count; ++p)
                if (p != majority)
                    CHECK(cm.counts[a][p] == 0);
        CHECK(cm.total() == ds.size());
    }
    SUBCASE("empty test set gives an all-zero matrix") {
        const rule_model model = train_zeror(ds);
        const dataset empty(ds.get_schema(), {}, "empty");
        CHECK(confusion(model, empty).total() == 0);
    }
    SUBCASE("row sums equal actual class counts") {
        const rule_model model = train_oner(ds);
        const confusion_matrix cm = confusion(model, ds);
        const auto histogram = class_histogram(ds);
        for (std::size_t c = 0; c < traffic_class_count; ++c)
            CHECK(cm.row_sum(c) == histogram[c]);
    }
}

TEST_CASE("compare ranks by accuracy, weighted F, then canonical order") {
    SUBCASE("five learners on separable data put zeror last") {
        const dataset ds = synthesize(synth_profile::default_profile(0.0), 3);
        const auto [train_set, test_set] = stratified_split(ds, 0.7, 3);
        std::vector<eval_report> reports;
        for (const learner_id id : all_learners())
            reports.push_back(evaluate(train(id, train_set, 3), test_set));
        const std::vector<std::size_t> order = compare(reports);
        REQUIRE(order.size() == 5);
        CHECK(reports[order.back()].learner == "zeror");
    }
    SUBCASE("a single report ranks alone") {
        eval_report r;
        r.learner = "part";
        CHECK(compare({r}) == std::vector<std::size_t>{0});
    }
    SUBCASE("full ties fall back to canonical learner order") {
        eval_report a, b;
        a.learner = "part";
        b.learner = "oner";
        a.accuracy = b.accuracy = 0.5;
        a.weighted_f = b.weighted_f = 0.5;
        const auto order = compare({a, b});
        CHECK(order == std::vector<std::size_t>{1, 0}); // oner precedes part
    }
    SUBCASE("weighted F breaks accuracy ties") {
        eval_report a, b;
        a.learner = "zeror";
        b.learner = "part";
        a.accuracy = b.accuracy = 0.9;
        a.weighted_f = 0.95;
        b.weighted_f = 0.80;
        CHECK(compare({a, b}) == std::vector<std::size_t>{0, 1});
    }
}

TEST_CASE("evaluate flags schema mismatches") {
    rng gen(57);
    const dataset ds = test::grid_box_dataset(gen, 3, 3, 10);
    const rule_model model = train_zeror(ds);
    const dataset other = test::grid_box_dataset(gen, 3, 4, 10);
    CHECK_THROWS_AS(evaluate(model, other), schema_error);
}
