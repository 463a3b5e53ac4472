#include <doctest.h>

#include <sstream>

#include "mibwarden/collector.hpp"
#include "mibwarden/errors.hpp"
#include "mibwarden/rng.hpp"

#include "support/test_data.hpp"

using namespace mibwarden;

namespace {

const schema two_attrs{{"ifInOctets", "ifOutOctets"}};

// model predicting Normal near the zero-delta vector, TcpSyn elsewhere
rule_model zero_centered_model(const schema &s) {
    rule_model model;
    model.learner = learner_id::jrip;
    model.schema_fingerprint = s.fingerprint();
    rule ru;
    for (std::size_t a = 0; a < s.size(); ++a)
        ru.conditions.push_back(condition{a, condition::kind::leq, 1000.0, 0});
    ru.consequent = traffic_class::normal;
    model.ordered_rules.push_back(ru);
    model.default_class = traffic_class::tcp_syn;
    return model;
}

} // namespace

TEST_CASE("parse_snapshot_line") {
    SUBCASE("well-formed line") {
        const snapshot s = parse_snapshot_line("t=100 ifInOctets=5000 ifOutOctets=4000", two_attrs);
        CHECK(s.timestamp == 100);
        CHECK(s.counters.at("ifInOctets") == 5000);
        CHECK(s.counters.at("ifOutOctets") == 4000);
    }
    SUBCASE("missing attribute is named") {
        CHECK_THROWS_WITH_AS(parse_snapshot_line("t=100 ifInOctets=5000", two_attrs),
                             doctest::Contains("ifOutOctets"), data_format_error);
    }
    SUBCASE("timestamp must parse") {
        CHECK_THROWS_AS(parse_snapshot_line("t=abc ifInOctets=1 ifOutOctets=2", two_attrs),
                        data_format_error);
    }
    SUBCASE("unknown attribute is rejected") {
        CHECK_THROWS_WITH_AS(
            parse_snapshot_line("t=1 ifInOctets=1 ifOutOctets=2 bogus=3", two_attrs),
            doctest::Contains("bogus"), data_format_error);
    }
    SUBCASE("duplicate attribute is rejected") {
        CHECK_THROWS_AS(parse_snapshot_line("t=1 ifInOctets=1 ifInOctets=2", two_attrs),
                        data_format_error);
    }
}

TEST_CASE("deltas") {
    delta_config cfg;
    SUBCASE("plain difference") {
        const snapshot a = parse_snapshot_line("t=100 ifInOctets=5000 ifOutOctets=1", two_attrs);
        const snapshot b = parse_snapshot_line("t=115 ifInOctets=5600 ifOutOctets=2", two_attrs);
        const delta_result d = deltas(a, b, two_attrs, cfg);
        CHECK(d.record.values == std::vector<double>{600.0, 1.0});
        CHECK(!d.degraded);
    }
    SUBCASE("counter wrap at 2^32") {
        const snapshot a =
            parse_snapshot_line("t=100 ifInOctets=4294967286 ifOutOctets=0", two_attrs);
        const snapshot b = parse_snapshot_line("t=115 ifInOctets=40 ifOutOctets=0", two_attrs);
        const delta_result d = deltas(a, b, two_attrs, cfg);
        CHECK(d.record.values[0] == 50.0);
    }
    SUBCASE("non-increasing timestamps are an error") {
        const snapshot a = parse_snapshot_line("t=100 ifInOctets=1 ifOutOctets=1", two_attrs);
        const snapshot b = parse_snapshot_line("t=100 ifInOctets=2 ifOutOctets=2", two_attrs);
        CHECK_THROWS_AS(deltas(a, b, two_attrs, cfg), data_format_error);
    }
    SUBCASE("counter beyond the modulus is an error") {
        const snapshot a =
            parse_snapshot_line("t=100 ifInOctets=4294967296 ifOutOctets=0", two_attrs);
        const snapshot b = parse_snapshot_line("t=115 ifInOctets=1 ifOutOctets=0", two_attrs);
        CHECK_THROWS_AS(deltas(a, b, two_attrs, cfg), data_format_error);
    }
    SUBCASE("long poll gaps mark the record degraded") {
        const snapshot a = parse_snapshot_line("t=100 ifInOctets=1 ifOutOctets=1", two_attrs);
        const snapshot b = parse_snapshot_line("t=400 ifInOctets=2 ifOutOctets=2", two_attrs);
        CHECK(deltas(a, b, two_attrs, cfg).degraded); // gap 300 > 4 * 15
    }
    SUBCASE("64-bit counters wrap through the native width") {
        delta_config wide;
        wide.wrap_modulus = 0;
        const snapshot a = parse_snapshot_line(
            "t=100 ifInOctets=18446744073709551610 ifOutOctets=0", two_attrs);
        const snapshot b = parse_snapshot_line("t=115 ifInOctets=14 ifOutOctets=0", two_attrs);
        CHECK(deltas(a, b, two_attrs, wide).record.values[0] == 20.0);
    }
}

TEST_CASE("delta and re-accumulation round-trip exactly") {
    rng gen(63);
    delta_config cfg;
    const schema one{{"c"}};
    for (int trial = 0; trial < 200; ++trial) {
        const std::uint64_t modulus = 1ULL << 32;
        std::uint64_t counter = gen.below(modulus);
        std::int64_t t = 100;
        snapshot prev;
        prev.timestamp = t;
        prev.counters["c"] = counter;
        for (int step = 0; step < 20; ++step) {
            const std::uint64_t want = gen.below(modulus);
            counter = (counter + want) % modulus;
            t += 15;
            snapshot curr;
            curr.timestamp = t;
            curr.counters["c"] = counter;
            const delta_result d = deltas(prev, curr, one, cfg);
            CHECK(d.record.values[0] == static_cast<double>(want));
            prev = curr;
        }
    }
}

TEST_CASE("stream_classify") {
    const rule_model model = zero_centered_model(two_attrs);
    delta_config cfg;

    SUBCASE("three snapshots give two classifications") {
        std::istringstream in("t=100 ifInOctets=5000 ifOutOctets=100\n"
                              "t=115 ifInOctets=5100 ifOutOctets=200\n"
                              "t=130 ifInOctets=5200 ifOutOctets=300\n");
        std::ostringstream out, log;
        const stream_stats stats = stream_classify(in, model, cfg, out, log);
        CHECK(stats.emitted == 2);
        CHECK(stats.line_errors == 0);
        CHECK(out.str() == "t=115 class=Normal\nt=130 class=Normal\n");
    }
    SUBCASE("constant counters classify as the zero-delta class") {
        std::istringstream in("t=100 ifInOctets=5000 ifOutOctets=100\n"
                              "t=115 ifInOctets=5000 ifOutOctets=100\n");
        std::ostringstream out, log;
        stream_classify(in, model, cfg, out, log);
        CHECK(out.str() == "t=115 class=Normal\n");
    }
    SUBCASE("large deltas fall through to the default class") {
        std::istringstream in("t=100 ifInOctets=5000 ifOutOctets=100\n"
                              "t=115 ifInOctets=90000000 ifOutOctets=100\n");
        std::ostringstream out, log;
        stream_classify(in, model, cfg, out, log);
        CHECK(out.str() == "t=115 class=TcpSyn\n");
    }
    SUBCASE("a malformed middle line is logged and skipped") {
        std::istringstream in("t=100 ifInOctets=5000 ifOutOctets=100\n"
                              "t=xyz ifInOctets=1 ifOutOctets=1\n"
                              "t=130 ifInOctets=5200 ifOutOctets=300\n");
        std::ostringstream out, log;
        const stream_stats stats = stream_classify(in, model, cfg, out, log);
        CHECK(stats.emitted == 1);
        CHECK(stats.line_errors == 1);
        CHECK(out.str() == "t=130 class=Normal\n");
        CHECK(log.str().find("line 2") != std::string::npos);
    }
    SUBCASE("schema hint must match the model fingerprint") {
        const schema other{{"a", "b"}};
        std::ostringstream out, log;
        std::istringstream in("");
        CHECK_THROWS_AS(stream_classify(in, model, cfg, out, log, &other), schema_error);
    }
    SUBCASE("first-line schema recovery rejects mismatched name order") {
        std::istringstream in("t=100 ifOutOctets=100 ifInOctets=5000\n");
        std::ostringstream out, log;
        CHECK_THROWS_AS(stream_classify(in, model, cfg, out, log), schema_error);
    }
    SUBCASE("garbage before the first snapshot line is skipped, not fatal") {
        std::istringstream in("hello world\n"
                              "t=100 ifInOctets=5000 ifOutOctets=100\n"
                              "t=115 ifInOctets=5100 ifOutOctets=200\n");
        std::ostringstream out, log;
        const stream_stats stats = stream_classify(in, model, cfg, out, log);
        CHECK(stats.emitted == 1);
        CHECK(stats.line_errors == 1);
        CHECK(out.str() == "t=115 class=Normal\n");
    }
    SUBCASE("the limit parameter caps emissions") {
        std::istringstream in("t=100 ifInOctets=1 ifOutOctets=1\n"
                              "t=115 ifInOctets=2 ifOutOctets=2\n"
                              "t=130 ifInOctets=3 ifOutOctets=3\n"
                              "t=145 ifInOctets=4 ifOutOctets=4\n");
        std::ostringstream out, log;
        const stream_stats stats = stream_classify(in, model, cfg, out, log, nullptr, 2);
        CHECK(stats.emitted == 2);
    }
}
