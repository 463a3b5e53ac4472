// collector.cpp

#include "mibwarden/collector.hpp"

#include <charconv>
#include <istream>
#include <ostream>

#include "mibwarden/errors.hpp"

namespace mibwarden {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r'))
            ++pos;
        std::size_t end = pos;
        while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r')
            ++end;
        if (end > pos)
            fields.push_back(line.substr(pos, end - pos));
        pos = end;
    }
    return fields;
}

} // namespace

snapshot parse_snapshot_line(const std::string &line, const schema &s) {
    const auto fields = split_fields(line);
    if (fields.empty())
        throw data_format_error("empty snapshot line");
    if (!fields[0].starts_with("t="))
        throw data_format_error("snapshot line must start with 't=<seconds>'");

    snapshot snap;
    {
        const std::string_view ts = fields[0].substr(2);
        const auto res = std::from_chars(ts.data(), ts.data() + ts.size(), snap.timestamp);
        if (res.ec != std::errc{} || res.ptr != ts.data() + ts.size())
            throw data_format_error("unparseable timestamp '" + std::string(fields[0]) + "'");
    }

    for (std::size_t i = 1; i < fields.size(); ++i) {
        const std::string_view field = fields[i];
        const std::size_t eq = field.find('=');
        if (eq == std::string_view::npos || eq == 0)
            throw data_format_error("malformed counter field '" + std::string(field) + "'");
        const std::string name(field.substr(0, eq));
        if (!s.find(name))
            throw data_format_error("unknown attribute '" + name + "'");
        const std::string_view digits = field.substr(eq + 1);
        std::uint64_t value = 0;
        const auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value);
        if (res.ec != std::errc{} || res.ptr != digits.data() + digits.size())
            throw data_format_error("unparseable counter value in '" + std::string(field) + "'");
        if (!snap.counters.emplace(name, value).second)
            throw data_format_error("duplicate attribute '" + name + "'");
    }

    for (const auto &attr : s.attributes()) {
        if (!snap.counters.contains(attr.name))
            throw data_format_error("missing attribute '" + attr.name + "'");
    }
    return snap;
}

delta_result deltas(const snapshot &prev, const snapshot &curr, const schema &s,
                    const delta_config &cfg) {
    if (curr.timestamp <= prev.timestamp)
        throw data_format_error("non-increasing timestamps: " + std::to_string(prev.timestamp) +
                                " -> " + std::to_string(curr.timestamp));

    delta_result out;
    out.record.values.reserve(s.size());
    for (const auto &attr : s.attributes()) {
        const std::uint64_t a = prev.counters.at(attr.name);
        const std::uint64_t b = curr.counters.at(attr.name);
        if (cfg.wrap_modulus != 0 &&
            (a >= cfg.wrap_modulus || b >= cfg.wrap_modulus))
            throw data_format_error("counter '" + attr.name + "' exceeds wrap modulus");
        std::uint64_t delta = b - a; // natural 2^64 wrap
        if (cfg.wrap_modulus != 0)
            delta %= cfg.wrap_modulus;
        out.record.values.push_back(static_cast<double>(delta));
    }

    const std::int64_t gap = curr.timestamp - prev.timestamp;
    out.degraded = gap > cfg.max_gap * cfg.expected_interval;
    return out;
}

line_classifier::line_classifier(const rule_model &model, const delta_config &cfg,
                                 std::ostream &out, std::ostream &log, const schema *schema_hint)
    : model_(model), cfg_(cfg), out_(out), log_(log) {
    if (schema_hint) {
        active_ = *schema_hint;
        have_schema_ = true;
        if (!model_.schema_fingerprint.empty() &&
            active_.fingerprint() != model_.schema_fingerprint)
            throw schema_error("schema fingerprint " + active_.fingerprint() +
                               " does not match model schema " + model_.schema_fingerprint);
    }
}

void line_classifier::feed(const std::string &line) {
    ++line_no_;
    if (line.empty() || split_fields(line).empty())
        return;

    // without a hint, the first structurally valid line fixes the schema:
    // its counter names, in line order, must hash to the model fingerprint
    if (!have_schema_) {
        const auto fields = split_fields(line);
        std::vector<std::string> names;
        for (std::size_t i = 1; i < fields.size(); ++i) {
            const std::size_t eq = fields[i].find('=');
            if (eq != std::string_view::npos && eq > 0)
                names.emplace_back(fields[i].substr(0, eq));
        }
        if (!fields[0].starts_with("t=") || names.empty()) {
            ++stats_.line_errors;
            log_ << "line " << line_no_ << ": not a snapshot line, cannot derive a schema\n";
            return;
        }
        try {
            schema candidate{names};
            if (!model_.schema_fingerprint.empty() &&
                candidate.fingerprint() != model_.schema_fingerprint)
                throw schema_error("stream schema fingerprint " + candidate.fingerprint() +
                                   " does not match model schema " + model_.schema_fingerprint);
            active_ = std::move(candidate);
            have_schema_ = true;
        } catch (const data_format_error &e) {
            ++stats_.line_errors;
            log_ << "line " << line_no_ << ": " << e.what() << '\n';
            return;
        }
    }

    snapshot snap;
    try {
        snap = parse_snapshot_line(line, active_);
    } catch (const data_format_error &e) {
        ++stats_.line_errors;
        log_ << "line " << line_no_ << ": " << e.what() << '\n';
        return;
    }

    if (have_prev_) {
        try {
            const delta_result d = deltas(prev_, snap, active_, cfg_);
            if (d.degraded) {
                ++stats_.degraded;
                log_ << "line " << line_no_ << ": poll gap " << (snap.timestamp - prev_.timestamp)
                     << "s exceeds " << cfg_.max_gap * cfg_.expected_interval
                     << "s, assuming agent reset\n";
            }
            out_ << "t=" << snap.timestamp << " class=" << to_string(predict(model_, d.record))
                 << '\n';
            out_.flush();
            ++stats_.emitted;
        } catch (const data_format_error &e) {
            ++stats_.line_errors;
            log_ << "line " << line_no_ << ": " << e.what() << '\n';
        }
    }
    prev_ = std::move(snap);
    have_prev_ = true;
}

stream_stats stream_classify(std::istream &in, const rule_model &model, const delta_config &cfg,
                             std::ostream &out, std::ostream &log, const schema *schema_hint,
                             std::size_t limit) {
    line_classifier classifier(model, cfg, out, log, schema_hint);
    std::string line;
    while (std::getline(in, line)) {
        classifier.feed(line);
        if (limit > 0 && classifier.stats().emitted >= limit)
            break;
    }
    return classifier.stats();
}

} // namespace mibwarden
