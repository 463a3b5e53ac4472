// model_io.cpp
//
// Model text format, one construct per line (grammar in docs/formats.md):
//
//   learner=<id>
//   schema=<fingerprint>
//   params=<k=v,...>
//   attr:<i> cuts:<c1,c2,...>
//   rule: <cond> && <cond> => <Class>
//   cell: <b1,b2,...> => <Class>
//   default: <Class>

#include "mibwarden/rule_model.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mibwarden/csv.hpp"
#include "mibwarden/errors.hpp"

namespace mibwarden {

namespace {

std::string condition_text(const condition &c) {
    const std::string attr = "a" + std::to_string(c.attribute_index);
    switch (c.test) {
    case condition::kind::leq: return attr + " <= " + format_double(c.threshold);
    case condition::kind::gt: return attr + " > " + format_double(c.threshold);
    case condition::kind::in_bin: return attr + " bin=" + std::to_string(c.bin);
    }
    return attr;
}

[[noreturn]] void fail(std::size_t line_no, const std::string &msg) {
    throw data_format_error("model line " + std::to_string(line_no) + ": " + msg);
}

class token_reader {
public:
    token_reader(std::string_view text, std::size_t line_no) : text_(text), line_no_(line_no) {}

    void skip_spaces() {
        while (pos_ < text_.size() && text_[pos_] == ' ')
            ++pos_;
    }

    bool consume(std::string_view prefix) {
        if (text_.substr(pos_).starts_with(prefix)) {
            pos_ += prefix.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view prefix, const std::string &what) {
        if (!consume(prefix))
            fail(line_no_, "expected " + what);
    }

    std::size_t read_uint(const std::string &what) {
        std::size_t v = 0;
        const auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (res.ec != std::errc{})
            fail(line_no_, "expected " + what);
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return v;
    }

    double read_double(const std::string &what) {
        double v = 0.0;
        const auto res = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), v);
        if (res.ec != std::errc{})
            fail(line_no_, "expected " + what);
        pos_ = static_cast<std::size_t>(res.ptr - text_.data());
        return v;
    }

    std::string rest() { return std::string(text_.substr(pos_)); }
    bool done() const { return pos_ >= text_.size(); }

private:
    std::string_view text_;
    std::size_t line_no_;
    std::size_t pos_ = 0;
};

traffic_class read_class(token_reader &r, std::size_t line_no) {
    r.skip_spaces();
    const std::string name = r.rest();
    const auto c = traffic_class_from(name);
    if (!c)
        fail(line_no, "unknown class '" + name + "'");
    return *c;
}

condition parse_condition(std::string_view text, std::size_t line_no) {
    token_reader r(text, line_no);
    r.skip_spaces();
    r.expect("a", "attribute reference 'a<i>'");
    condition c;
    c.attribute_index = r.read_uint("attribute index");
    r.skip_spaces();
    if (r.consume("<=")) {
        c.test = condition::kind::leq;
        r.skip_spaces();
        c.threshold = r.read_double("threshold");
    } else if (r.consume(">")) {
        c.test = condition::kind::gt;
        r.skip_spaces();
        c.threshold = r.read_double("threshold");
    } else if (r.consume("bin=")) {
        c.test = condition::kind::in_bin;
        c.bin = r.read_uint("bin index");
    } else {
        fail(line_no, "expected '<=', '>' or 'bin=' after attribute");
    }
    r.skip_spaces();
    if (!r.done())
        fail(line_no, "trailing text in condition");
    return c;
}

} // namespace

std::string serialize_model(const rule_model &model) {
    std::ostringstream out;
    out << "learner=" << to_string(model.learner) << '\n';
    out << "schema=" << model.schema_fingerprint << '\n';
    out << "params=";
    bool first = true;
    for (const auto &[k, v] : model.params) {
        if (!first)
            out << ',';
        out << k << '=' << v;
        first = false;
    }
    out << '\n';

    for (const auto &cuts : model.cut_table) {
        out << "attr:" << cuts.attribute_index << " cuts:";
        for (std::size_t i = 0; i < cuts.cuts.size(); ++i) {
            if (i)
                out << ',';
            out << format_double(cuts.cuts[i]);
        }
        out << '\n';
    }

    for (const auto &ru : model.ordered_rules) {
        out << "rule: ";
        for (std::size_t i = 0; i < ru.conditions.size(); ++i) {
            if (i)
                out << " && ";
            out << condition_text(ru.conditions[i]);
        }
        out << (ru.conditions.empty() ? "=> " : " => ") << to_string(ru.consequent) << '\n';
    }

    if (model.table) {
        for (const auto &[key, cls] : model.table->cells) {
            out << "cell: ";
            for (std::size_t i = 0; i < key.size(); ++i) {
                if (i)
                    out << ',';
                out << key[i];
            }
            out << " => " << to_string(cls) << '\n';
        }
    }

    out << "default: " << to_string(model.default_class) << '\n';
    return out.str();
}

rule_model parse_model(std::istream &in) {
    rule_model model;
    std::string line;
    std::size_t line_no = 0;

    auto next_line = [&]() -> bool {
        while (std::getline(in, line)) {
            ++line_no;
            if (!line.empty() && line.back() == '\r')
                line.pop_back();
            if (!line.empty())
                return true;
        }
        return false;
    };

    // header: learner, schema, params
    if (!next_line() || !line.starts_with("learner="))
        fail(line_no ? line_no : 1, "expected 'learner=' header");
    const auto id = learner_from(line.substr(8));
    if (!id)
        fail(line_no, "unknown learner '" + line.substr(8) + "'");
    model.learner = *id;

    if (!next_line() || !line.starts_with("schema="))
        fail(line_no ? line_no : 1, "expected 'schema=' header");
    model.schema_fingerprint = line.substr(7);

    if (!next_line() || !line.starts_with("params="))
        fail(line_no ? line_no : 1, "expected 'params=' header");
    {
        const std::string body = line.substr(7);
        std::size_t start = 0;
        while (start < body.size()) {
            std::size_t comma = body.find(',', start);
            if (comma == std::string::npos)
                comma = body.size();
            const std::string pair = body.substr(start, comma - start);
            const std::size_t eq = pair.find('=');
            if (eq == std::string::npos)
                fail(line_no, "malformed params entry '" + pair + "'");
            model.params[pair.substr(0, eq)] = pair.substr(eq + 1);
            start = comma + 1;
        }
    }

    // body
    std::vector<std::pair<std::vector<std::size_t>, traffic_class>> cells;
    bool saw_default = false;
    while (next_line()) {
        if (line.starts_with("attr:")) {
            token_reader r(std::string_view(line).substr(5), line_no);
            bin_cuts cuts;
            cuts.attribute_index = r.read_uint("attribute index");
            r.skip_spaces();
            r.expect("cuts:", "'cuts:'");
            if (!r.done()) {
                for (;;) {
                    cuts.cuts.push_back(r.read_double("cut value"));
                    if (r.done())
                        break;
                    r.expect(",", "','");
                }
            }
            model.cut_table.push_back(std::move(cuts));
        } else if (line.starts_with("rule:")) {
            const std::string body = line.substr(5);
            const std::size_t arrow = body.find("=>");
            if (arrow == std::string::npos)
                fail(line_no, "rule line missing '=>'");
            rule ru;
            std::string lhs = body.substr(0, arrow);
            std::size_t start = 0;
            for (;;) {
                std::size_t amp = lhs.find("&&", start);
                const std::string chunk =
                    lhs.substr(start, (amp == std::string::npos ? lhs.size() : amp) - start);
                bool blank = true;
                for (char ch : chunk)
                    blank = blank && ch == ' ';
                if (!blank)
                    ru.conditions.push_back(parse_condition(chunk, line_no));
                else if (amp != std::string::npos)
                    fail(line_no, "empty condition before '&&'");
                if (amp == std::string::npos)
                    break;
                start = amp + 2;
            }
            token_reader r(std::string_view(body).substr(arrow + 2), line_no);
            ru.consequent = read_class(r, line_no);
            model.ordered_rules.push_back(std::move(ru));
        } else if (line.starts_with("cell:")) {
            const std::string body = line.substr(5);
            const std::size_t arrow = body.find("=>");
            if (arrow == std::string::npos)
                fail(line_no, "cell line missing '=>'");
            token_reader key_reader(std::string_view(body).substr(0, arrow), line_no);
            std::vector<std::size_t> key;
            key_reader.skip_spaces();
            for (;;) {
                key.push_back(key_reader.read_uint("bin index"));
                key_reader.skip_spaces();
                if (!key_reader.consume(","))
                    break;
                key_reader.skip_spaces();
            }
            token_reader r(std::string_view(body).substr(arrow + 2), line_no);
            cells.emplace_back(std::move(key), read_class(r, line_no));
        } else if (line.starts_with("default:")) {
            token_reader r(std::string_view(line).substr(8), line_no);
            model.default_class = read_class(r, line_no);
            saw_default = true;
            break;
        } else {
            fail(line_no, "unrecognized line");
        }
    }
    if (!saw_default)
        fail(line_no == 0 ? 1 : line_no, "unexpected end of model (missing 'default:' line)");
    while (next_line())
        fail(line_no, "content after 'default:' line");

    if (model.learner == learner_id::dtable) {
        decision_table_core core;
        core.majority_class = model.default_class;
        for (const auto &cuts : model.cut_table)
            core.selected_attributes.push_back(cuts.attribute_index);
        const std::size_t want = core.selected_attributes.size();
        for (auto &[key, cls] : cells) {
            if (key.size() != want)
                throw data_format_error("model: cell key arity " + std::to_string(key.size()) +
                                        " does not match " + std::to_string(want) +
                                        " selected attributes");
            core.cells.emplace(std::move(key), cls);
        }
        model.table = std::move(core);
    } else if (!cells.empty()) {
        throw data_format_error("model: cell lines are only valid for learner dtable");
    }

    return model;
}

rule_model parse_model_text(const std::string &text) {
    std::istringstream in(text);
    return parse_model(in);
}

void write_model_file(const rule_model &model, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw data_format_error("cannot write '" + path + "'");
    out << serialize_model(model);
}

rule_model load_model_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw data_format_error("cannot open '" + path + "'");
    return parse_model(in);
}

} // namespace mibwarden
