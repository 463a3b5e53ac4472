// csv.cpp

#include "mibwarden/csv.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <system_error>

#include "mibwarden/errors.hpp"

namespace mibwarden {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_line(const std::string &line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

std::string trim(const std::string &s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r'))
        ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r'))
        --e;
    return s.substr(b, e - b);
}

bool is_class_header(const std::string &cell) {
    if (cell.size() != 5)
        return false;
    const char *want = "class";
    for (std::size_t i = 0; i < 5; ++i) {
        const char ch = cell[i];
        if (ch != want[i] && ch != want[i] - 32) // accept "class" in any case
            return false;
    }
    return true;
}

double parse_value(const std::string &cell, std::size_t line_no, const std::string &column) {
    const std::string text = trim(cell);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw data_format_error("line " + std::to_string(line_no) +
                                ": unparseable numeric at column " + column + ": '" + cell + "'");
    return v;
}

} // namespace

dataset load_csv(std::istream &in, const std::string &provenance) {
    std::string line;
    if (!std::getline(in, line))
        throw data_format_error("empty file");

    // strip a UTF-8 BOM if present
    if (line.size() >= 3 && line.compare(0, 3, "\xef\xbb\xbf") == 0)
        line.erase(0, 3);

    std::vector<std::string> header = split_line(line);
    for (auto &cell : header)
        cell = trim(cell);
    const bool labeled = !header.empty() && is_class_header(header.back());
    if (labeled)
        header.pop_back();
    if (header.empty())
        throw data_format_error("header declares no attributes");

    schema s(header);
    const std::size_t arity = s.size() + (labeled ? 1 : 0);

    std::vector<mib_record> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        const std::vector<std::string> fields = split_line(line);
        if (fields.size() != arity)
            throw data_format_error("line " + std::to_string(line_no) + ": expected " +
                                    std::to_string(arity) + " fields, got " +
                                    std::to_string(fields.size()));
        mib_record r;
        r.values.reserve(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            r.values.push_back(parse_value(fields[i], line_no, s.at(i).name));
        if (labeled) {
            const std::string label = trim(fields.back());
            const auto c = traffic_class_from(label);
            if (!c)
                throw data_format_error("line " + std::to_string(line_no) +
                                        ": unknown class label '" + label + "'");
            r.label = *c;
        }
        records.push_back(std::move(r));
    }

    return dataset(std::move(s), std::move(records), provenance);
}

dataset load_csv_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw data_format_error("cannot open '" + path + "'");
    return load_csv(in, path);
}

void write_csv(const dataset &ds, std::ostream &out) {
    bool any_label = false;
    bool all_labels = true;
    for (const auto &r : ds.records()) {
        if (r.label)
            any_label = true;
        else
            all_labels = false;
    }
    if (any_label && !all_labels)
        throw data_format_error("cannot write a partially labeled dataset");
    const bool labeled = any_label;

    const auto &s = ds.get_schema();
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            out << ',';
        out << s.at(i).name;
    }
    if (labeled)
        out << ",class";
    out << '\n';

    for (const auto &r : ds.records()) {
        for (std::size_t i = 0; i < r.values.size(); ++i) {
            if (i)
                out << ',';
            out << format_double(r.values[i]);
        }
        if (labeled)
            out << ',' << to_string(*r.label);
        out << '\n';
    }
}

void write_csv_file(const dataset &ds, const std::string &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw data_format_error("cannot write '" + path + "'");
    write_csv(ds, out);
}

} // namespace mibwarden
