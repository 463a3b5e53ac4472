// csv.hpp
//
// Dataset file format: UTF-8, comma separated, one header row. Labeled files
// end with a literal "class" column; unlabeled files omit it. Numbers use a
// decimal point and no thousands separators. write_csv emits shortest
// round-trip decimal forms, so load_csv(write_csv(ds)) reproduces ds exactly.

#ifndef MIBWARDEN_CSV_HPP
#define MIBWARDEN_CSV_HPP

#include <iosfwd>
#include <string>

#include "mibwarden/schema.hpp"

namespace mibwarden {

dataset load_csv(std::istream &in, const std::string &provenance);
dataset load_csv_file(const std::string &path);

void write_csv(const dataset &ds, std::ostream &out);
void write_csv_file(const dataset &ds, const std::string &path);

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

} // namespace mibwarden

#endif // MIBWARDEN_CSV_HPP
