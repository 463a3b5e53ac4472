// errors.hpp

#ifndef MIBWARDEN_ERRORS_HPP
#define MIBWARDEN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace mibwarden {

/// bad flag values, malformed profiles, invalid parameters
class config_error : public std::runtime_error {
public:
    explicit config_error(const std::string &msg) : std::runtime_error(msg) {}
};

/// malformed input data: CSV rows, snapshot lines, model files
class data_format_error : public std::runtime_error {
public:
    explicit data_format_error(const std::string &msg) : std::runtime_error(msg) {}
};

/// record or dataset does not match the schema a model was trained on
class schema_error : public std::runtime_error {
public:
    explicit schema_error(const std::string &msg) : std::runtime_error(msg) {}
};

} // namespace mibwarden

#endif // MIBWARDEN_ERRORS_HPP
