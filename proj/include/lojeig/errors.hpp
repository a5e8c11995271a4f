#ifndef LOJEIG_ERRORS_HPP
#define LOJEIG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace lojeig {

// Bad arguments: dimension mismatches, malformed faces, invalid weights.
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& msg) : std::invalid_argument(msg) {}
};

// Problem exceeds a hard enumeration cap (face enumeration is exponential).
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Non-finite values or solver breakdown.
class numeric_error : public std::runtime_error {
public:
    explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Problem-file schema violations; carries a field path for diagnostics.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& path, const std::string& msg)
        : std::runtime_error(path + ": " + msg), field_path(path) {}
    std::string field_path;
};

} // namespace lojeig

#endif
