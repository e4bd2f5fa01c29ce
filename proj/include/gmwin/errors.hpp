#pragma once

#include <stdexcept>
#include <string>

namespace gmwin {

/// Raised when an internal exactness certificate fails. This never signals
/// bad input; it signals a broken convention or a genericity violation.
class certification_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Input-file parse failure with position information.
class parse_error : public std::invalid_argument {
public:
    parse_error(int line, int column, const std::string& message)
        : std::invalid_argument("parse error at line " + std::to_string(line) + ", column "
                                + std::to_string(column) + ": " + message),
          line_(line), column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

}  // namespace gmwin
