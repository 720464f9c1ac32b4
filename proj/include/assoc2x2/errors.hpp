#ifndef ASSOC2X2_ERRORS_HPP
#define ASSOC2X2_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace assoc2x2 {

/// A table with a non-positive or non-finite cell, or an invalid group element.
class DegenerateTable : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Coordinates whose table cannot be represented in double precision.
class OverflowError : public std::range_error {
public:
    using std::range_error::range_error;
};

/// Argument outside the domain of a special function or solver.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Measure has no closed form for the requested evaluation route.
class UnsupportedKind : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Cohen's kappa with chance agreement equal to one.
class UndefinedKappa : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Iterative solver failed to converge or lost its bracket.
class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ": " + what),
          line_(line), column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace assoc2x2

#endif // ASSOC2X2_ERRORS_HPP
