#pragma once

#include <stdexcept>
#include <string>

namespace spt {

// Input files or values that violate the panel data model. The CLI maps
// these (and ParseError) to exit code 1; everything else exits with 2.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public ValidationError {
public:
    ParseError(const std::string& what, std::size_t row)
        : ValidationError("row " + std::to_string(row) + ": " + what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class LookupError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// A stock, rank slot or dividend entry required by an operation is absent.
class CoverageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ArgumentError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Mathematical domain violations (zero weights, non-finite inputs).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A generating function lacks the derivative an operation needs.
class CapabilityError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace spt
