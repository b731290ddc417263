#pragma once

#include <stdexcept>
#include <string>

namespace stabweight {

// Malformed textual input (Pauli strings, instance files, table files).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Operands with incompatible qubit counts or vector lengths.
class DimensionError : public std::invalid_argument {
public:
    explicit DimensionError(const std::string& what) : std::invalid_argument(what) {}
};

// An enumeration or search would exceed its configured resource budget.
// Raised instead of returning a possibly wrong or partial answer.
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace stabweight
