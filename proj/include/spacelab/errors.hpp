#pragma once

#include <stdexcept>
#include <string>

namespace spacelab {

// Bad input: malformed spec, non-increasing payload, cap violations.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A query outside the materialized horizon. Never answered with a silent false.
class OutOfRangeError : public std::out_of_range {
public:
    explicit OutOfRangeError(const std::string& what) : std::out_of_range(what) {}
};

// A search or count hit its node budget. Never carries a partial answer.
class BudgetExhausted : public std::runtime_error {
public:
    explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spacelab
