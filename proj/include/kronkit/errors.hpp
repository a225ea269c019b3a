#pragma once

#include <stdexcept>

namespace kronkit {

// Dimension or block-shape mismatch between arguments.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A requested result would overflow the platform index type.
class SizeError : public std::length_error {
public:
    using std::length_error::length_error;
};

// Index, mode, or rank outside its admissible range.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

// Input outside the mathematical domain of the operation (NaN, zero matrix).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Caller violated a structural precondition (e.g. an unsorted spectrum).
class ContractError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Zero input for which the factor scale split is undefined.
class DegenerateInputError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

} // namespace kronkit
