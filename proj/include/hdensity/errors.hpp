#pragma once

#include <stdexcept>
#include <string>

namespace hdensity {

// Malformed or out-of-domain user input (CLI exit code 2).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A configured enumeration or size cap was exceeded (CLI exit code 3).
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Arithmetic domain violation, e.g. inverting zero.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// A caller broke a stream contract (ordering, duplicates).
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace hdensity
