#pragma once

#include <stdexcept>
#include <string>

namespace ospcert {

// Caller supplied something malformed (bad sizes, mixed fields, unknown labels).
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An arithmetic precondition failed, e.g. inverting zero.
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A computed object violated an internal invariant. This points to a bug in
// the realization or the projection, never to bad user input.
class IntegrityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A request would exceed the configured resource budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ospcert
