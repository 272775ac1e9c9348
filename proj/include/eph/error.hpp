#pragma once

#include <stdexcept>
#include <string>

namespace eph {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the documented domain (t outside [0,1], omega <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Naive closed forms would overflow double range.
class OverflowHazard : public Error {
public:
    using Error::Error;
};

class ZeroVector : public Error {
public:
    using Error::Error;
};

// d antiparallel to (1,0,0): the square-root formula for A i A* = d is singular.
class DegenerateDirection : public Error {
public:
    using Error::Error;
};

class SingularControlBlock : public Error {
public:
    using Error::Error;
};

// Malformed documents or flags.
class InputError : public Error {
public:
    using Error::Error;
};

}  // namespace eph
