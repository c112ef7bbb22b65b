#pragma once

#include <stdexcept>
#include <string>

namespace valinf {

// Base class for everything thrown by this library. Callers that only want
// a coarse split can catch Error for library failures and std::invalid_argument
// for precondition violations.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The intersection form has a nonzero kernel, so dual classes do not exist.
// On boundary data this is the torus-like signal.
struct DegenerateForm : Error {
    using Error::Error;
};

// No linear recurrence of order <= length/2 reproduces the sequence.
struct NoRecurrence : Error {
    using Error::Error;
};

// The characteristic polynomial has no monic integer quadratic divisor whose
// dominant root dominates every other root.
struct NotQuadratic : Error {
    using Error::Error;
};

struct Disconnected : Error {
    using Error::Error;
};

struct InvalidPoint : Error {
    using Error::Error;
};

struct NotContractible : Error {
    using Error::Error;
};

struct NotACycle : Error {
    using Error::Error;
};

struct InvalidWeight : Error {
    using Error::Error;
};

struct NotLoxodromic : Error {
    using Error::Error;
};

struct StartsAtRepeller : Error {
    using Error::Error;
};

struct DegreeOverflow : Error {
    using Error::Error;
};

struct SingularMatrix : Error {
    using Error::Error;
};

// Text input could not be parsed; line is 1-based, 0 when unknown.
struct ParseError : Error {
    int line;
    ParseError(const std::string& msg, int line_number = 0)
        : Error(line_number > 0 ? "line " + std::to_string(line_number) + ": " + msg : msg),
          line(line_number) {}
};

} // namespace valinf
