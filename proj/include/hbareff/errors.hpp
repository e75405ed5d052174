#pragma once

#include <stdexcept>
#include <string>

namespace hbareff {

// Base of every library error. The CLI maps subclasses onto exit codes.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidDimensionError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of an operation (mu <= 0, T <= 0, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

class InvalidStateError : public Error {
public:
    using Error::Error;
};

// |r| numerically indistinguishable from 1.
class DegenerateCorrelationError : public Error {
public:
    using Error::Error;
};

class InfeasibleError : public Error {
public:
    using Error::Error;
};

// An analytic minimizer was asked for a purity outside its piece domain.
class PieceDomainError : public Error {
public:
    using Error::Error;
};

// Iterative procedure failed to converge (exit code 3 at the CLI).
class ConvergenceError : public Error {
public:
    using Error::Error;
};

class ResolutionError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace hbareff
