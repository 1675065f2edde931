#pragma once

#include <stdexcept>
#include <string>

namespace qhedge {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

// Input violated a documented precondition (non-Hermitian, non-unitary, ...).
class ContractViolation : public Error {
public:
    using Error::Error;
};

class NotPsdError : public Error {
public:
    using Error::Error;
};

// A scalar game parameter (alpha, theta, n, k) outside its admissible range.
class ParameterOutOfRange : public Error {
public:
    using Error::Error;
};

class OutOfHedgingRange : public Error {
public:
    using Error::Error;
};

class DegenerateInstance : public Error {
public:
    using Error::Error;
};

class SolverError : public Error {
public:
    SolverError(const std::string& what, double last_gap, int iterations)
        : Error(what), last_gap_(last_gap), iterations_(iterations) {}

    double last_gap() const noexcept { return last_gap_; }
    int iterations() const noexcept { return iterations_; }

private:
    double last_gap_;
    int iterations_;
};

// Malformed external input (JSON documents, CLI expressions).
class FormatError : public Error {
public:
    using Error::Error;
};

// Raised when an internal invariant that the math guarantees fails numerically.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

}  // namespace qhedge
