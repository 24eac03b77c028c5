#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace crw {

/// Base class for everything thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Model construction rejected the input (CLI exit code 2).
class ValidationError : public Error {
public:
    using Error::Error;
};

class OutOfRangeError : public ValidationError {
public:
    OutOfRangeError(std::size_t vertex, double value)
        : ValidationError("coin probability at vertex " + std::to_string(vertex) +
                          " is " + std::to_string(value) + ", must lie strictly inside (0,1)"),
          vertex(vertex) {}
    std::size_t vertex;
};

class DegenerateCoinError : public ValidationError {
public:
    DegenerateCoinError(std::size_t vertex, double diff)
        : ValidationError("coin at vertex " + std::to_string(vertex) + " has p_L - p_R = " +
                          std::to_string(diff) + "; |p_L - p_R| must lie strictly inside (0,1)"),
          vertex(vertex) {}
    std::size_t vertex;
};

class NonIsospectralError : public ValidationError {
public:
    NonIsospectralError(std::size_t vertex, double found, double expected)
        : ValidationError("coin at vertex " + std::to_string(vertex) + " has p_L - p_R = " +
                          std::to_string(found) + " but vertex 0 fixed nu2 = " +
                          std::to_string(expected)),
          vertex(vertex) {}
    std::size_t vertex;
};

class DimensionMismatchError : public Error {
public:
    DimensionMismatchError(std::size_t got, std::size_t want)
        : Error("vector has length " + std::to_string(got) + ", expected " +
                std::to_string(want)) {}
};

class NotAProbabilityStateError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    OverflowError(const std::string& what, std::size_t vertex)
        : Error(what + " (at vertex " + std::to_string(vertex) + ")"), vertex(vertex) {}
    std::size_t vertex;
};

class ConvergenceFailureError : public Error {
public:
    using Error::Error;
};

/// The quadratic eigenvalue map produced a non-positive discriminant.
class ComplexRootsError : public Error {
public:
    ComplexRootsError(double lambda, double nu2, double discriminant)
        : Error("mu quadratic has non-real roots: lambda = " + std::to_string(lambda) +
                ", nu2 = " + std::to_string(nu2) + ", discriminant = " +
                std::to_string(discriminant)),
          lambda(lambda), nu2(nu2), discriminant(discriminant) {}
    double lambda;
    double nu2;
    double discriminant;
};

/// Some eigenvalue of B violates sqrt(-4*nu2)/(1-nu2) < |lambda| (CLI exit code 4).
class AssumptionViolatedError : public Error {
public:
    AssumptionViolatedError(std::vector<double> offending, double threshold)
        : Error(describe(offending, threshold)),
          offending(std::move(offending)), threshold(threshold) {}
    std::vector<double> offending;
    double threshold;

private:
    static std::string describe(const std::vector<double>& offending, double threshold) {
        std::string msg = "spectrum violates the negative-nu2 admissibility bound |lambda| > " +
                          std::to_string(threshold) + "; offending lambda:";
        for (double l : offending) msg += " " + std::to_string(l);
        return msg;
    }
};

class NearDegenerateError : public Error {
public:
    NearDegenerateError(double a, double b)
        : Error("eigenvalues " + std::to_string(a) + " and " + std::to_string(b) +
                " are closer than the simplicity tolerance") {}
};

/// The two linear-dependence criteria disagree; signals a construction bug.
class InconsistentLemmaError : public Error {
public:
    using Error::Error;
};

/// Malformed input file (CLI exit code 3).
class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace crw
