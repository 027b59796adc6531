#ifndef JTV_ERRORS_HPP
#define JTV_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jtv {

// Base of everything thrown by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad inputs: wrong shapes, malformed files, out-of-range parameters.
// The CLI maps these to exit code 1.
struct ValidationError : Error {
    using Error::Error;
};

// Failures of the numerics themselves (solver breakdown, sampling budget
// exhausted). The CLI maps these to exit code 2.
struct NumericError : Error {
    using Error::Error;
};

struct DimensionError : ValidationError {
    using ValidationError::ValidationError;
};

struct SizeError : ValidationError {
    using ValidationError::ValidationError;
};

struct GeometryError : ValidationError {
    using ValidationError::ValidationError;
};

struct EmptyInputError : ValidationError {
    using ValidationError::ValidationError;
};

struct IsolatedVertexError : ValidationError {
    using ValidationError::ValidationError;
};

struct DisconnectedGraphError : ValidationError {
    using ValidationError::ValidationError;
};

struct DegenerateLayoutError : ValidationError {
    using ValidationError::ValidationError;
};

struct FrameTooShortError : ValidationError {
    using ValidationError::ValidationError;
};

struct TooFewSamplesError : ValidationError {
    using ValidationError::ValidationError;
};

struct NotDefinedError : ValidationError {
    using ValidationError::ValidationError;
};

// Generator could not produce a connected graph within its retry budget.
struct ConnectivityError : NumericError {
    using NumericError::NumericError;
};

struct ConvergenceError : NumericError {
    using NumericError::NumericError;
};

}  // namespace jtv

#endif
