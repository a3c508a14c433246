#pragma once

#include <stdexcept>
#include <string>

namespace mvml {

/// Failure class, used to map errors onto process exit codes:
/// invalid_argument -> 1, io -> 2, numeric -> 3.
enum class ErrorKind { invalid_argument, io, numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(msg), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Non-finite entries where finite values are required.
struct InvalidInputError : Error {
    explicit InvalidInputError(const std::string& m) : Error(ErrorKind::numeric, m) {}
};

/// Data admits no usable similarity structure (e.g. all points identical
/// under the median bandwidth policy).
struct DegenerateDataError : Error {
    explicit DegenerateDataError(const std::string& m) : Error(ErrorKind::numeric, m) {}
};

/// Kernel violates the constraints a similarity graph needs (zero degree).
struct InvalidKernelError : Error {
    explicit InvalidKernelError(const std::string& m) : Error(ErrorKind::numeric, m) {}
};

/// Laplacian trace too small to normalize.
struct DegenerateLaplacianError : Error {
    explicit DegenerateLaplacianError(const std::string& m) : Error(ErrorKind::numeric, m) {}
};

/// Shape mismatch between operands.
struct DimensionError : Error {
    explicit DimensionError(const std::string& m) : Error(ErrorKind::numeric, m) {}
};

/// Parameter outside its valid range for the given data.
struct InvalidParameterError : Error {
    explicit InvalidParameterError(const std::string& m) : Error(ErrorKind::numeric, m) {}
};

/// Problem size exceeds what an exact method is allowed to attempt.
struct UnsupportedSizeError : Error {
    explicit UnsupportedSizeError(const std::string& m) : Error(ErrorKind::numeric, m) {}
};

/// An internal invariant failed; signals an implementation bug, not bad input.
struct InternalInvariantError : Error {
    explicit InternalInvariantError(const std::string& m) : Error(ErrorKind::numeric, m) {}
};

/// Rejection sampling could not place cluster centers at the requested
/// separation.
struct SeparationInfeasibleError : Error {
    explicit SeparationInfeasibleError(const std::string& m) : Error(ErrorKind::numeric, m) {}
};

/// Malformed input file contents.
struct ParseError : Error {
    explicit ParseError(const std::string& m) : Error(ErrorKind::io, m) {}
};

/// Views disagree on frame count.
struct SynchronizationError : Error {
    explicit SynchronizationError(const std::string& m) : Error(ErrorKind::io, m) {}
};

/// Filesystem-level failure (missing file, unwritable output).
struct IoError : Error {
    explicit IoError(const std::string& m) : Error(ErrorKind::io, m) {}
};

/// Wraps an error thrown inside a named pipeline stage. Keeps the original
/// error kind so exit-code mapping is unchanged.
class StageError : public Error {
public:
    StageError(ErrorKind kind, const std::string& stage, const std::string& msg)
        : Error(kind, "stage " + stage + ": " + msg), stage_(stage) {}
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

}  // namespace mvml
