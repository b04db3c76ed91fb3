#pragma once

#include <stdexcept>
#include <string>

namespace qspkit {

// Every failure raised by this library derives from Error and carries a
// stable short code alongside the human-readable message.  The two branches
// map onto the CLI exit codes: ValidationError -> 2 (bad or inconsistent
// input), NumericalError -> 3 (the computation itself broke down).
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& message, std::string code = "ValidationError")
        : Error(std::move(code), message) {}
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& message, std::string code = "NumericalError")
        : Error(std::move(code), message) {}
};

// Target polynomial has sup norm too close to (or above) 1, so no admissible
// complementary polynomial exists at the requested margin.
class SupNormTooLarge : public ValidationError {
public:
    explicit SupNormTooLarge(const std::string& message)
        : ValidationError(message, "SupNormTooLarge") {}
};

// Grid doubling hit its cap without meeting the completion tolerance.
class NonConvergent : public NumericalError {
public:
    explicit NonConvergent(const std::string& message)
        : NumericalError(message, "NonConvergent") {}
};

// A linear system was judged numerically singular.
class SingularSystem : public NumericalError {
public:
    explicit SingularSystem(const std::string& message)
        : NumericalError(message, "SingularSystem") {}
};

// A pivot of the structured Cholesky recursion failed to stay positive.
class NonPositivePivot : public NumericalError {
public:
    explicit NonPositivePivot(const std::string& message)
        : NumericalError(message, "NonPositivePivot") {}
};

// Layer stripping lost normalization beyond the allowed drift.
class Degenerate : public NumericalError {
public:
    explicit Degenerate(const std::string& message)
        : NumericalError(message, "Degenerate") {}
};

// Internal consistency check: a quantity that must be real acquired a
// significant imaginary part.
class NonRealTangent : public NumericalError {
public:
    explicit NonRealTangent(const std::string& message)
        : NumericalError(message, "NonRealTangent") {}
};

// Phase factors whose rotations do not telescope to zero total Z-angle.
class NotCanonical : public ValidationError {
public:
    explicit NotCanonical(const std::string& message)
        : ValidationError(message, "NotCanonical") {}
};

}  // namespace qspkit
