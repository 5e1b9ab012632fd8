#ifndef CURVELAB_ERRORS_HPP
#define CURVELAB_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace curvelab {

/// Problems with user input: bad expressions, malformed curve-spec files,
/// unknown catalog names. The CLI maps these to exit code 2.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public SpecError {
public:
    SyntaxError(const std::string& what, std::size_t offset)
        : SpecError(what + " (at byte " + std::to_string(offset) + ")"),
          offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

class UnknownIdentifierError : public SpecError {
public:
    using SpecError::SpecError;
};

class ArityError : public SpecError {
public:
    using SpecError::SpecError;
};

class UnknownCurveError : public SpecError {
public:
    using SpecError::SpecError;
};

/// Numeric failures while evaluating a well-formed request: domain walls,
/// degenerate geometry, quadrature breakdown. The CLI maps these to exit 3.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NonFiniteError : public NumericError {
public:
    using NumericError::NumericError;
};

class DepthExceededError : public NumericError {
public:
    using NumericError::NumericError;
};

class OutOfRangeError : public NumericError {
public:
    using NumericError::NumericError;
};

class DomainError : public NumericError {
public:
    using NumericError::NumericError;
};

class SingularSpeedError : public NumericError {
public:
    using NumericError::NumericError;
};

class InflectionPointError : public NumericError {
public:
    using NumericError::NumericError;
};

class DegenerateIndicatrixError : public NumericError {
public:
    using NumericError::NumericError;
};

class DegenerateFitError : public NumericError {
public:
    using NumericError::NumericError;
};

class NonUnitInputError : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace curvelab

#endif
