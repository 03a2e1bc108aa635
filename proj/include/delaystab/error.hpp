#pragma once

#include <stdexcept>
#include <string>

namespace delaystab {

/// Base for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller supplied input that violates a precondition.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Polynomial with a zero leading coefficient.
class DegeneratePolynomial : public InvalidArgument {
public:
    DegeneratePolynomial() : InvalidArgument("degenerate polynomial: zero leading coefficient") {}
};

/// A numerical procedure failed to produce a result (non-convergence,
/// singularity, missing bracket).
class NumericFailure : public Error {
public:
    using Error::Error;
};

class TableNotApplicable : public InvalidArgument {
public:
    TableNotApplicable() : InvalidArgument("jury table not applicable: degree < 2") {}
};

class SingularTable : public NumericFailure {
public:
    explicit SingularTable(std::size_t row)
        : NumericFailure("singular jury table at row " + std::to_string(row + 1)), row_(row) {}

    /// Zero-based index of the row whose last entry vanished.
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

class PoleError : public NumericFailure {
public:
    using NumericFailure::NumericFailure;
};

class BracketingError : public NumericFailure {
public:
    using NumericFailure::NumericFailure;
};

} // namespace delaystab
