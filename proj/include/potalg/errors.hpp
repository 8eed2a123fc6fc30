#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace potalg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Non-finite input, or an evaluation point outside a function's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A rational expression hit a vanishing denominator.
class SingularityError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Potential parameters violate a validity constraint.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Caller misuse: empty sample sets, malformed grids, wrong solver path.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Level index outside the finite bound-state ladder.
class RangeError : public Error {
public:
    RangeError(const std::string& what, int n_max) : Error(what), n_max_(n_max) {}
    /// Largest admissible level index (-1 when the ladder is empty).
    int n_max() const noexcept { return n_max_; }

private:
    int n_max_;
};

/// An iterative eigensolver failed to converge.
class NumericalFailure : public Error {
public:
    NumericalFailure(const std::string& what, std::size_t block_index)
        : Error(what), block_index_(block_index) {}
    std::size_t block_index() const noexcept { return block_index_; }

private:
    std::size_t block_index_;
};

/// Bound-state counts differ between refinement levels.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

}  // namespace potalg
