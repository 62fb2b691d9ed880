#ifndef SZASZ_ERRORS_HPP
#define SZASZ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace szasz {

/// Argument outside the mathematical domain of an operation (x < 0, a <= 1, ...).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// A sampled function value or a partial sum became non-finite, or a series
/// failed to reach its truncation criterion.
class OverflowError : public std::overflow_error
{
public:
    using std::overflow_error::overflow_error;
};

/// Analytic derivatives are absent and finite differences are disabled.
class DerivativeUnavailable : public std::logic_error
{
public:
    using std::logic_error::logic_error;
};

/// A function failed the shape screen (monotonicity / convexity) an ordering
/// check depends on.
class PreconditionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace szasz

#endif // SZASZ_ERRORS_HPP
