#ifndef SZASZ_PARAMS_HPP
#define SZASZ_PARAMS_HPP

#include <cmath>
#include <optional>
#include <string>

#include "szasz/errors.hpp"

namespace szasz {

/// Operator index n >= 1 and preserved base a > 1.
template <typename Scalar = double>
class OperatorParams
{
public:
    OperatorParams(int n, Scalar a) : n_(n), a_(a)
    {
        if (n < 1)
            throw DomainError("n must be a positive integer, got " + std::to_string(n));
        if (!(a > Scalar(1)) || !std::isfinite(static_cast<double>(a)))
            throw DomainError("a must exceed 1");
    }

    int n() const { return n_; }
    Scalar a() const { return a_; }
    Scalar log_a() const { using std::log; return log(a_); }

    /// a^{1/n} - 1, formed through expm1 so that a -> 1+ keeps full precision.
    Scalar root_gap() const
    {
        using std::expm1;
        return expm1(log_a() / Scalar(n_));
    }

private:
    int n_;
    Scalar a_;
};

/// Numerical knobs shared by every evaluation routine.
struct EvalConfig
{
    double series_tol = 1e-12;
    int quad_order = 16;
    /// Finite-difference steps; unset means max(1,|x|) * eps^{1/3} (first)
    /// and max(1,|x|) * eps^{1/4} (second).
    std::optional<double> fd_step_1;
    std::optional<double> fd_step_2;
    int grid_points = 2048;
    bool allow_finite_differences = true;
    /// Hard cap on series terms beyond the Poisson mass window.
    long max_extra_terms = 10'000'000;

    void validate() const
    {
        if (!(series_tol > 0.0 && series_tol <= 1e-3))
            throw DomainError("series_tol must lie in (0, 1e-3]");
        if (quad_order < 2)
            throw DomainError("quad_order must be at least 2");
        if (grid_points < 16)
            throw DomainError("grid_points must be at least 16");
        if (fd_step_1 && !(*fd_step_1 > 0.0))
            throw DomainError("fd_step_1 must be positive");
        if (fd_step_2 && !(*fd_step_2 > 0.0))
            throw DomainError("fd_step_2 must be positive");
    }
};

template <typename Scalar>
inline void require_nonnegative_x(Scalar x)
{
    if (!(x >= Scalar(0)) || !std::isfinite(static_cast<double>(x)))
        throw DomainError("x must be a finite value >= 0");
}

} // namespace szasz

#endif // SZASZ_PARAMS_HPP
