#ifndef SZASZ_FUNCTION_HPP
#define SZASZ_FUNCTION_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <utility>

#include "szasz/errors.hpp"
#include "szasz/params.hpp"

namespace szasz {

/// Growth envelope |f(t)| <= M (1+t)^poly_degree e^{exp_rate t}.
///
/// The series evaluators use it only to certify where a sum may be truncated;
/// it is never used as a norm.
struct Growth
{
    double poly_degree = 0.0;
    double exp_rate = 0.0;

    static Growth bounded() { return {}; }
    static Growth polynomial(double rho) { return {rho, 0.0}; }
    static Growth exponential(double c, double rho = 0.0) { return {rho, c}; }

    bool is_exponential() const { return exp_rate > 0.0; }

    template <typename Scalar>
    Scalar log_envelope(Scalar t) const
    {
        using std::log1p;
        return Scalar(poly_degree) * log1p(t) + Scalar(exp_rate) * t;
    }
};

/// A real function on [0, inf) with optional analytic derivatives.
///
/// `scaled`, when present, must equal f(t) e^{-exp_rate t}. Series evaluation
/// then multiplies the exponential factor into the weight in log space, which
/// keeps sums finite when individual samples f(k/n) would overflow.
template <typename Scalar = double>
struct ScalarFunction
{
    using Fn = std::function<Scalar(Scalar)>;

    std::string id;
    Fn f;
    Fn d1;
    Fn d2;
    Growth growth;
    Fn scaled;

    Scalar operator()(Scalar t) const { return f(t); }

    bool has_d1() const { return static_cast<bool>(d1); }
    bool has_d2() const { return static_cast<bool>(d2); }
    bool has_scaled() const { return static_cast<bool>(scaled) && growth.is_exponential(); }
};

template <typename Scalar>
ScalarFunction<Scalar> make_function(std::string id, typename ScalarFunction<Scalar>::Fn f,
                                     Growth growth = Growth::bounded())
{
    ScalarFunction<Scalar> out;
    out.id = std::move(id);
    out.f = std::move(f);
    out.growth = growth;
    return out;
}

namespace detail {

template <typename Scalar>
Scalar first_step(Scalar x, const EvalConfig& cfg)
{
    using std::abs;
    using std::cbrt;
    using std::max;
    if (cfg.fd_step_1)
        return Scalar(*cfg.fd_step_1);
    return max(Scalar(1), abs(x)) * cbrt(std::numeric_limits<Scalar>::epsilon());
}

template <typename Scalar>
Scalar second_step(Scalar x, const EvalConfig& cfg)
{
    using std::abs;
    using std::max;
    using std::sqrt;
    if (cfg.fd_step_2)
        return Scalar(*cfg.fd_step_2);
    return max(Scalar(1), abs(x)) * sqrt(sqrt(std::numeric_limits<Scalar>::epsilon()));
}

} // namespace detail

/// f'(x): analytic when available, otherwise central differences (forward
/// second-order differences near 0, where f is undefined to the left).
template <typename Scalar>
Scalar first_derivative(const ScalarFunction<Scalar>& fn, Scalar x, const EvalConfig& cfg = {})
{
    if (fn.has_d1())
        return fn.d1(x);
    if (!cfg.allow_finite_differences)
        throw DerivativeUnavailable("no analytic first derivative for '" + fn.id + "'");
    const Scalar h = detail::first_step(x, cfg);
    if (x - h >= Scalar(0))
        return (fn(x + h) - fn(x - h)) / (Scalar(2) * h);
    return (Scalar(-3) * fn(x) + Scalar(4) * fn(x + h) - fn(x + Scalar(2) * h)) / (Scalar(2) * h);
}

template <typename Scalar>
Scalar second_derivative(const ScalarFunction<Scalar>& fn, Scalar x, const EvalConfig& cfg = {})
{
    if (fn.has_d2())
        return fn.d2(x);
    if (!cfg.allow_finite_differences)
        throw DerivativeUnavailable("no analytic second derivative for '" + fn.id + "'");
    const Scalar h = detail::second_step(x, cfg);
    if (x - h >= Scalar(0))
        return (fn(x + h) - Scalar(2) * fn(x) + fn(x - h)) / (h * h);
    return (Scalar(2) * fn(x) - Scalar(5) * fn(x + h) + Scalar(4) * fn(x + Scalar(2) * h)
            - fn(x + Scalar(3) * h))
           / (h * h);
}

} // namespace szasz

#endif // SZASZ_FUNCTION_HPP
