#ifndef SZASZ_OPERATORS_HPP
#define SZASZ_OPERATORS_HPP

#include <cmath>

#include "szasz/function.hpp"
#include "szasz/params.hpp"
#include "szasz/poisson.hpp"

namespace szasz {

/// s_n(x) = x log(a) / (n (a^{1/n} - 1)); the evaluation point at which the
/// classical operator reproduces a^x.
template <typename Scalar>
Scalar transform_point(const OperatorParams<Scalar>& params, Scalar x)
{
    require_nonnegative_x(x);
    return x * params.log_a() / (params.root_gap() * Scalar(params.n()));
}

/// Poisson intensity of the modified operator, x log(a) / (a^{1/n} - 1).
template <typename Scalar>
Scalar modified_intensity(const OperatorParams<Scalar>& params, Scalar x)
{
    require_nonnegative_x(x);
    return x * params.log_a() / params.root_gap();
}

/// Sum_k w_k(mu) f(k/n) for an arbitrary Poisson intensity mu.
template <typename Scalar>
Scalar poisson_sample_sum(const ScalarFunction<Scalar>& fn, int n, Scalar mu, const EvalConfig& cfg)
{
    cfg.validate();
    const Scalar nn = Scalar(n);
    if (mu == Scalar(0))
        return fn(Scalar(0));

    const auto weights = poisson_weights(mu, Scalar(cfg.series_tol));
    const Growth growth = fn.growth;
    auto log_env = [&](Eigen::Index k) { return growth.log_envelope(Scalar(k) / nn); };

    if (fn.has_scaled()) {
        const Scalar rate = Scalar(growth.exp_rate);
        return series_sum(
            weights,
            [&](Eigen::Index k) {
                const Scalar t = Scalar(k) / nn;
                return ScaledSample<Scalar>{rate * t, fn.scaled(t)};
            },
            log_env, Scalar(cfg.series_tol), cfg.max_extra_terms);
    }
    return series_sum(
        weights, [&](Eigen::Index k) { return ScaledSample<Scalar>{Scalar(0), fn(Scalar(k) / nn)}; },
        log_env, Scalar(cfg.series_tol), cfg.max_extra_terms);
}

/// Classical Szasz-Mirakjan operator S_n(f; x).
template <typename Scalar>
Scalar eval_classical(const ScalarFunction<Scalar>& fn, const OperatorParams<Scalar>& params, Scalar x,
                      const EvalConfig& cfg = {})
{
    require_nonnegative_x(x);
    return poisson_sample_sum(fn, params.n(), Scalar(params.n()) * x, cfg);
}

/// Modified operator S*_{n,a}(f; x); reproduces e_0 and a^x.
///
/// Equal to S_n(f; s_n(x)): both sum the same Poisson series, here with
/// intensity x log(a) / (a^{1/n} - 1).
template <typename Scalar>
Scalar eval_modified(const ScalarFunction<Scalar>& fn, const OperatorParams<Scalar>& params, Scalar x,
                     const EvalConfig& cfg = {})
{
    return poisson_sample_sum(fn, params.n(), modified_intensity(params, x), cfg);
}

/// Closed-form image of e^{lambda t}: a^{(e^{lambda/n} - 1) x / (a^{1/n} - 1)}.
/// Any real lambda is accepted.
template <typename Scalar>
Scalar exponential_image(Scalar lambda, const OperatorParams<Scalar>& params, Scalar x)
{
    using std::exp;
    using std::expm1;
    require_nonnegative_x(x);
    return exp(params.log_a() * x * expm1(lambda / Scalar(params.n())) / params.root_gap());
}

/// Classical counterpart: S_n(e^{lambda t}; x) = e^{n x (e^{lambda/n} - 1)}.
template <typename Scalar>
Scalar classical_exponential_image(Scalar lambda, int n, Scalar x)
{
    using std::exp;
    using std::expm1;
    require_nonnegative_x(x);
    return exp(Scalar(n) * x * expm1(lambda / Scalar(n)));
}

} // namespace szasz

#endif // SZASZ_OPERATORS_HPP
