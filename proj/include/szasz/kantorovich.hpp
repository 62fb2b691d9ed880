#ifndef SZASZ_KANTOROVICH_HPP
#define SZASZ_KANTOROVICH_HPP

#include <cmath>

#include "szasz/function.hpp"
#include "szasz/operators.hpp"
#include "szasz/poisson.hpp"
#include "szasz/quadrature.hpp"

namespace szasz {

/// Kantorovich variant: n Sum_k w_k int_{k/n}^{(k+1)/n} f(t) dt, with the
/// weights of the modified operator. Each cell integral is a fixed-order
/// Gauss-Legendre rule, exact for polynomials up to degree 2*quad_order - 1.
template <typename Scalar>
Scalar eval_kantorovich(const ScalarFunction<Scalar>& fn, const OperatorParams<Scalar>& params, Scalar x,
                        const EvalConfig& cfg = {})
{
    using std::exp;
    cfg.validate();
    const Scalar mu = modified_intensity(params, x);
    const Scalar n = Scalar(params.n());
    const auto rule = gauss_legendre<Scalar>(cfg.quad_order);
    const auto weights = poisson_weights(mu, Scalar(cfg.series_tol));
    const Growth growth = fn.growth;

    auto log_env = [&](Eigen::Index k) { return growth.log_envelope(Scalar(k + 1) / n); };

    if (fn.has_scaled()) {
        // f(t) = e^{c t} h(t); pull e^{c k/n} out of every node in cell k.
        const Scalar rate = Scalar(growth.exp_rate);
        return series_sum(
            weights,
            [&](Eigen::Index k) {
                const Scalar lo = Scalar(k) / n;
                const Scalar avg = rule.cell_average(
                    [&](Scalar t) { return exp(rate * (t - lo)) * fn.scaled(t); }, lo, lo + Scalar(1) / n);
                return ScaledSample<Scalar>{rate * lo, avg};
            },
            log_env, Scalar(cfg.series_tol), cfg.max_extra_terms);
    }
    return series_sum(
        weights,
        [&](Eigen::Index k) {
            const Scalar lo = Scalar(k) / n;
            return ScaledSample<Scalar>{Scalar(0), rule.cell_average(fn.f, lo, lo + Scalar(1) / n)};
        },
        log_env, Scalar(cfg.series_tol), cfg.max_extra_terms);
}

} // namespace szasz

#endif // SZASZ_KANTOROVICH_HPP
