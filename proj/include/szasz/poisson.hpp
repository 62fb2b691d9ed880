#ifndef SZASZ_POISSON_HPP
#define SZASZ_POISSON_HPP

#include <Eigen/Core>

#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "szasz/errors.hpp"

namespace szasz {

/// Truncated Poisson(mu) weights on the index window [k_min, k_max].
///
/// Invariants: weights >= 0, weights.sum() == 1 up to rounding, tail_mass <= tol
/// bounds the probability discarded on both sides of the window.
template <typename Scalar = double>
struct WeightSeries
{
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

    Scalar mu{0};
    Eigen::Index k_min{0};
    Eigen::Index k_max{0};
    Array weights;
    Scalar tail_mass{0};

    Eigen::Index size() const { return weights.size(); }
    Scalar weight(Eigen::Index k) const { return weights(k - k_min); }
};

namespace detail {

template <typename Scalar>
Scalar log_poisson(Scalar mu, Eigen::Index k)
{
    using std::lgamma;
    using std::log;
    const Scalar kk = Scalar(k);
    return (k == 0 ? Scalar(0) : kk * log(mu)) - mu - lgamma(kk + Scalar(1));
}

} // namespace detail

/// Poisson weights grown outward from the mode until each tail's geometric
/// majorant falls below tol/2.
///
/// The mode weight is formed in log space, so intensities of order 1e4 and
/// beyond do not underflow; the recurrence then runs in linear space.
template <typename Scalar>
WeightSeries<Scalar> poisson_weights(Scalar mu, Scalar tol)
{
    using std::exp;
    using std::floor;

    if (!(mu >= Scalar(0)) || !std::isfinite(static_cast<double>(mu)))
        throw DomainError("poisson intensity must be finite and >= 0");
    if (!(tol > Scalar(0) && tol <= Scalar(1e-3)))
        throw DomainError("series tolerance must lie in (0, 1e-3]");

    WeightSeries<Scalar> out;
    out.mu = mu;
    if (mu == Scalar(0)) {
        out.weights = WeightSeries<Scalar>::Array::Ones(1);
        return out;
    }

    // Each tail is held below tol/2 relative to the retained mass, which is
    // itself at least 1 - tol.
    const Scalar half = tol / Scalar(2) * (Scalar(1) - tol);
    const Eigen::Index mode = static_cast<Eigen::Index>(floor(mu));

    std::deque<Scalar> w{exp(detail::log_poisson(mu, mode))};
    Eigen::Index lo = mode;
    Eigen::Index hi = mode;

    auto upper_bound = [&] {
        const Scalar next = w.back() * mu / Scalar(hi + 1);
        const Scalar ratio = mu / Scalar(hi + 2);
        return ratio < Scalar(1) ? next / (Scalar(1) - ratio) : std::numeric_limits<Scalar>::infinity();
    };
    auto lower_bound = [&] {
        if (lo == 0)
            return Scalar(0);
        const Scalar prev = w.front() * Scalar(lo) / mu;
        const Scalar ratio = Scalar(lo - 1) / mu;
        return ratio < Scalar(1) ? prev / (Scalar(1) - ratio) : std::numeric_limits<Scalar>::infinity();
    };

    const Eigen::Index cap = mode + 64 + static_cast<Eigen::Index>(64 * std::sqrt(static_cast<double>(mu)));
    Scalar upper = upper_bound();
    while (upper > half) {
        w.push_back(w.back() * mu / Scalar(hi + 1));
        ++hi;
        if (hi > cap)
            throw OverflowError("poisson window failed to converge for mu = " + std::to_string(static_cast<double>(mu)));
        upper = upper_bound();
    }
    Scalar lower = lower_bound();
    while (lower > half) {
        w.push_front(w.front() * Scalar(lo) / mu);
        --lo;
        lower = lower_bound();
    }

    out.k_min = lo;
    out.k_max = hi;
    out.weights.resize(static_cast<Eigen::Index>(w.size()));
    for (Eigen::Index i = 0; i < out.weights.size(); ++i)
        out.weights(i) = w[static_cast<std::size_t>(i)];

    const Scalar retained = out.weights.sum();
    out.weights /= retained;
    out.tail_mass = (upper + lower) / retained;
    return out;
}

/// One sample of the summand at index k, as value * e^{log_scale}.
template <typename Scalar>
struct ScaledSample
{
    Scalar log_scale{0};
    Scalar value{0};
};

namespace detail {

template <typename Scalar>
Scalar log_add(Scalar a, Scalar b)
{
    using std::exp;
    using std::log1p;
    using std::max;
    using std::min;
    if (a == -std::numeric_limits<Scalar>::infinity())
        return b;
    if (b == -std::numeric_limits<Scalar>::infinity())
        return a;
    const Scalar hi = max(a, b);
    return hi + log1p(exp(min(a, b) - hi));
}

} // namespace detail

/// Sum_k w_k * sample(k), k >= k_min, with a certified upper truncation.
///
/// The sum starts on the mass window of `ws` and continues upward (in log
/// space) until the envelope-weighted term e_k = w_k exp(log_env(k)) and its
/// geometric majorant e_k r/(1-r) are below tol/2 of the accumulated
/// envelope mass. `log_env` must be non-decreasing with non-increasing
/// increments, which holds for every Growth envelope.
template <typename Scalar, typename Sample, typename LogEnvelope>
Scalar series_sum(const WeightSeries<Scalar>& ws, Sample&& sample, LogEnvelope&& log_env,
                  Scalar tol, long max_extra_terms)
{
    using std::exp;
    using std::isfinite;
    using std::log;

    const Scalar neg_inf = -std::numeric_limits<Scalar>::infinity();
    Scalar sum{0};
    Scalar log_env_mass = neg_inf;

    auto accumulate = [&](Eigen::Index k, Scalar w, Scalar log_w) {
        const ScaledSample<Scalar> s = sample(k);
        if (!isfinite(s.value) || !isfinite(s.log_scale))
            throw OverflowError("non-finite sample at k = " + std::to_string(k));
        const Scalar term = s.log_scale == Scalar(0) ? w * s.value : exp(log_w + s.log_scale) * s.value;
        sum += term;
        if (!isfinite(sum))
            throw OverflowError("partial sum overflowed at k = " + std::to_string(k));
        log_env_mass = detail::log_add(log_env_mass, log_w + log_env(k));
    };

    for (Eigen::Index i = 0; i < ws.size(); ++i) {
        const Scalar w = ws.weights(i);
        if (w > Scalar(0))
            accumulate(ws.k_min + i, w, log(w));
    }
    if (ws.mu == Scalar(0))
        return sum;

    const Scalar log_mu = log(ws.mu);
    const Scalar log_half_tol = log(tol / Scalar(2));
    Eigen::Index k = ws.k_max;
    Scalar log_w = log(ws.weights(ws.size() - 1));

    for (long extra = 0;; ++extra) {
        const Scalar log_ratio = log_mu - log(Scalar(k + 1)) + log_env(k + 1) - log_env(k);
        if (log_ratio < Scalar(0)) {
            const Scalar ratio = exp(log_ratio);
            const Scalar log_tail = log_w + log_env(k) + log_ratio - log(Scalar(1) - ratio);
            if (log_w + log_env(k) <= log_half_tol + log_env_mass && log_tail <= log_half_tol + log_env_mass)
                break;
        }
        if (extra >= max_extra_terms)
            throw OverflowError("series tail did not converge within the term budget");
        log_w += log_mu - log(Scalar(k + 1));
        ++k;
        accumulate(k, exp(log_w), log_w);
    }
    return sum;
}

} // namespace szasz

#endif // SZASZ_POISSON_HPP
