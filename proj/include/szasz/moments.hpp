#ifndef SZASZ_MOMENTS_HPP
#define SZASZ_MOMENTS_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "szasz/errors.hpp"
#include "szasz/params.hpp"

namespace szasz {

enum class MomentKind { raw, central, kantorovich_raw };

inline const char* to_string(MomentKind kind)
{
    switch (kind) {
    case MomentKind::raw: return "raw";
    case MomentKind::central: return "central";
    case MomentKind::kantorovich_raw: return "kantorovich_raw";
    }
    return "?";
}

template <typename Scalar = double>
struct MomentRequest
{
    MomentKind kind;
    int order;
    OperatorParams<Scalar> params;
    Scalar x;

    void validate() const
    {
        require_nonnegative_x(x);
        const bool ok = (kind == MomentKind::raw && order >= 0 && order <= 4)
                        || (kind == MomentKind::central && order >= 1 && order <= 4)
                        || (kind == MomentKind::kantorovich_raw && order >= 0 && order <= 2);
        if (!ok)
            throw DomainError(std::string("unsupported order ") + std::to_string(order) + " for "
                              + to_string(kind) + " moment");
    }
};

/// S*_{n,a}(e_i; x) for i = 0..4.
///
/// With d = a^{1/n} - 1 and u = x log a:
///   e_1 -> u / (d n)
///   e_2 -> u (d + u) / (d n)^2
///   e_3 -> u (d^2 + 3 d u + u^2) / (d n)^3
///   e_4 -> u (d^3 + 7 d^2 u + 6 d u^2 + u^3) / (d n)^4
template <typename Scalar>
Scalar raw_moment(int order, const OperatorParams<Scalar>& params, Scalar x)
{
    MomentRequest<Scalar>{MomentKind::raw, order, params, x}.validate();
    const Scalar d = params.root_gap();
    const Scalar n = Scalar(params.n());
    const Scalar u = x * params.log_a();
    const Scalar dn = d * n;
    switch (order) {
    case 0: return Scalar(1);
    case 1: return u / dn;
    case 2: return u * (d + u) / (dn * dn);
    case 3: return u * (d * d + Scalar(3) * d * u + u * u) / (dn * dn * dn);
    default:
        return u * (d * d * d + Scalar(7) * d * d * u + Scalar(6) * d * u * u + u * u * u)
               / (dn * dn * dn * dn);
    }
}

/// S*_{n,a}((t - x)^r; x) for r = 1..4.
///
/// Orders 1-3 are closed forms; order 4 is the binomial expansion over the
/// raw moments.
template <typename Scalar>
Scalar central_moment(int order, const OperatorParams<Scalar>& params, Scalar x)
{
    MomentRequest<Scalar>{MomentKind::central, order, params, x}.validate();
    const Scalar d = params.root_gap();
    const Scalar n = Scalar(params.n());
    const Scalar L = params.log_a();
    const Scalar dn = d * n;
    switch (order) {
    case 1: return -x * (dn - L) / dn;
    case 2: return x / (dn * dn) * (dn * dn * x - d * (Scalar(2) * n * x - Scalar(1)) * L + x * L * L);
    case 3: {
        const Scalar nx = n * x;
        return x / (dn * dn * dn)
               * (-dn * dn * dn * x * x + d * d * (Scalar(1) - Scalar(3) * nx + Scalar(3) * nx * nx) * L
                  + Scalar(3) * d * x * (Scalar(1) - nx) * L * L + x * x * L * L * L);
    }
    default: {
        const Scalar x2 = x * x;
        return raw_moment(4, params, x) - Scalar(4) * x * raw_moment(3, params, x)
               + Scalar(6) * x2 * raw_moment(2, params, x) - Scalar(4) * x2 * x * raw_moment(1, params, x)
               + x2 * x2;
    }
    }
}

/// Alternative expanded forms of the third and fourth central moments, kept
/// as a comparison path only.
///
/// The order-3 expansion has the opposite sign of the true moment; the
/// order-4 expansion agrees with the binomial form.
template <typename Scalar>
Scalar central_moment_expanded(int order, const OperatorParams<Scalar>& params, Scalar x)
{
    require_nonnegative_x(x);
    const Scalar d = params.root_gap();
    const Scalar n = Scalar(params.n());
    const Scalar L = params.log_a();
    const Scalar dn = d * n;
    const Scalar nx = n * x;
    if (order == 3)
        return x / (dn * dn * dn)
               * (dn * dn * dn * x * x - d * d * (Scalar(1) - Scalar(3) * nx + Scalar(3) * nx * nx) * L
                  + Scalar(3) * d * x * (Scalar(-1) + nx) * L * L - x * x * L * L * L);
    if (order == 4)
        return x / (dn * dn * dn * dn)
               * (dn * dn * dn * dn * x * x * x
                  - d * d * d * (Scalar(-1) + Scalar(4) * nx - Scalar(6) * nx * nx + Scalar(4) * nx * nx * nx) * L
                  + d * d * x * (Scalar(7) - Scalar(12) * nx + Scalar(6) * nx * nx) * L * L
                  - Scalar(2) * d * x * x * (Scalar(-3) + Scalar(2) * nx) * L * L * L
                  + x * x * x * L * L * L * L);
    throw DomainError("expanded central moment exists only for orders 3 and 4");
}

/// Kantorovich variant moments:
///   e_0 -> 1,  e_1 -> 1/(2n) + s_n(x),
///   e_2 -> 1/(3n^2) + 2u/(d n^2) + u^2/(d n)^2.
template <typename Scalar>
Scalar kantorovich_raw_moment(int order, const OperatorParams<Scalar>& params, Scalar x)
{
    MomentRequest<Scalar>{MomentKind::kantorovich_raw, order, params, x}.validate();
    const Scalar d = params.root_gap();
    const Scalar n = Scalar(params.n());
    const Scalar u = x * params.log_a();
    const Scalar dn = d * n;
    switch (order) {
    case 0: return Scalar(1);
    case 1: return Scalar(1) / (Scalar(2) * n) + u / dn;
    default: return Scalar(1) / (Scalar(3) * n * n) + Scalar(2) * u / (dn * n) + u * u / (dn * dn);
    }
}

template <typename Scalar>
Scalar closed_form_moment(const MomentRequest<Scalar>& req)
{
    switch (req.kind) {
    case MomentKind::raw: return raw_moment(req.order, req.params, req.x);
    case MomentKind::central: return central_moment(req.order, req.params, req.x);
    case MomentKind::kantorovich_raw: return kantorovich_raw_moment(req.order, req.params, req.x);
    }
    throw DomainError("unknown moment kind");
}

/// Brute-force evaluation of any moment request by direct summation of the
/// Poisson series in extended precision.
///
/// Shares nothing with the closed forms or with poisson_weights: the
/// intensity is formed as x log a / (a^{1/n} - 1) through powl, each weight
/// is an independent exp(k log mu - mu - lgamma(k+1)), and Kantorovich cells
/// are integrated exactly, n * int_{k/n}^{(k+1)/n} t^i dt. Accuracy is a few
/// units of 1e-16 relative to the largest summand, far inside `tol`, which
/// only sets the truncation point.
template <typename Scalar>
Scalar moment_oracle(const MomentRequest<Scalar>& req, double tol = 1e-12)
{
    req.validate();
    using Ext = long double;
    const Ext n = static_cast<Ext>(req.params.n());
    const Ext a = static_cast<Ext>(req.params.a());
    const Ext x = static_cast<Ext>(req.x);
    const int r = req.order;

    auto summand = [&](Ext k) -> Ext {
        switch (req.kind) {
        case MomentKind::raw: return std::pow(k / n, static_cast<Ext>(r));
        case MomentKind::central: return std::pow(k / n - x, static_cast<Ext>(r));
        case MomentKind::kantorovich_raw:
            return (std::pow(k + 1, static_cast<Ext>(r + 1)) - std::pow(k, static_cast<Ext>(r + 1)))
                   / (static_cast<Ext>(r + 1) * std::pow(n, static_cast<Ext>(r)));
        }
        return 0;
    };

    const Ext mu = x * std::log(a) / (std::pow(a, 1 / n) - 1);
    if (mu == 0)
        return static_cast<Scalar>(summand(0));

    const Ext log_mu = std::log(mu);
    const Ext k_cap = mu + 60 * std::sqrt(mu) + 400;
    Ext sum = 0;
    Ext largest = 0;
    for (Ext k = 0; k <= k_cap; k += 1) {
        const Ext w = std::exp(k * log_mu - mu - std::lgamma(k + 1));
        const Ext s = summand(k);
        const Ext term = w * s;
        sum += term;
        largest = std::max(largest, std::fabs(term));
        // Bounded by w (1 + |s|) so that an isolated zero summand cannot stop the scan.
        if (k > mu + 10 && w * (1 + std::fabs(s)) < static_cast<Ext>(tol) * 1e-6L * largest)
            break;
    }
    return static_cast<Scalar>(sum);
}

/// n^2 * S*_{n,a}((t - x)^4; x) along an increasing list of n; tends to 3x^2.
template <typename Scalar>
std::vector<Scalar> fourth_moment_scaled_limit(const std::vector<int>& n_values, Scalar a, Scalar x)
{
    std::vector<Scalar> out;
    out.reserve(n_values.size());
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        if (i > 0 && n_values[i] <= n_values[i - 1])
            throw DomainError("n list must be strictly increasing");
        const OperatorParams<Scalar> params(n_values[i], a);
        const Scalar n = Scalar(n_values[i]);
        out.push_back(n * n * central_moment(4, params, x));
    }
    return out;
}

} // namespace szasz

#endif // SZASZ_MOMENTS_HPP
