#ifndef SZASZ_QUADRATURE_HPP
#define SZASZ_QUADRATURE_HPP

#include <Eigen/Dense>

#include <cmath>
#include <limits>

#include "szasz/errors.hpp"

namespace szasz {

/// Gauss-Legendre rule mapped to the reference cell [0, 1]; weights sum to 1.
template <typename Scalar = double>
struct QuadratureRule
{
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

    int order{0};
    Array nodes;
    Array weights;

    /// Mean of f over [lo, hi] (the integral divided by hi - lo).
    template <typename F>
    Scalar cell_average(F&& f, Scalar lo, Scalar hi) const
    {
        const Scalar width = hi - lo;
        Scalar acc{0};
        for (Eigen::Index i = 0; i < nodes.size(); ++i)
            acc += weights(i) * f(lo + width * nodes(i));
        return acc;
    }

    template <typename F>
    Scalar integrate(F&& f, Scalar lo, Scalar hi) const
    {
        return (hi - lo) * cell_average(f, lo, hi);
    }
};

namespace detail {

// P_m(z) and P_m'(z) by the three-term recurrence.
template <typename Scalar>
void legendre(int m, Scalar z, Scalar& p, Scalar& dp)
{
    Scalar p0{1};
    Scalar p1 = z;
    for (int j = 2; j <= m; ++j) {
        const Scalar p2 = (Scalar(2 * j - 1) * z * p1 - Scalar(j - 1) * p0) / Scalar(j);
        p0 = p1;
        p1 = p2;
    }
    p = m == 0 ? Scalar(1) : p1;
    dp = Scalar(m) * (z * p1 - p0) / (z * z - Scalar(1));
}

} // namespace detail

/// Nodes from the eigenvalues of the symmetric Jacobi matrix, then polished
/// by Newton steps on P_order; weights from 2 / ((1 - z^2) P'(z)^2).
template <typename Scalar>
QuadratureRule<Scalar> gauss_legendre(int order)
{
    using std::abs;
    using std::sqrt;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

    if (order < 2)
        throw DomainError("quadrature order must be at least 2");

    Matrix jacobi = Matrix::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const Scalar kk = Scalar(k);
        const Scalar beta = kk / sqrt(Scalar(4) * kk * kk - Scalar(1));
        jacobi(k, k - 1) = beta;
        jacobi(k - 1, k) = beta;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> eig(jacobi, Eigen::EigenvaluesOnly);

    QuadratureRule<Scalar> rule;
    rule.order = order;
    rule.nodes.resize(order);
    rule.weights.resize(order);
    for (int i = 0; i < order; ++i) {
        Scalar z = eig.eigenvalues()(i);
        Scalar p{};
        Scalar dp{};
        for (int it = 0; it < 8; ++it) {
            detail::legendre(order, z, p, dp);
            const Scalar step = p / dp;
            z -= step;
            if (abs(step) <= Scalar(2) * std::numeric_limits<Scalar>::epsilon())
                break;
        }
        detail::legendre(order, z, p, dp);
        rule.nodes(i) = (z + Scalar(1)) / Scalar(2);
        rule.weights(i) = Scalar(1) / ((Scalar(1) - z * z) * dp * dp);
    }
    return rule;
}

} // namespace szasz

#endif // SZASZ_QUADRATURE_HPP
