#ifndef SZASZ_ANALYSIS_HPP
#define SZASZ_ANALYSIS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <deque>
#include <optional>
#include <string>
#include <vector>

#include "szasz/errors.hpp"
#include "szasz/function.hpp"
#include "szasz/moments.hpp"
#include "szasz/operators.hpp"

namespace szasz {

// ---------------------------------------------------------------------------
// Modulus of continuity and the 2*omega error bound
// ---------------------------------------------------------------------------

/// Grid estimate of omega(f, delta) = sup_{|t-s| <= delta} |f(t) - f(s)| on
/// [lo, hi]. Computed as the largest (max - min) over sliding windows of
/// width delta, which is a lower estimate of the true supremum and
/// non-decreasing in delta.
template <typename Scalar>
Scalar modulus_of_continuity(const ScalarFunction<Scalar>& fn, Scalar delta, Scalar lo, Scalar hi,
                             int grid_points = 2048)
{
    using std::floor;
    if (!(hi > lo) || !(lo >= Scalar(0)))
        throw DomainError("modulus of continuity needs a bracket with hi > lo >= 0");
    if (!(delta > Scalar(0)))
        throw DomainError("delta must be positive");
    if (grid_points < 2)
        throw DomainError("grid_points must be at least 2");

    using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
    const Eigen::Index count = grid_points;
    const Array t = Array::LinSpaced(count, lo, hi);
    const Array values = t.unaryExpr([&](Scalar s) { return fn(s); });
    const Scalar h = (hi - lo) / Scalar(count - 1);
    const Eigen::Index span = std::min<Eigen::Index>(
        count - 1, static_cast<Eigen::Index>(floor(delta / h * (Scalar(1) + Scalar(1e-12)))));
    if (span == 0)
        return Scalar(0);

    // Monotone deques of indices holding the running max and min.
    std::deque<Eigen::Index> maxq;
    std::deque<Eigen::Index> minq;
    Scalar best{0};
    for (Eigen::Index j = 0; j < count; ++j) {
        while (!maxq.empty() && values(maxq.back()) <= values(j))
            maxq.pop_back();
        maxq.push_back(j);
        while (!minq.empty() && values(minq.back()) >= values(j))
            minq.pop_back();
        minq.push_back(j);
        const Eigen::Index start = j - span;
        if (maxq.front() < start)
            maxq.pop_front();
        if (minq.front() < start)
            minq.pop_front();
        best = std::max(best, values(maxq.front()) - values(minq.front()));
    }
    return best;
}

template <typename Scalar = double>
struct ErrorBoundReport
{
    int n{0};
    Scalar a{0};
    Scalar x{0};
    Scalar delta{0};
    Scalar omega{0};
    Scalar bound{0};
    Scalar actual_error{0};
    bool omega_analytic{false};
};

/// |S*f(x) - f(x)| against 2 omega(f, delta_{n,x}), delta_{n,x} = sqrt(mu_2).
///
/// omega is taken over the hull of [x - 4 delta, x + 4 delta] and the
/// operator's Poisson support window; with `lipschitz` set it is L * delta.
template <typename Scalar>
ErrorBoundReport<Scalar> error_bound(const ScalarFunction<Scalar>& fn, const OperatorParams<Scalar>& params,
                                     Scalar x, const EvalConfig& cfg = {},
                                     std::optional<Scalar> lipschitz = std::nullopt)
{
    using std::abs;
    using std::max;
    using std::min;
    using std::sqrt;

    ErrorBoundReport<Scalar> report;
    report.n = params.n();
    report.a = params.a();
    report.x = x;
    report.delta = sqrt(max(Scalar(0), central_moment(2, params, x)));
    report.actual_error = abs(eval_modified(fn, params, x, cfg) - fn(x));

    if (lipschitz) {
        report.omega = *lipschitz * report.delta;
        report.omega_analytic = true;
    } else if (report.delta > Scalar(0)) {
        const auto ws = poisson_weights(modified_intensity(params, x), Scalar(cfg.series_tol));
        const Scalar n = Scalar(params.n());
        const Scalar lo = min(max(Scalar(0), x - Scalar(4) * report.delta), Scalar(ws.k_min) / n);
        const Scalar hi = max(x + Scalar(4) * report.delta, Scalar(ws.k_max) / n);
        report.omega = modulus_of_continuity(fn, report.delta, lo, hi, cfg.grid_points);
    }
    report.bound = Scalar(2) * report.omega;
    return report;
}

// ---------------------------------------------------------------------------
// Voronovskaya asymptotics
// ---------------------------------------------------------------------------

/// lim n (S*f(x) - f(x)) = -x/2 (f'(x) log a - f''(x)).
template <typename Scalar>
Scalar voronovskaya_limit(const ScalarFunction<Scalar>& fn, Scalar a, Scalar x, const EvalConfig& cfg = {})
{
    using std::log;
    require_nonnegative_x(x);
    if (!(a > Scalar(1)))
        throw DomainError("a must exceed 1");
    return -x / Scalar(2) * (first_derivative(fn, x, cfg) * log(a) - second_derivative(fn, x, cfg));
}

template <typename Scalar = double>
struct VoronovskayaPoint
{
    int n{0};
    Scalar scaled_difference{0};
    Scalar predicted{0};
    Scalar residual{0};
};

template <typename Scalar>
std::vector<VoronovskayaPoint<Scalar>> voronovskaya_residuals(const ScalarFunction<Scalar>& fn, Scalar a, Scalar x,
                                                              const std::vector<int>& n_values,
                                                              const EvalConfig& cfg = {})
{
    const Scalar predicted = voronovskaya_limit(fn, a, x, cfg);
    const Scalar fx = fn(x);
    std::vector<VoronovskayaPoint<Scalar>> out;
    out.reserve(n_values.size());
    for (int n : n_values) {
        const OperatorParams<Scalar> params(n, a);
        const Scalar scaled = Scalar(n) * (eval_modified(fn, params, x, cfg) - fx);
        out.push_back({n, scaled, predicted, scaled - predicted});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Generalized convexity
// ---------------------------------------------------------------------------

enum class Convexity { convex, strictly_convex, not_convex, inconclusive };

inline const char* to_string(Convexity c)
{
    switch (c) {
    case Convexity::convex: return "convex";
    case Convexity::strictly_convex: return "strictly_convex";
    case Convexity::not_convex: return "not_convex";
    case Convexity::inconclusive: return "inconclusive";
    }
    return "?";
}

template <typename Scalar = double>
struct ConvexityVerdict
{
    std::string function_id;
    Scalar a{0};
    Convexity verdict{Convexity::inconclusive};
    std::optional<std::array<Scalar, 3>> witness;
    /// Most negative det / det_tol seen over the sampled triples.
    Scalar worst_ratio{0};
    /// min over the grid of f'' - log(a) f', when derivatives were available.
    std::optional<Scalar> min_derivative_margin;
};

namespace detail {

struct DeterminantScan
{
    bool nonnegative{true};
    bool positive{true};
    std::optional<std::array<Eigen::Index, 3>> witness;
    double worst_ratio{0};
};

inline std::vector<std::array<Eigen::Index, 3>> sample_triples(Eigen::Index count)
{
    std::vector<std::array<Eigen::Index, 3>> out;
    for (Eigen::Index stride = 1; 2 * stride < count; stride *= 2)
        for (Eigen::Index i = 0; i + 2 * stride < count; ++i)
            out.push_back({i, i + stride, i + 2 * stride});
    for (Eigen::Index i = 1; i + 1 < count; ++i)
        out.push_back({0, i, count - 1});
    return out;
}

// det [[1,1,1],[sigma_i,sigma_j,sigma_k],[f_i,f_j,f_k]] over sampled triples;
// a triple counts as negative below -rel_tol * (largest absolute entry).
template <typename Scalar>
DeterminantScan scan_determinants(const Eigen::Array<Scalar, Eigen::Dynamic, 1>& sigma,
                                  const Eigen::Array<Scalar, Eigen::Dynamic, 1>& f, Scalar rel_tol)
{
    DeterminantScan scan;
    for (const auto& [i, j, k] : sample_triples(sigma.size())) {
        Eigen::Matrix<Scalar, 3, 3> m;
        m << Scalar(1), Scalar(1), Scalar(1), sigma(i), sigma(j), sigma(k), f(i), f(j), f(k);
        const Scalar det = m.determinant();
        const Scalar tol = rel_tol * m.cwiseAbs().maxCoeff();
        if (det < tol)
            scan.positive = false;
        if (det < -tol) {
            scan.nonnegative = false;
            const double ratio = static_cast<double>(det / tol);
            if (ratio < scan.worst_ratio) {
                scan.worst_ratio = ratio;
                scan.witness = std::array<Eigen::Index, 3>{i, j, k};
            }
        }
    }
    return scan;
}

template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> checked_grid(const Eigen::Array<Scalar, Eigen::Dynamic, 1>& grid)
{
    if (grid.size() < 3)
        throw DomainError("convexity grid needs at least 3 points");
    if (!(grid(0) >= Scalar(0)))
        throw DomainError("convexity grid must lie in [0, inf)");
    for (Eigen::Index i = 1; i < grid.size(); ++i)
        if (!(grid(i) > grid(i - 1)))
            throw DomainError("convexity grid must be strictly increasing");
    return grid;
}

template <typename Scalar>
bool derivatives_available(const ScalarFunction<Scalar>& fn, const EvalConfig& cfg)
{
    return (fn.has_d1() && fn.has_d2()) || cfg.allow_finite_differences;
}

} // namespace detail

/// (1, a^x)-convexity: every sampled determinant
///   | 1      1      1     |
///   | a^x1   a^x2   a^x3  |  >= 0,   x1 < x2 < x3,
///   | f(x1)  f(x2)  f(x3) |
/// cross-checked, when derivatives exist, against f'' >= log(a) f' on the
/// grid. Disagreement between the two tests yields `inconclusive`.
template <typename Scalar>
ConvexityVerdict<Scalar> convexity_wrt_base(const ScalarFunction<Scalar>& fn, Scalar a,
                                            const Eigen::Array<Scalar, Eigen::Dynamic, 1>& grid,
                                            const EvalConfig& cfg = {}, Scalar det_rel_tol = Scalar(1e-10))
{
    using std::abs;
    using std::log;
    using std::pow;
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
    if (!(a > Scalar(1)))
        throw DomainError("a must exceed 1");
    const Array xs = detail::checked_grid(grid);
    const Array sigma = xs.unaryExpr([&](Scalar t) { return pow(a, t); });
    const Array values = xs.unaryExpr([&](Scalar t) { return fn(t); });
    const auto scan = detail::scan_determinants(sigma, values, det_rel_tol);

    ConvexityVerdict<Scalar> out;
    out.function_id = fn.id;
    out.a = a;
    out.worst_ratio = Scalar(scan.worst_ratio);
    if (scan.witness) {
        const auto& [i, j, k] = *scan.witness;
        out.witness = std::array<Scalar, 3>{xs(i), xs(j), xs(k)};
    }
    out.verdict = scan.positive ? Convexity::strictly_convex
                  : scan.nonnegative ? Convexity::convex
                                     : Convexity::not_convex;

    if (detail::derivatives_available(fn, cfg)) {
        const Scalar log_a = log(a);
        Scalar margin = std::numeric_limits<Scalar>::infinity();
        bool r2_holds = true;
        for (Eigen::Index i = 0; i < xs.size(); ++i) {
            const Scalar d1 = first_derivative(fn, xs(i), cfg);
            const Scalar d2 = second_derivative(fn, xs(i), cfg);
            const Scalar m = d2 - log_a * d1;
            margin = std::min(margin, m);
            if (m < -(Scalar(1e-6) * (abs(d2) + abs(log_a * d1)) + Scalar(1e-12)))
                r2_holds = false;
        }
        out.min_derivative_margin = margin;
        const bool det_convex = out.verdict != Convexity::not_convex;
        if (det_convex != r2_holds)
            out.verdict = Convexity::inconclusive;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Orderings against the classical operator
// ---------------------------------------------------------------------------

namespace detail {

template <typename Scalar>
Scalar comparison_tol(const EvalConfig& cfg, std::initializer_list<Scalar> values)
{
    using std::abs;
    Scalar scale{1};
    for (Scalar v : values)
        scale = std::max(scale, abs(v));
    return Scalar(16) * Scalar(cfg.series_tol) * scale;
}

template <typename Scalar>
Eigen::Array<Scalar, Eigen::Dynamic, 1> screen_grid(const std::vector<Scalar>& xs)
{
    if (xs.empty())
        throw DomainError("x grid must not be empty");
    Scalar top{0};
    for (Scalar x : xs) {
        require_nonnegative_x(x);
        top = std::max(top, x);
    }
    return Eigen::Array<Scalar, Eigen::Dynamic, 1>::LinSpaced(64, Scalar(0), top + Scalar(1));
}

// f' <= 0 (sign = -1) or f' >= 0 (sign = +1) on the grid, up to rounding.
template <typename Scalar>
bool monotone_on(const ScalarFunction<Scalar>& fn, const Eigen::Array<Scalar, Eigen::Dynamic, 1>& grid, int sign,
                 const EvalConfig& cfg)
{
    using std::abs;
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const Scalar d = first_derivative(fn, grid(i), cfg);
        if (Scalar(sign) * d < -(Scalar(1e-8) * (Scalar(1) + abs(fn(grid(i))))))
            return false;
    }
    return true;
}

// Smallest n in [first, last] from which every link of the chain holds.
inline std::optional<int> settled_from(const std::vector<bool>& holds, int first)
{
    std::optional<int> n;
    for (int i = static_cast<int>(holds.size()) - 1; i >= 0 && holds[static_cast<std::size_t>(i)]; --i)
        n = first + i;
    return n;
}

} // namespace detail

template <typename Scalar = double>
struct MonotoneRow
{
    Scalar x{0};
    std::optional<int> empirical_n;
    int violations{0};
    std::optional<int> classical_empirical_n;
    int classical_violations{0};
};

template <typename Scalar = double>
struct MonotoneReport
{
    std::vector<MonotoneRow<Scalar>> rows;

    int violations() const
    {
        int total = 0;
        for (const auto& r : rows)
            total += r.violations;
        return total;
    }
    int classical_violations() const
    {
        int total = 0;
        for (const auto& r : rows)
            total += r.classical_violations;
        return total;
    }
};

/// For decreasing convex f checks S*_n f >= S*_{n+1} f >= f and the
/// classical chain S_n f >= S_{n+1} f >= f at each x, for consecutive
/// n in [n_lo, n_hi]. Reports the empirical threshold N rather than assuming
/// one.
template <typename Scalar>
MonotoneReport<Scalar> check_monotone_ordering(const ScalarFunction<Scalar>& fn, Scalar a,
                                               const std::vector<Scalar>& x_grid, int n_lo, int n_hi,
                                               const EvalConfig& cfg = {})
{
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
    if (n_lo < 1 || n_hi <= n_lo)
        throw DomainError("monotone ordering needs 1 <= n_lo < n_hi");
    if (!(a > Scalar(1)))
        throw DomainError("a must exceed 1");

    const Array screen = detail::screen_grid(x_grid);
    if (!detail::monotone_on(fn, screen, -1, cfg))
        throw PreconditionError("'" + fn.id + "' is not decreasing on the screen grid");
    const Array values = screen.unaryExpr([&](Scalar t) { return fn(t); });
    if (!detail::scan_determinants<Scalar>(screen, values, Scalar(1e-10)).nonnegative)
        throw PreconditionError("'" + fn.id + "' is not convex on the screen grid");

    MonotoneReport<Scalar> report;
    for (Scalar x : x_grid) {
        const Scalar fx = fn(x);
        std::vector<Scalar> modified;
        std::vector<Scalar> classical;
        for (int n = n_lo; n <= n_hi; ++n) {
            const OperatorParams<Scalar> params(n, a);
            modified.push_back(eval_modified(fn, params, x, cfg));
            classical.push_back(eval_classical(fn, params, x, cfg));
        }
        std::vector<bool> mod_ok;
        std::vector<bool> cls_ok;
        MonotoneRow<Scalar> row;
        row.x = x;
        for (std::size_t i = 0; i + 1 < modified.size(); ++i) {
            const Scalar tm = detail::comparison_tol(cfg, {fx, modified[i], modified[i + 1]});
            const bool m = modified[i] >= modified[i + 1] - tm && modified[i + 1] >= fx - tm;
            const Scalar tc = detail::comparison_tol(cfg, {fx, classical[i], classical[i + 1]});
            const bool c = classical[i] >= classical[i + 1] - tc && classical[i + 1] >= fx - tc;
            mod_ok.push_back(m);
            cls_ok.push_back(c);
            row.violations += m ? 0 : 1;
            row.classical_violations += c ? 0 : 1;
        }
        row.empirical_n = detail::settled_from(mod_ok, n_lo);
        row.classical_empirical_n = detail::settled_from(cls_ok, n_lo);
        report.rows.push_back(row);
    }
    return report;
}

template <typename Scalar = double>
struct SandwichRow
{
    int n{0};
    Scalar x{0};
    Scalar f{0};
    Scalar modified{0};
    Scalar classical{0};
    bool holds{true};
};

template <typename Scalar = double>
struct SandwichReport
{
    ConvexityVerdict<Scalar> screen;
    std::vector<SandwichRow<Scalar>> rows;

    int violations() const
    {
        int total = 0;
        for (const auto& r : rows)
            total += r.holds ? 0 : 1;
        return total;
    }
};

/// For increasing (1, a^x)-convex f checks f(x) <= S*_{n,a} f(x) <= S_n f(x)
/// on every (n, x) pair.
template <typename Scalar>
SandwichReport<Scalar> check_sandwich_ordering(const ScalarFunction<Scalar>& fn, Scalar a,
                                               const std::vector<Scalar>& x_grid, const std::vector<int>& n_values,
                                               const EvalConfig& cfg = {})
{
    using Array = Eigen::Array<Scalar, Eigen::Dynamic, 1>;
    if (n_values.empty())
        throw DomainError("n list must not be empty");
    const Array screen = detail::screen_grid(x_grid);

    SandwichReport<Scalar> report;
    report.screen = convexity_wrt_base(fn, a, screen, cfg);
    if (report.screen.verdict != Convexity::convex && report.screen.verdict != Convexity::strictly_convex)
        throw PreconditionError("'" + fn.id + "' is not (1, a^x)-convex: "
                                + std::string(to_string(report.screen.verdict)));
    if (!detail::monotone_on(fn, screen, +1, cfg))
        throw PreconditionError("'" + fn.id + "' is not increasing on the screen grid");

    for (int n : n_values) {
        const OperatorParams<Scalar> params(n, a);
        for (Scalar x : x_grid) {
            SandwichRow<Scalar> row;
            row.n = n;
            row.x = x;
            row.f = fn(x);
            row.modified = eval_modified(fn, params, x, cfg);
            row.classical = eval_classical(fn, params, x, cfg);
            const Scalar tol = detail::comparison_tol(cfg, {row.f, row.modified, row.classical});
            row.holds = row.f <= row.modified + tol && row.modified <= row.classical + tol;
            report.rows.push_back(row);
        }
    }
    return report;
}

} // namespace szasz

#endif // SZASZ_ANALYSIS_HPP
