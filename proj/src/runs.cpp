#include "szasz/bench/runs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "szasz/bench/corpus.hpp"
#include "szasz/szasz.hpp"

namespace szasz::bench {

namespace {

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v)
{
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<std::string> unique_in_order(const std::vector<std::string>& ids)
{
    std::vector<std::string> out;
    for (const auto& id : ids)
        if (std::find(out.begin(), out.end(), id) == out.end())
            out.push_back(id);
    return out;
}

std::vector<double> grid_vector(const RunConfig& cfg)
{
    const Eigen::ArrayXd g = cfg.x_grid();
    return std::vector<double>(g.data(), g.data() + g.size());
}

void note_error(std::string& status, const std::string& what)
{
    status = status == "ok" ? "error: " + what : status + "; " + what;
}

std::optional<double> evaluate(Operator op, const ScalarFunction<double>& fn, const OperatorParams<double>& p,
                               double x, const EvalConfig& eval, std::string& status)
{
    try {
        switch (op) {
        case Operator::classical: return eval_classical(fn, p, x, eval);
        case Operator::modified: return eval_modified(fn, p, x, eval);
        case Operator::kantorovich: return eval_kantorovich(fn, p, x, eval);
        }
    } catch (const std::exception& e) {
        note_error(status, std::string(to_string(op)) + ": " + e.what());
    }
    return std::nullopt;
}

std::optional<double> error_of(const std::optional<double>& value, double f_true)
{
    if (!value)
        return std::nullopt;
    return std::abs(*value - f_true);
}

} // namespace

std::vector<ConvergenceRecord> compute_convergence(const RunConfig& cfg)
{
    cfg.validate();
    const auto xs = grid_vector(cfg);
    std::vector<ConvergenceRecord> records;
    for (const auto& id : unique_in_order(cfg.functions)) {
        for (double a : sorted_unique(cfg.a)) {
            const CorpusEntry entry = corpus_entry(id, a);
            const auto& fn = entry.definition;
            for (int n : sorted_unique(cfg.n)) {
                const OperatorParams<double> p(n, a);
                for (double x : xs) {
                    ConvergenceRecord r;
                    r.function = id;
                    r.n = n;
                    r.a = a;
                    r.x = x;
                    r.f_true = fn(x);
                    if (cfg.uses(Operator::classical))
                        r.classical = evaluate(Operator::classical, fn, p, x, cfg.eval, r.status);
                    if (cfg.uses(Operator::modified))
                        r.modified = evaluate(Operator::modified, fn, p, x, cfg.eval, r.status);
                    if (cfg.uses(Operator::kantorovich))
                        r.kantorovich = evaluate(Operator::kantorovich, fn, p, x, cfg.eval, r.status);
                    r.err_classical = error_of(r.classical, r.f_true);
                    r.err_modified = error_of(r.modified, r.f_true);
                    r.err_kantorovich = error_of(r.kantorovich, r.f_true);
                    // The bound concerns the modified operator; skipped when it failed.
                    if (!cfg.uses(Operator::modified) || r.modified) {
                        try {
                            r.bound = error_bound(fn, p, x, cfg.eval, entry.lipschitz).bound;
                        } catch (const std::exception&) {
                            r.bound.reset();
                        }
                    }
                    records.push_back(std::move(r));
                }
            }
        }
    }
    return records;
}

std::vector<SummaryRow> summarize(const std::vector<ConvergenceRecord>& records, const RunConfig& cfg)
{
    std::vector<SummaryRow> rows;
    std::size_t i = 0;
    while (i < records.size()) {
        std::size_t j = i;
        while (j < records.size() && records[j].function == records[i].function && records[j].a == records[i].a
               && records[j].n == records[i].n)
            ++j;
        for (Operator op : {Operator::classical, Operator::modified, Operator::kantorovich}) {
            if (!cfg.uses(op))
                continue;
            double worst = std::numeric_limits<double>::quiet_NaN();
            for (std::size_t k = i; k < j; ++k) {
                const auto& r = records[k];
                const auto& err = op == Operator::classical  ? r.err_classical
                                  : op == Operator::modified ? r.err_modified
                                                             : r.err_kantorovich;
                if (err)
                    worst = std::isnan(worst) ? *err : std::max(worst, *err);
            }
            rows.push_back({records[i].function, op, records[i].n, records[i].a, worst});
        }
        i = j;
    }
    return rows;
}

void write_summary(std::ostream& os, const std::vector<SummaryRow>& rows)
{
    write_row(os, {"function", "operator", "n", "a", "max_error"});
    for (const auto& r : rows)
        write_row(os, {r.function, to_string(r.op), std::to_string(r.n), format_number(r.a),
                       format_number(r.max_error)});
}

int run_convergence(const RunConfig& cfg, std::ostream& csv, std::ostream& summary)
{
    const auto records = compute_convergence(cfg);
    write_convergence(csv, records);
    write_summary(summary, summarize(records, cfg));
    const bool failed = std::any_of(records.begin(), records.end(), [](const auto& r) { return r.failed(); });
    return failed ? exit_row_failures : exit_ok;
}

int run_voronovskaya(const RunConfig& cfg, std::ostream& csv)
{
    cfg.validate();
    if (!cfg.x)
        throw ConfigError("x: an evaluation point is required");
    const double x = *cfg.x;
    const auto ns = sorted_unique(cfg.n);
    int code = exit_ok;
    write_row(csv, {"function", "a", "x", "n", "scaled_difference", "predicted", "residual", "status"});
    for (const auto& id : unique_in_order(cfg.functions)) {
        for (double a : sorted_unique(cfg.a)) {
            const auto entry = corpus_entry(id, a);
            try {
                for (const auto& pt : voronovskaya_residuals(entry.definition, a, x, ns, cfg.eval))
                    write_row(csv, {id, format_number(a), format_number(x), std::to_string(pt.n),
                                    format_number(pt.scaled_difference), format_number(pt.predicted),
                                    format_number(pt.residual), "ok"});
            } catch (const std::exception& e) {
                code = exit_row_failures;
                for (int n : ns)
                    write_row(csv, {id, format_number(a), format_number(x), std::to_string(n), "", "", "",
                                    std::string("error: ") + e.what()});
            }
        }
    }
    return code;
}

namespace {

std::string optional_int(const std::optional<int>& v)
{
    return v ? std::to_string(*v) : std::string();
}

int ordering_monotone(const RunConfig& cfg, std::ostream& csv)
{
    const auto ns = sorted_unique(cfg.n);
    if (ns.size() < 2)
        throw ConfigError("n: monotone mode needs at least two values (the scan runs from min to max)");
    const auto xs = grid_vector(cfg);
    int code = exit_ok;
    write_row(csv, {"function", "a", "x", "n_lo", "n_hi", "empirical_n", "violations", "classical_empirical_n",
                    "classical_violations", "status"});
    const std::string lo = std::to_string(ns.front());
    const std::string hi = std::to_string(ns.back());
    for (const auto& id : unique_in_order(cfg.functions)) {
        for (double a : sorted_unique(cfg.a)) {
            const auto entry = corpus_entry(id, a);
            try {
                const auto report =
                    check_monotone_ordering(entry.definition, a, xs, ns.front(), ns.back(), cfg.eval);
                for (const auto& row : report.rows) {
                    const bool clean = row.violations == 0 && row.classical_violations == 0;
                    if (!clean)
                        code = exit_row_failures;
                    write_row(csv, {id, format_number(a), format_number(row.x), lo, hi, optional_int(row.empirical_n),
                                    std::to_string(row.violations), optional_int(row.classical_empirical_n),
                                    std::to_string(row.classical_violations), clean ? "ok" : "violation"});
                }
            } catch (const PreconditionError& e) {
                write_row(csv, {id, format_number(a), "", lo, hi, "", "", "", "",
                                std::string("screen_failed: ") + e.what()});
            } catch (const std::exception& e) {
                code = exit_row_failures;
                write_row(csv, {id, format_number(a), "", lo, hi, "", "", "", "", std::string("error: ") + e.what()});
            }
        }
    }
    return code;
}

int ordering_sandwich(const RunConfig& cfg, std::ostream& csv)
{
    const auto ns = sorted_unique(cfg.n);
    const auto xs = grid_vector(cfg);
    int code = exit_ok;
    write_row(csv, {"function", "a", "n", "x", "f", "modified", "classical", "verdict", "status"});
    for (const auto& id : unique_in_order(cfg.functions)) {
        for (double a : sorted_unique(cfg.a)) {
            const auto entry = corpus_entry(id, a);
            try {
                const auto report = check_sandwich_ordering(entry.definition, a, xs, ns, cfg.eval);
                const std::string verdict = to_string(report.screen.verdict);
                for (const auto& row : report.rows) {
                    if (!row.holds)
                        code = exit_row_failures;
                    write_row(csv, {id, format_number(a), std::to_string(row.n), format_number(row.x),
                                    format_number(row.f), format_number(row.modified), format_number(row.classical),
                                    verdict, row.holds ? "ok" : "violation"});
                }
            } catch (const PreconditionError& e) {
                write_row(csv, {id, format_number(a), "", "", "", "", "", "", std::string("screen_failed: ") + e.what()});
            } catch (const std::exception& e) {
                code = exit_row_failures;
                write_row(csv, {id, format_number(a), "", "", "", "", "", "", std::string("error: ") + e.what()});
            }
        }
    }
    return code;
}

} // namespace

int run_ordering(const RunConfig& cfg, std::ostream& csv)
{
    cfg.validate();
    return cfg.mode == "monotone" ? ordering_monotone(cfg, csv) : ordering_sandwich(cfg, csv);
}

int run_moments(const RunConfig& cfg, std::ostream& csv)
{
    cfg.validate();
    struct Family { MomentKind kind; int lo; int hi; };
    const Family families[] = {{MomentKind::raw, 0, 4}, {MomentKind::central, 1, 4}, {MomentKind::kantorovich_raw, 0, 2}};
    const auto xs = grid_vector(cfg);
    int code = exit_ok;
    write_row(csv, {"kind", "order", "n", "a", "x", "closed_form", "oracle", "abs_diff", "status"});
    for (const auto& fam : families)
        for (int order = fam.lo; order <= fam.hi; ++order)
            for (double a : sorted_unique(cfg.a))
                for (int n : sorted_unique(cfg.n))
                    for (double x : xs) {
                        const MomentRequest<double> req{fam.kind, order, OperatorParams<double>(n, a), x};
                        std::vector<std::string> row = {to_string(fam.kind), std::to_string(order), std::to_string(n),
                                                        format_number(a), format_number(x)};
                        try {
                            const double closed = closed_form_moment(req);
                            const double oracle = moment_oracle(req, cfg.eval.series_tol);
                            const double diff = std::abs(closed - oracle);
                            const bool agree = diff <= 1e-9 * (1 + std::abs(closed));
                            if (!agree)
                                code = exit_row_failures;
                            row.insert(row.end(), {format_number(closed), format_number(oracle), format_number(diff),
                                                   agree ? "ok" : "mismatch"});
                        } catch (const std::exception& e) {
                            code = exit_row_failures;
                            row.insert(row.end(), {"", "", "", std::string("error: ") + e.what()});
                        }
                        write_row(csv, row);
                    }
    return code;
}

} // namespace szasz::bench
