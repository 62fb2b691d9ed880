#ifndef SZASZ_BENCH_RUNS_HPP
#define SZASZ_BENCH_RUNS_HPP

#include <ostream>
#include <string>
#include <vector>

#include "szasz/bench/config.hpp"
#include "szasz/bench/csv.hpp"

namespace szasz::bench {

enum ExitCode { exit_ok = 0, exit_row_failures = 1, exit_config_error = 2 };

/// One record per (function, a, n, x), in that nesting order.
std::vector<ConvergenceRecord> compute_convergence(const RunConfig& cfg);

struct SummaryRow
{
    std::string function;
    Operator op;
    int n;
    double a;
    double max_error;
};

/// Max error per (function, operator, n, a) over the x grid, in record order.
std::vector<SummaryRow> summarize(const std::vector<ConvergenceRecord>& records, const RunConfig& cfg);

void write_summary(std::ostream& os, const std::vector<SummaryRow>& rows);

int run_convergence(const RunConfig& cfg, std::ostream& csv, std::ostream& summary);

/// n (S*f - f) at cfg.x against the limit, per (function, a, n).
int run_voronovskaya(const RunConfig& cfg, std::ostream& csv);

/// Monotone mode scans n from min to max of cfg.n; sandwich mode uses cfg.n as given.
int run_ordering(const RunConfig& cfg, std::ostream& csv);

/// Closed-form moments against the series oracle over (a, n, x).
int run_moments(const RunConfig& cfg, std::ostream& csv);

} // namespace szasz::bench

#endif
