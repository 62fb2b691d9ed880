#ifndef SZASZ_BENCH_CSV_HPP
#define SZASZ_BENCH_CSV_HPP

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace szasz::bench {

/// Shortest decimal form that parses back to the same double.
std::string format_number(double value);
std::string format_number(const std::optional<double>& value);

/// Writes one LF-terminated row. Fields containing separators, quotes or
/// line breaks are quoted.
void write_row(std::ostream& os, const std::vector<std::string>& fields);

struct ConvergenceRecord
{
    std::string function;
    int n = 0;
    double a = 0.0;
    double x = 0.0;
    double f_true = 0.0;
    std::optional<double> classical;
    std::optional<double> modified;
    std::optional<double> kantorovich;
    std::optional<double> err_classical;
    std::optional<double> err_modified;
    std::optional<double> err_kantorovich;
    std::optional<double> bound;
    std::string status = "ok";

    bool failed() const { return status != "ok"; }
};

const std::vector<std::string>& convergence_header();

void write_convergence(std::ostream& os, const std::vector<ConvergenceRecord>& records);

} // namespace szasz::bench

#endif
