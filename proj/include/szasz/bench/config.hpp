#ifndef SZASZ_BENCH_CONFIG_HPP
#define SZASZ_BENCH_CONFIG_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "szasz/params.hpp"

namespace szasz::bench {

enum class Operator { classical, modified, kantorovich };

const char* to_string(Operator op);
Operator parse_operator(const std::string& name);

class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig
{
    std::vector<std::string> functions;
    std::vector<int> n;
    std::vector<double> a;
    double x_lo = 0.0;
    double x_hi = 1.0;
    int x_count = 101;
    std::vector<Operator> operators;
    EvalConfig eval;
    /// "-" writes to standard output.
    std::string out = "-";
    /// Single evaluation point for eval and voronovskaya.
    std::optional<double> x;
    /// Ordering mode: "monotone" or "sandwich".
    std::string mode = "sandwich";

    /// Throws ConfigError naming the offending field.
    void validate() const;

    bool uses(Operator op) const;

    Eigen::ArrayXd x_grid() const;
};

/// Benchmark defaults: featured corpus, n = 1..10, 100, 500, a = 1.5,
/// 101 points on [0, 1], all operators.
RunConfig default_config();

/// Overlays a flat JSON object onto `base`. Unknown keys, type mismatches and
/// syntax errors raise ConfigError with the field or line/column.
RunConfig apply_json(const std::string& text, RunConfig base);

RunConfig load_config_file(const std::string& path, RunConfig base);

} // namespace szasz::bench

#endif
