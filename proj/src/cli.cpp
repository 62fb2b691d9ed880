#include "szasz/bench/cli.hpp"

#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "szasz/bench/config.hpp"
#include "szasz/bench/corpus.hpp"
#include "szasz/bench/runs.hpp"

namespace szasz::bench {

namespace {

struct Flags
{
    std::string config;
    std::vector<std::string> functions;
    std::vector<int> n;
    std::vector<double> a;
    std::optional<double> x_lo;
    std::optional<double> x_hi;
    std::optional<int> x_count;
    std::vector<std::string> operators;
    std::optional<double> tol;
    std::optional<std::string> out;
    std::optional<double> x;
    std::optional<std::string> mode;
};

void add_flags(CLI::App& cmd, Flags& f)
{
    cmd.add_option("--config", f.config, "Flat JSON configuration file; flags override its values");
    cmd.add_option("--function", f.functions, "Corpus function id (repeatable, comma separated)")->delimiter(',');
    cmd.add_option("--n", f.n, "Operator index n (repeatable, comma separated)")->delimiter(',');
    cmd.add_option("--a", f.a, "Base a > 1 (repeatable, comma separated)")->delimiter(',');
    cmd.add_option("--x-lo", f.x_lo, "Lower end of the x grid");
    cmd.add_option("--x-hi", f.x_hi, "Upper end of the x grid");
    cmd.add_option("--x-count", f.x_count, "Number of x grid points");
    cmd.add_option("--operators", f.operators, "classical, modified, kantorovich (repeatable, comma separated)")
        ->delimiter(',');
    cmd.add_option("--tol", f.tol, "Series truncation tolerance");
    cmd.add_option("--out", f.out, "Output CSV path, '-' for standard output");
    cmd.add_option("--x", f.x, "Single evaluation point");
    cmd.add_option("--mode", f.mode, "Ordering mode: monotone or sandwich");
}

RunConfig resolve(const Flags& f)
{
    RunConfig cfg = default_config();
    if (!f.config.empty())
        cfg = load_config_file(f.config, cfg);
    if (!f.functions.empty())
        cfg.functions = f.functions;
    if (!f.n.empty())
        cfg.n = f.n;
    if (!f.a.empty())
        cfg.a = f.a;
    if (f.x_lo)
        cfg.x_lo = *f.x_lo;
    if (f.x_hi)
        cfg.x_hi = *f.x_hi;
    if (f.x_count)
        cfg.x_count = *f.x_count;
    if (!f.operators.empty()) {
        cfg.operators.clear();
        for (const auto& name : f.operators)
            cfg.operators.push_back(parse_operator(name));
    }
    if (f.tol)
        cfg.eval.series_tol = *f.tol;
    if (f.out)
        cfg.out = *f.out;
    if (f.x)
        cfg.x = *f.x;
    if (f.mode)
        cfg.mode = *f.mode;
    cfg.validate();
    return cfg;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Benchmarks for a^x-preserving Szasz-Mirakjan type operators"};
    app.require_subcommand(1, 1);
    Flags flags;
    const std::vector<std::pair<std::string, std::string>> commands = {
        {"eval", "Evaluate every selected operator at --x"},
        {"moments", "Closed-form moments against the series oracle"},
        {"converge", "Convergence table over the configured grid"},
        {"compare", "Convergence table comparing two or more operators"},
        {"voronovskaya", "Scaled differences at --x against the asymptotic limit"},
        {"ordering", "Monotone or sandwich ordering checks"},
    };
    for (const auto& [name, help] : commands)
        add_flags(*app.add_subcommand(name, help), flags);
    app.add_flag_callback("--list-functions", [&out] {
        for (const auto& id : corpus_ids())
            out << id << '\n';
        throw CLI::Success();
    }, "Print the corpus ids and exit");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_config_error;
    }
    const std::string command = app.get_subcommands().front()->get_name();

    RunConfig cfg;
    try {
        cfg = resolve(flags);
        if (command == "compare" && cfg.operators.size() < 2)
            throw ConfigError("operators: compare needs at least two operators");
        if (command == "eval") {
            if (!cfg.x)
                throw ConfigError("x: eval needs --x");
            cfg.x_lo = cfg.x_hi = *cfg.x;
            cfg.x_count = 1;
        }
    } catch (const std::exception& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    }

    std::ofstream file;
    const bool to_stdout = cfg.out == "-";
    if (!to_stdout) {
        file.open(cfg.out, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "config error: out: cannot write '" << cfg.out << "'\n";
            return exit_config_error;
        }
    }
    std::ostream& csv = to_stdout ? out : file;
    std::ostream& side = to_stdout ? err : out;

    try {
        if (command == "converge" || command == "compare")
            return run_convergence(cfg, csv, side);
        if (command == "eval") {
            const auto records = compute_convergence(cfg);
            write_convergence(csv, records);
            for (const auto& r : records)
                if (r.failed())
                    return exit_row_failures;
            return exit_ok;
        }
        if (command == "moments")
            return run_moments(cfg, csv);
        if (command == "voronovskaya")
            return run_voronovskaya(cfg, csv);
        return run_ordering(cfg, csv);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config_error;
    }
}

} // namespace szasz::bench
