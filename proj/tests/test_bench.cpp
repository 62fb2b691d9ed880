#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "szasz/bench/cli.hpp"
#include "szasz/bench/config.hpp"
#include "szasz/bench/corpus.hpp"
#include "szasz/bench/csv.hpp"
#include "szasz/bench/runs.hpp"
#include "szasz/szasz.hpp"

using namespace szasz;
using namespace szasz::bench;

namespace {

struct CliResult
{
    int code;
    std::string out;
    std::string err;
};

CliResult cli(std::vector<std::string> args)
{
    args.insert(args.begin(), "szasz-bench");
    std::vector<const char*> argv;
    for (const auto& s : args)
        argv.push_back(s.c_str());
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string& text)
{
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);)
        lines.push_back(line);
    return lines;
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.emplace_back();
    return cells;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content = "")
{
    const auto path = std::filesystem::temp_directory_path() / ("szasz_bench_test_" + name);
    std::ofstream(path, std::ios::binary) << content;
    return path;
}

RunConfig small_config()
{
    RunConfig cfg = default_config();
    cfg.n = {1, 4};
    cfg.a = {2.0};
    cfg.x_count = 5;
    return cfg;
}

} // namespace

TEST_CASE("corpus entries")
{
    const auto& ids = corpus_ids();
    CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
    CHECK(featured_ids() == std::vector<std::string>{"poly3", "x2exp4x", "x2cos4x"});
    CHECK_THROWS_AS(corpus_entry("nope", 2.0), std::invalid_argument);

    const auto poly3 = corpus_entry("poly3", 1.5).definition;
    CHECK(poly3(1.0) == doctest::Approx(0.5));
    CHECK(poly3(1.0 / 3) == doctest::Approx(0.0).scale(1.0));
    CHECK(corpus_entry("x2exp4x", 1.5).definition(0.5) == doctest::Approx(0.25 * std::exp(2.0)));
    CHECK(corpus_entry("x2cos4x", 1.5).definition(0.5) == doctest::Approx(0.25 * std::cos(2.0)));
    CHECK(corpus_entry("pow_a", 3.0).definition(2.0) == doctest::Approx(9.0));
    CHECK(corpus_entry("neg_pow_2a", 3.0).definition(1.0) == doctest::Approx(-9.0));
}

TEST_CASE("corpus derivatives match finite differences")
{
    EvalConfig fd;
    for (const auto& id : corpus_ids()) {
        const auto fn = corpus_entry(id, 2.0).definition;
        REQUIRE(fn.has_d1());
        REQUIRE(fn.has_d2());
        auto bare = fn;
        bare.d1 = nullptr;
        bare.d2 = nullptr;
        for (double x : {0.0, 0.3, 1.0, 1.7}) {
            const double scale = 1 + std::abs(fn.d1(x)) + std::abs(fn.d2(x)) + std::abs(fn(x));
            CHECK_MESSAGE(std::abs(first_derivative(bare, x, fd) - fn.d1(x)) <= 1e-6 * scale, id);
            CHECK_MESSAGE(std::abs(second_derivative(bare, x, fd) - fn.d2(x)) <= 1e-4 * scale, id);
        }
        if (fn.has_scaled())
            for (double x : {0.0, 0.5, 2.0})
                CHECK(fn.scaled(x) * std::exp(fn.growth.exp_rate * x) == doctest::Approx(fn(x)).epsilon(1e-14));
    }
}

TEST_CASE("composition identity for every corpus function")
{
    for (const auto& id : corpus_ids())
        for (int n : {1, 3, 10, 100})
            for (double a : {1.5, 2.0, 10.0, 1500.0}) {
                const auto fn = corpus_entry(id, a).definition;
                const OperatorParams<double> p(n, a);
                for (double x : {0.0, 0.25, 1.0, 2.5, 5.0}) {
                    const auto rhs = [&] { return eval_classical(fn, p, transform_point(p, x)); };
                    double lhs = 0.0;
                    try {
                        lhs = eval_modified(fn, p, x);
                    } catch (const OverflowError&) {
                        // Only legitimate when the exact image exceeds the double range.
                        const double k = fn.growth.exp_rate / std::log(a);
                        CHECK_MESSAGE(std::isinf(exponential_image(k * std::log(a), p, x)), id);
                        CHECK_THROWS_AS(rhs(), OverflowError);
                        continue;
                    }
                    CHECK_MESSAGE(std::abs(lhs - rhs()) <= 1e-9 * (1 + std::abs(lhs)), id);
                }
            }
}

TEST_CASE("convergence toward bounded corpus functions")
{
    for (const std::string id : {"exp_neg", "const"}) {
        const auto fn = corpus_entry(id, 2.0).definition;
        for (double x : {0.0, 0.5, 1.0, 2.5, 5.0}) {
            double prev = INFINITY;
            for (int n : {10, 20, 40, 80, 160, 320}) {
                const double err = std::abs(eval_modified(fn, OperatorParams<double>(n, 2.0), x) - fn(x));
                CHECK(err <= prev + 1e-12);
                prev = err;
            }
            const double predicted = std::abs(voronovskaya_limit(fn, 2.0, x));
            CHECK(prev <= 10 * predicted / 320 + 1e-11);
        }
    }
}

TEST_CASE("config defaults and validation")
{
    const RunConfig cfg = default_config();
    CHECK(cfg.functions == std::vector<std::string>{"poly3", "x2exp4x", "x2cos4x"});
    CHECK(cfg.n == std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 100, 500});
    CHECK(cfg.a == std::vector<double>{1.5});
    CHECK(cfg.x_lo == 0.0);
    CHECK(cfg.x_hi == 1.0);
    CHECK(cfg.x_count == 101);
    CHECK(cfg.operators.size() == 3);
    CHECK_NOTHROW(cfg.validate());
    const auto grid = cfg.x_grid();
    CHECK(grid.size() == 101);
    CHECK(grid(0) == 0.0);
    CHECK(grid(100) == 1.0);

    auto bad = cfg;
    bad.a = {0.9};
    try {
        bad.validate();
        FAIL("expected a validation error");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("a must exceed 1") != std::string::npos);
    }
    bad = cfg;
    bad.n = {0};
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("n:"), ConfigError);
    bad = cfg;
    bad.x_lo = -1;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("x_lo"), ConfigError);
    bad = cfg;
    bad.functions = {"poly4"};
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("poly4"), ConfigError);
    bad = cfg;
    bad.operators.clear();
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("operators"), ConfigError);
    bad = cfg;
    bad.eval.series_tol = 0.5;
    CHECK_THROWS_WITH_AS(bad.validate(), doctest::Contains("tol"), ConfigError);
}

TEST_CASE("json configuration")
{
    const auto cfg = apply_json(R"({"function": ["x2exp4x"], "a": [15, 150, 1500], "n": [5, 30, 300],
                                    "x_hi": 2, "operators": "modified", "tol": 1e-13})",
                                default_config());
    CHECK(cfg.functions == std::vector<std::string>{"x2exp4x"});
    CHECK(cfg.a == std::vector<double>{15, 150, 1500});
    CHECK(cfg.n == std::vector<int>{5, 30, 300});
    CHECK(cfg.x_hi == 2.0);
    CHECK(cfg.operators == std::vector<Operator>{Operator::modified});
    CHECK(cfg.eval.series_tol == 1e-13);

    CHECK_THROWS_WITH_AS(apply_json("{\n  \"n\": [1,\n  2,,]\n}", default_config()), doctest::Contains("line 3"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(apply_json(R"({"colour": 1})", default_config()), doctest::Contains("colour"), ConfigError);
    CHECK_THROWS_WITH_AS(apply_json(R"({"n": [1, 2.5]})", default_config()), doctest::Contains("n[1]"), ConfigError);
    CHECK_THROWS_WITH_AS(apply_json(R"({"operators": ["fast"]})", default_config()), doctest::Contains("fast"),
                         ConfigError);
    CHECK_THROWS_AS(apply_json("[1, 2]", default_config()), ConfigError);
    CHECK_THROWS_AS(load_config_file("/nonexistent/szasz.json", default_config()), ConfigError);
}

TEST_CASE("number formatting round-trips")
{
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.5) == "1.5");
    CHECK(format_number(std::optional<double>{}).empty());
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> exponent(-300, 300);
    for (int i = 0; i < 2000; ++i) {
        const double v = std::pow(10.0, exponent(rng)) * (i % 2 ? -1 : 1);
        CHECK(std::stod(format_number(v)) == v);
    }

    std::ostringstream os;
    write_row(os, {"a", "b,c", "say \"hi\"", ""});
    CHECK(os.str() == "a,\"b,c\",\"say \"\"hi\"\"\",\n");
}

TEST_CASE("convergence records")
{
    auto cfg = small_config();
    cfg.functions = {"pow_a", "poly3"};
    cfg.a = {10.0, 2.0};
    cfg.n = {4, 1};
    const auto records = compute_convergence(cfg);
    REQUIRE(records.size() == 2 * 2 * 2 * 5);

    // function in configured order, then a and n ascending, then x.
    CHECK(records.front().function == "pow_a");
    CHECK(records.front().a == 2.0);
    CHECK(records.front().n == 1);
    CHECK(records[1].x > records[0].x);
    CHECK(records[5].n == 4);
    CHECK(records[10].a == 10.0);
    CHECK(records[20].function == "poly3");

    for (const auto& r : records) {
        CHECK(r.status == "ok");
        REQUIRE(r.err_classical);
        REQUIRE(r.err_modified);
        REQUIRE(r.err_kantorovich);
        CHECK(*r.err_classical >= 0.0);
        CHECK(*r.err_modified >= 0.0);
        CHECK(*r.err_kantorovich >= 0.0);
        REQUIRE(r.bound);
        if (r.function == "pow_a") {
            CHECK(*r.err_modified <= 1e-9 * r.f_true);
            if (r.x > 0)
                CHECK(*r.err_classical > 1e-6);
        }
        CHECK(*r.err_modified <= *r.bound + 1e-9);
    }

    cfg.operators = {Operator::modified};
    for (const auto& r : compute_convergence(cfg)) {
        CHECK(!r.classical);
        CHECK(!r.err_kantorovich);
        CHECK(r.modified);
    }
}

TEST_CASE("large-n large-a cosine benchmark stays accurate")
{
    auto cfg = small_config();
    cfg.functions = {"x2cos4x"};
    cfg.a = {1500.0};
    cfg.n = {1000};
    cfg.x_hi = 2.0;
    cfg.x_count = 21;
    for (const auto& r : compute_convergence(cfg)) {
        CHECK(r.status == "ok");
        CHECK(*r.err_modified < 0.25);
        CHECK(*r.err_classical < 0.25);
        CHECK(*r.err_kantorovich < 0.25);
    }
}

TEST_CASE("summary and CSV output")
{
    const auto cfg = small_config();
    std::ostringstream csv;
    std::ostringstream summary;
    CHECK(run_convergence(cfg, csv, summary) == exit_ok);
    const auto rows = lines_of(csv.str());
    REQUIRE(rows.size() == 1 + 3 * 2 * 5);
    CHECK(rows[0] == "function,n,a,x,f_true,classical,modified,kantorovich,err_classical,err_modified,"
                     "err_kantorovich,bound,status");
    CHECK(csv.str().find('\r') == std::string::npos);
    for (const auto& row : rows) {
        CHECK(split(row).size() == 13);
        CHECK(row.back() != ',');
    }

    const auto sums = summarize(compute_convergence(cfg), cfg);
    CHECK(sums.size() == 3 * 2 * 3);
    CHECK(lines_of(summary.str()).size() == 1 + sums.size());
    for (const auto& s : sums)
        CHECK(s.max_error >= 0.0);

    std::ostringstream again;
    run_convergence(cfg, again, summary);
    CHECK(again.str() == csv.str());
}

TEST_CASE("cli convergence and exit codes")
{
    SUBCASE("stdout csv, summary on stderr")
    {
        const auto r = cli({"converge", "--function", "poly3", "--n", "1,5", "--a", "2", "--x-count", "3"});
        CHECK(r.code == 0);
        CHECK(lines_of(r.out).size() == 1 + 2 * 3);
        CHECK(r.err.rfind("function,operator,n,a,max_error", 0) == 0);
    }
    SUBCASE("file output, summary on stdout")
    {
        const auto path = temp_file("out.csv");
        const auto r = cli({"converge", "--function", "poly3", "--n", "2", "--x-count", "4", "--out", path.string()});
        CHECK(r.code == 0);
        std::ifstream in(path);
        std::stringstream text;
        text << in.rdbuf();
        CHECK(lines_of(text.str()).size() == 5);
        CHECK(r.out.rfind("function,operator", 0) == 0);
        std::filesystem::remove(path);
    }
    SUBCASE("repeated flags accumulate")
    {
        const auto r = cli({"converge", "--function", "x2exp4x", "--a", "15", "--a", "150,1500", "--n", "5,30",
                            "--n", "300", "--x-count", "2", "--operators", "modified"});
        CHECK(r.code == 0);
        CHECK(lines_of(r.out).size() == 1 + 3 * 3 * 2);
    }
    SUBCASE("flags override the file")
    {
        const auto path = temp_file("cfg.json", R"({"function": "cube", "n": [3], "a": 2, "x_count": 2})");
        const auto r = cli({"converge", "--config", path.string(), "--n", "7"});
        CHECK(r.code == 0);
        const auto rows = lines_of(r.out);
        REQUIRE(rows.size() == 3);
        CHECK(rows[1].rfind("cube,7,2,0,", 0) == 0);
        std::filesystem::remove(path);
    }
    SUBCASE("config errors exit with 2")
    {
        auto r = cli({"converge", "--a", "0.9"});
        CHECK(r.code == 2);
        CHECK(r.err.find("a must exceed 1") != std::string::npos);
        CHECK(r.out.empty());
        CHECK(cli({"converge", "--function", "nope"}).code == 2);
        CHECK(cli({"converge", "--n", "abc"}).code == 2);
        CHECK(cli({}).code == 2);
        CHECK(cli({"compare", "--operators", "modified"}).code == 2);
        CHECK(cli({"eval", "--function", "poly3"}).code == 2);
        CHECK(cli({"voronovskaya"}).code == 2);
        CHECK(cli({"converge", "--config", "/nonexistent.json"}).code == 2);
        const auto bad = temp_file("bad.json", "{\"n\": [1,\n}");
        r = cli({"converge", "--config", bad.string()});
        CHECK(r.code == 2);
        CHECK(r.err.find("line 2") != std::string::npos);
        std::filesystem::remove(bad);
    }
    SUBCASE("help exits cleanly")
    {
        const auto r = cli({"--help"});
        CHECK(r.code == 0);
        CHECK(r.out.find("converge") != std::string::npos);
    }
    SUBCASE("compare with two operators")
    {
        const auto r = cli({"compare", "--function", "x2cos4x", "--operators", "modified,kantorovich", "--n", "10",
                            "--x-count", "3"});
        CHECK(r.code == 0);
        const auto rows = lines_of(r.out);
        for (std::size_t i = 1; i < rows.size(); ++i)
            CHECK(split(rows[i])[5].empty());
    }
}

TEST_CASE("cli eval")
{
    const auto r = cli({"eval", "--function", "pow_a", "--a", "2", "--n", "3", "--x", "1"});
    CHECK(r.code == 0);
    const auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 2);
    const auto cells = split(rows[1]);
    CHECK(cells[0] == "pow_a");
    CHECK(std::stod(cells[6]) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(cells[12] == "ok");
}

TEST_CASE("cli voronovskaya")
{
    auto r = cli({"voronovskaya", "--function", "cube", "--a", "2", "--x", "1", "--n", "100,400"});
    CHECK(r.code == 0);
    auto rows = lines_of(r.out);
    REQUIRE(rows.size() == 3);
    CHECK(std::stod(split(rows[1])[5]) == doctest::Approx(1.96030).epsilon(1e-5));
    CHECK(std::abs(std::stod(split(rows[2])[6])) <= 0.5 * std::abs(std::stod(split(rows[1])[6])));

    r = cli({"voronovskaya", "--function", "pow_a", "--a", "3", "--x", "0.7", "--n", "5,50"});
    for (std::size_t i = 1; i < lines_of(r.out).size(); ++i)
        CHECK(std::abs(std::stod(split(lines_of(r.out)[i])[6])) <= 1e-9);

    r = cli({"voronovskaya", "--function", "poly3", "--a", "2", "--x", "0", "--n", "1,10,100"});
    for (std::size_t i = 1; i < lines_of(r.out).size(); ++i) {
        const auto cells = split(lines_of(r.out)[i]);
        for (int c : {4, 5, 6})
            CHECK(std::abs(std::stod(cells[c])) <= 1e-12);
    }
}

TEST_CASE("cli ordering")
{
    SUBCASE("monotone for e^-t")
    {
        const auto r = cli({"ordering", "--mode", "monotone", "--function", "exp_neg", "--a", "2", "--n", "5,50",
                            "--x-lo", "0.1", "--x-hi", "3", "--x-count", "8"});
        CHECK(r.code == 0);
        const auto rows = lines_of(r.out);
        REQUIRE(rows.size() == 9);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            const auto cells = split(rows[i]);
            CHECK(cells[6] == "0");
            CHECK(cells[8] == "0");
            CHECK(cells[9] == "ok");
        }
        CHECK(cli({"ordering", "--mode", "monotone", "--function", "exp_neg", "--n", "5"}).code == 2);
    }
    SUBCASE("sandwich for a^2t and its negation")
    {
        const auto r = cli({"ordering", "--function", "pow_2a,neg_pow_2a", "--a", "2", "--n", "5,10,50", "--x-lo",
                            "0.1", "--x-hi", "3", "--x-count", "30"});
        CHECK(r.code == 0);
        const auto rows = lines_of(r.out);
        REQUIRE(rows.size() == 1 + 3 * 30 + 1);
        for (std::size_t i = 1; i <= 90; ++i)
            CHECK(split(rows[i]).back() == "ok");
        CHECK(rows.back().find("screen_failed") != std::string::npos);
        CHECK(rows.back().find("not_convex") != std::string::npos);
    }
    SUBCASE("bad mode")
    {
        CHECK(cli({"ordering", "--mode", "sideways"}).code == 2);
    }
}

TEST_CASE("cli moments")
{
    const auto r = cli({"moments", "--n", "1,5,50", "--a", "1.5,10", "--x-hi", "5", "--x-count", "6"});
    CHECK(r.code == 0);
    const auto rows = lines_of(r.out);
    CHECK(rows.size() == 1 + 12 * 3 * 2 * 6);
    for (std::size_t i = 1; i < rows.size(); ++i)
        CHECK(split(rows[i]).back() == "ok");
}

TEST_CASE("row failures exit with 1")
{
    // The unscaled sample overflows; the classical column fails, others survive.
    auto cfg = small_config();
    cfg.functions = {"x2exp4x"};
    cfg.a = {1.5};
    cfg.n = {1};
    cfg.x_lo = 200.0;
    cfg.x_hi = 201.0;
    cfg.x_count = 2;
    std::ostringstream csv;
    std::ostringstream summary;
    const int code = run_convergence(cfg, csv, summary);
    CHECK(code == exit_row_failures);
    CHECK(csv.str().find("error:") != std::string::npos);
}
