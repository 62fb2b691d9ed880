#include "szasz/bench/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "szasz/bench/corpus.hpp"

namespace szasz::bench {

namespace {

using nlohmann::json;

[[noreturn]] void field_error(const std::string& field, const std::string& what)
{
    throw ConfigError(field + ": " + what);
}

template <typename T>
T scalar_as(const std::string& field, const json& v)
{
    if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string())
            field_error(field, "expected a string");
        return v.get<std::string>();
    } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer())
            field_error(field, "expected an integer");
        return v.get<T>();
    } else {
        if (!v.is_number())
            field_error(field, "expected a number");
        return v.get<T>();
    }
}

// A list field accepts either a single value or an array.
template <typename T>
std::vector<T> list_as(const std::string& field, const json& v)
{
    std::vector<T> out;
    if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i)
            out.push_back(scalar_as<T>(field + "[" + std::to_string(i) + "]", v[i]));
    } else {
        out.push_back(scalar_as<T>(field, v));
    }
    return out;
}

std::string position_of(const std::string& text, std::size_t byte)
{
    std::size_t line = 1;
    std::size_t col = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

} // namespace

const char* to_string(Operator op)
{
    switch (op) {
    case Operator::classical: return "classical";
    case Operator::modified: return "modified";
    case Operator::kantorovich: return "kantorovich";
    }
    return "?";
}

Operator parse_operator(const std::string& name)
{
    if (name == "classical")
        return Operator::classical;
    if (name == "modified")
        return Operator::modified;
    if (name == "kantorovich")
        return Operator::kantorovich;
    throw ConfigError("operators: unknown operator '" + name + "'");
}

void RunConfig::validate() const
{
    if (functions.empty())
        field_error("function", "at least one function is required");
    for (const auto& id : functions)
        if (!has_entry(id))
            field_error("function", "unknown function '" + id + "'");
    if (n.empty())
        field_error("n", "at least one value is required");
    for (int v : n)
        if (v < 1)
            field_error("n", "n must be at least 1 (got " + std::to_string(v) + ")");
    if (a.empty())
        field_error("a", "at least one value is required");
    for (double v : a)
        if (!(v > 1.0) || !std::isfinite(v)) {
            std::ostringstream os;
            os << "a must exceed 1 (got " << v << ")";
            field_error("a", os.str());
        }
    if (!(x_lo >= 0.0) || !std::isfinite(x_lo))
        field_error("x_lo", "must be finite and non-negative");
    if (!std::isfinite(x_hi) || x_hi < x_lo)
        field_error("x_hi", "must be finite and not below x_lo");
    if (x_count < 1)
        field_error("x_count", "must be at least 1");
    if (x_count > 1 && !(x_hi > x_lo))
        field_error("x_hi", "must exceed x_lo when x_count > 1");
    if (operators.empty())
        field_error("operators", "at least one operator is required");
    if (x && !(*x >= 0.0 && std::isfinite(*x)))
        field_error("x", "must be finite and non-negative");
    if (mode != "monotone" && mode != "sandwich")
        field_error("mode", "expected 'monotone' or 'sandwich'");
    if (out.empty())
        field_error("out", "must not be empty");
    try {
        eval.validate();
    } catch (const std::exception& e) {
        field_error("tol", e.what());
    }
}

bool RunConfig::uses(Operator op) const
{
    for (auto o : operators)
        if (o == op)
            return true;
    return false;
}

Eigen::ArrayXd RunConfig::x_grid() const
{
    if (x_count == 1)
        return Eigen::ArrayXd::Constant(1, x_lo);
    Eigen::ArrayXd grid = Eigen::ArrayXd::LinSpaced(x_count, x_lo, x_hi);
    grid(x_count - 1) = x_hi;
    return grid;
}

RunConfig default_config()
{
    RunConfig cfg;
    cfg.functions = featured_ids();
    for (int n = 1; n <= 10; ++n)
        cfg.n.push_back(n);
    cfg.n.push_back(100);
    cfg.n.push_back(500);
    cfg.a = {1.5};
    cfg.operators = {Operator::classical, Operator::modified, Operator::kantorovich};
    return cfg;
}

RunConfig apply_json(const std::string& text, RunConfig base)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: parse error at " + position_of(text, e.byte) + ": " + e.what());
    }
    if (!doc.is_object())
        throw ConfigError("config: expected a JSON object at the top level");

    for (const auto& [key, value] : doc.items()) {
        if (key == "function" || key == "functions") {
            base.functions = list_as<std::string>(key, value);
        } else if (key == "n") {
            base.n = list_as<int>(key, value);
        } else if (key == "a") {
            base.a = list_as<double>(key, value);
        } else if (key == "x_lo") {
            base.x_lo = scalar_as<double>(key, value);
        } else if (key == "x_hi") {
            base.x_hi = scalar_as<double>(key, value);
        } else if (key == "x_count") {
            base.x_count = scalar_as<int>(key, value);
        } else if (key == "operators") {
            base.operators.clear();
            for (const auto& name : list_as<std::string>(key, value))
                base.operators.push_back(parse_operator(name));
        } else if (key == "tol") {
            base.eval.series_tol = scalar_as<double>(key, value);
        } else if (key == "quad_order") {
            base.eval.quad_order = scalar_as<int>(key, value);
        } else if (key == "grid_points") {
            base.eval.grid_points = scalar_as<int>(key, value);
        } else if (key == "out") {
            base.out = scalar_as<std::string>(key, value);
        } else if (key == "x") {
            base.x = scalar_as<double>(key, value);
        } else if (key == "mode") {
            base.mode = scalar_as<std::string>(key, value);
        } else {
            field_error(key, "unknown configuration key");
        }
    }
    return base;
}

RunConfig load_config_file(const std::string& path, RunConfig base)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("config: cannot open '" + path + "'");
    std::ostringstream text;
    text << in.rdbuf();
    try {
        return apply_json(text.str(), std::move(base));
    } catch (const ConfigError& e) {
        throw ConfigError(path + ": " + e.what());
    }
}

} // namespace szasz::bench
