#include "szasz/bench/csv.hpp"

#include <array>
#include <charconv>

namespace szasz::bench {

std::string format_number(double value)
{
    std::array<char, 32> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), res.ptr);
}

std::string format_number(const std::optional<double>& value)
{
    return value ? format_number(*value) : std::string();
}

void write_row(std::ostream& os, const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0)
            os << ',';
        const std::string& f = fields[i];
        if (f.find_first_of(",\"\r\n") == std::string::npos) {
            os << f;
            continue;
        }
        os << '"';
        for (char c : f) {
            if (c == '"')
                os << '"';
            os << c;
        }
        os << '"';
    }
    os << '\n';
}

const std::vector<std::string>& convergence_header()
{
    static const std::vector<std::string> header = {
        "function",      "n",               "a",     "x",     "f_true",      "classical",     "modified",
        "kantorovich",   "err_classical",   "err_modified", "err_kantorovich", "bound", "status"};
    return header;
}

void write_convergence(std::ostream& os, const std::vector<ConvergenceRecord>& records)
{
    write_row(os, convergence_header());
    for (const auto& r : records) {
        write_row(os, {r.function, std::to_string(r.n), format_number(r.a), format_number(r.x),
                       format_number(r.f_true), format_number(r.classical), format_number(r.modified),
                       format_number(r.kantorovich), format_number(r.err_classical), format_number(r.err_modified),
                       format_number(r.err_kantorovich), format_number(r.bound), r.status});
    }
}

} // namespace szasz::bench
