#include "szasz/bench/corpus.hpp"

#include <cmath>
#include <stdexcept>

namespace szasz::bench {

namespace {

using Fn = ScalarFunction<double>::Fn;

CorpusEntry entry(std::string id, Fn f, Fn d1, Fn d2, Growth growth, bool featured = false)
{
    CorpusEntry e;
    e.id = id;
    e.definition = make_function<double>(std::move(id), std::move(f), growth);
    e.definition.d1 = std::move(d1);
    e.definition.d2 = std::move(d2);
    e.featured = featured;
    return e;
}

// sign * e^{k L t}, with the exponential carried by the weights.
CorpusEntry base_power(std::string id, double a, double k, double sign)
{
    const double c = k * std::log(a);
    auto e = entry(
        std::move(id), [=](double t) { return sign * std::exp(c * t); },
        [=](double t) { return sign * c * std::exp(c * t); },
        [=](double t) { return sign * c * c * std::exp(c * t); }, Growth::exponential(c));
    e.definition.scaled = [sign](double) { return sign; };
    return e;
}

} // namespace

const std::vector<std::string>& corpus_ids()
{
    static const std::vector<std::string> ids = {"poly3",  "x2exp4x", "x2cos4x", "pow_a",    "pow_2a", "neg_pow_2a",
                                                 "exp_neg", "cube",   "identity", "square", "const"};
    return ids;
}

std::vector<std::string> featured_ids()
{
    return {"poly3", "x2exp4x", "x2cos4x"};
}

bool has_entry(const std::string& id)
{
    for (const auto& known : corpus_ids())
        if (known == id)
            return true;
    return false;
}

CorpusEntry corpus_entry(const std::string& id, double a)
{
    if (id == "poly3") {
        // t (t - 1/3)(t - 1/4)
        return entry(
            id, [](double t) { return t * (t - 1.0 / 3) * (t - 0.25); },
            [](double t) { return 3 * t * t - 7.0 / 6 * t + 1.0 / 12; }, [](double t) { return 6 * t - 7.0 / 6; },
            Growth::polynomial(3), true);
    }
    if (id == "x2exp4x") {
        auto e = entry(
            id, [](double t) { return t * t * std::exp(4 * t); },
            [](double t) { return (2 * t + 4 * t * t) * std::exp(4 * t); },
            [](double t) { return (2 + 16 * t + 16 * t * t) * std::exp(4 * t); }, Growth::exponential(4.0, 2.0),
            true);
        e.definition.scaled = [](double t) { return t * t; };
        return e;
    }
    if (id == "x2cos4x") {
        return entry(
            id, [](double t) { return t * t * std::cos(4 * t); },
            [](double t) { return 2 * t * std::cos(4 * t) - 4 * t * t * std::sin(4 * t); },
            [](double t) { return (2 - 16 * t * t) * std::cos(4 * t) - 16 * t * std::sin(4 * t); },
            Growth::polynomial(2), true);
    }
    if (id == "pow_a")
        return base_power(id, a, 1.0, 1.0);
    if (id == "pow_2a")
        return base_power(id, a, 2.0, 1.0);
    if (id == "neg_pow_2a")
        return base_power(id, a, 2.0, -1.0);
    if (id == "exp_neg") {
        return entry(
            id, [](double t) { return std::exp(-t); }, [](double t) { return -std::exp(-t); },
            [](double t) { return std::exp(-t); }, Growth::bounded());
    }
    if (id == "cube") {
        return entry(
            id, [](double t) { return t * t * t; }, [](double t) { return 3 * t * t; }, [](double t) { return 6 * t; },
            Growth::polynomial(3));
    }
    if (id == "identity") {
        auto e = entry(
            id, [](double t) { return t; }, [](double) { return 1.0; }, [](double) { return 0.0; },
            Growth::polynomial(1));
        e.lipschitz = 1.0;
        return e;
    }
    if (id == "square") {
        return entry(
            id, [](double t) { return t * t; }, [](double t) { return 2 * t; }, [](double) { return 2.0; },
            Growth::polynomial(2));
    }
    if (id == "const") {
        auto e = entry(
            id, [](double) { return 1.0; }, [](double) { return 0.0; }, [](double) { return 0.0; },
            Growth::bounded());
        e.lipschitz = 0.0;
        return e;
    }
    throw std::invalid_argument("unknown function '" + id + "'");
}

} // namespace szasz::bench
