#ifndef SZASZ_BENCH_CORPUS_HPP
#define SZASZ_BENCH_CORPUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "szasz/function.hpp"

namespace szasz::bench {

struct CorpusEntry
{
    std::string id;
    ScalarFunction<double> definition;
    /// Part of the default benchmark selection.
    bool featured = false;
    /// Known Lipschitz constant on [0, inf), used for an analytic modulus.
    std::optional<double> lipschitz;
};

/// Every registered id, featured entries first.
const std::vector<std::string>& corpus_ids();

/// Ids selected when no function is configured.
std::vector<std::string> featured_ids();

bool has_entry(const std::string& id);

/// Builds the entry for `id`; entries built on a^t depend on the base `a`.
/// Throws std::invalid_argument for unknown ids.
CorpusEntry corpus_entry(const std::string& id, double a);

} // namespace szasz::bench

#endif
