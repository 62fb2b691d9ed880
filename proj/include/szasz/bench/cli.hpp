#ifndef SZASZ_BENCH_CLI_HPP
#define SZASZ_BENCH_CLI_HPP

#include <ostream>

namespace szasz::bench {

/// Entry point of the szasz-bench tool. Returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace szasz::bench

#endif
