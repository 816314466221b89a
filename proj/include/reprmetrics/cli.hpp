#pragma once

#include <iosfwd>

namespace reprmetrics {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitPartial = 2;  // finished, but some sequences were skipped

// Entry point behind the `reprmetrics` executable; reports go to `out` (or
// --output), diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace reprmetrics
