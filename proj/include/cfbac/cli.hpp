#ifndef CFBAC_CLI_HPP
#define CFBAC_CLI_HPP

#include <iosfwd>

namespace cfbac {

// Exit codes of run_cli.
inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitPrecision = 2;
inline constexpr int kExitError = 3;

// Data goes to out, diagnostics to err.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cfbac

#endif
