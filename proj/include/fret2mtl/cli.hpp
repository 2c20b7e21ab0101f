#ifndef FRET2MTL_CLI_HPP
#define FRET2MTL_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace fret2mtl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCounterexample = 1;
inline constexpr int kExitError = 2;

/// Runs one command line (without the program name).
int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err);

}  // namespace fret2mtl

#endif  // FRET2MTL_CLI_HPP
