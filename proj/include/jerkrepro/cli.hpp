#pragma once

// Command-line front end.
//
//   jerkrepro simulate --a A --sign minus|plus --ic X,XD,XDD --method euler|rk4|rk45
//                      --h H --t-end T --points N --out FILE
//   jerkrepro compare  --measured FILE --candidate NAME=FILE... --windows K
//                      --grid-points N --report FILE [--windows-csv FILE]
//   jerkrepro horizon  --measured FILE --candidate NAME=FILE... --threshold E
//                      --windows K [--report FILE]
//
// Every command accepts --config FILE (RunConfig JSON); flags override it.
// Exit status: 0 success, 1 I/O or data failure, 2 usage or validation failure.

#include <ostream>
#include <string>
#include <vector>

namespace jerkrepro::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsage = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same as above; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace jerkrepro::cli
