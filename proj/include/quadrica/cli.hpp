#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace quadrica::cli {

inline constexpr int kExitDecided = 0;
inline constexpr int kExitReplayMismatch = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitUnknown = 3;
inline constexpr int kMaxTableBound = 20;

/// Runs one command line (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parallelism from QUADRICA_JOBS, or 1.
unsigned default_jobs();

}  // namespace quadrica::cli
