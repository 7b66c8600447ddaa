#pragma once

// The dtoolkit command line. Every subcommand prints one JSON report on `out`:
//
//   {"schema_version": "1", "command": [...], "result": {...},
//    "timing": {"seconds": ...}, "resources": {"threads": ...}}
//
// Failures print a human-readable line on `err` and a report carrying an
// "error" object instead of "result". Exit codes: 0 success, 1 negative
// verdict, 2 input error, 3 resource limit.

#include <iosfwd>
#include <string>
#include <vector>

namespace dtk::cli {

inline constexpr const char* kSchemaVersion = "1";

enum ExitCode : int { kOk = 0, kNegative = 1, kInputError = 2, kResourceLimit = 3 };

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dtk::cli
