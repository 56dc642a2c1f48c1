#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mtlkit::cli {

enum Exit : int { kPass = 0, kCounterexample = 1, kBudget = 2, kUsage = 3 };

/// Runs one mtlkit invocation; args excludes the program name.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace mtlkit::cli
