#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace liftshadow::cli {

enum Exit : int { affirmative = 0, negative = 1, usage = 2, budget = 3 };

/// Runs one command line (without the program name). Reports go to `out`,
/// errors to `err` as one JSON object per line.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace liftshadow::cli
