#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace thetakit::cli {

enum Exit : int { Pass = 0, CheckFailed = 1, Usage = 2, Bound = 3 };

/// Runs the `theta` front end on argv-style arguments (without the program
/// name). Reports go to `out` (or --output), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace thetakit::cli
