#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace relhorn::cli {

/// Exit codes: 0 affirmative, 1 negative with witness, 2 usage or input error.
inline constexpr int kAffirmative = 0;
inline constexpr int kNegative = 1;
inline constexpr int kInputError = 2;

/// args[0] is the program name. Reports go to `out` as JSON, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace relhorn::cli
