#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace seps {

// Command-line front end. Exit codes: 0 success, 1 refusal or invalid input,
// 2 usage error, 3 soundness failure (contradictory certified results).
int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int cli_run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace seps
