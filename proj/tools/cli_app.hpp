#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace tvs::cli {

/// Runs the command line (without the program name). Errors are reported on
/// `err` as one JSON object; the return value is the process exit status.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace tvs::cli
