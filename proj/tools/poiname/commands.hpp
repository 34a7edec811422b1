#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace poiname::cli {

/// Runs one `poiname` command line. `args` excludes the program name.
/// Returns 0 on success, 1 on a computation error and 2 on an input or
/// usage error; messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace poiname::cli
