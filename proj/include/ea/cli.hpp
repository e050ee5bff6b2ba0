#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ea {

/// Command-line front end. `args` excludes the program name. Returns the
/// process exit code: 0 on success, 2 on configuration errors, 1 on runtime
/// I/O failure.
int cli_main(std::vector<std::string> args, std::ostream& out, std::ostream& err);

} // namespace ea
