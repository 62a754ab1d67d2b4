#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace geofat::cli {

/// Runs one command line (without the program name). Results go to `out`
/// unless written to a file; errors go to `err` as a JSON object.
/// Exit codes: 0 success, 1 domain or input error, 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, char** argv);

}  // namespace geofat::cli
