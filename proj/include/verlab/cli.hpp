#pragma once

// Command-line surface. run_cli is the testable entry point wrapped by the
// verlab binary; args exclude the program name. Exit codes: 0 success,
// 1 computation error (structured JSON on the error stream), 2 usage error.

#include <iosfwd>
#include <string>
#include <vector>

namespace verlab {

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace verlab
