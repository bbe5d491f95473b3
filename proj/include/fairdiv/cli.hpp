#pragma once

// Command-line front end. run_cli takes the full argv (program name first)
// and explicit streams so it can be driven in-process by tests.
//
// Exit codes: 0 success or threshold met, 1 guarantee or threshold failure,
// 2 usage or input error.

#include <iosfwd>
#include <string>
#include <vector>

namespace fairdiv {

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace fairdiv
