// cli.hpp
// Subcommand dispatch for the chspindle binary; callable from tests.
#pragma once

#include <string>
#include <vector>

namespace chspindle {

// Exit codes: 0 success, 1 validation error, 2 runtime failure, 64 unknown
// subcommand.
int run_cli(const std::vector<std::string>& args);

}  // namespace chspindle
