#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace clonelab::cli
{
    inline constexpr int exit_pass = 0;
    inline constexpr int exit_fail = 1;
    inline constexpr int exit_usage = 2;
    inline constexpr int exit_budget = 3;

    /// Runs one subcommand; args excludes the program name. Reports go to out,
    /// diagnostics to err.
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}
