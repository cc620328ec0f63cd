#pragma once

#include <iostream>
#include <string>
#include <vector>

namespace wpcn::cli {

/// Entry point behind the wpcnplan binary. args excludes the program name.
/// Exit codes: 0 ok, 2 parse error, 3 infeasible min-cost, 4 association
/// cycling guard, 1 other failure.
int run(std::vector<std::string> args, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);

}  // namespace wpcn::cli
