#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace polydyn {

// args excludes the program name. Returns 0 on success, 1 on domain error, 2 on usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace polydyn
