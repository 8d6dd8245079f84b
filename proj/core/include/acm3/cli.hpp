#pragma once

// Command-line front end of the verify tool.

#include <ostream>
#include <string>
#include <vector>

namespace acm3 {

/// Exit codes: 0 all checks pass, 1 some check fails, 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Every check id with its reference, one per line, in catalog order.
void list_checks(std::ostream& out);

}  // namespace acm3
