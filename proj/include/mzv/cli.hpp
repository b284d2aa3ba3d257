#ifndef MZV_CLI_HPP
#define MZV_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace mzv::cli {

// args excludes the program name. Returns 0 on success, 1 when a
// verification fails or the precision target cannot be met, 2 on usage
// errors.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace mzv::cli

#endif
