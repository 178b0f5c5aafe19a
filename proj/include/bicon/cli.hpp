#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bicon {

/// Entry point of the `bicon` tool. `args[0]` is the program name; `in` backs
/// the `-` input path. Exit codes: 0 success, 1 usage or input error,
/// 2 no biconnector exists, 3 verification failed, 4 internal error.
int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace bicon
