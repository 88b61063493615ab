#pragma once

#include <iosfwd>

namespace qnet::cli {

// Entry point shared by the qnetsim binary and the tests. Returns the process
// exit status; diagnostics go to `err`, stdout payloads to `out`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace qnet::cli
