#pragma once

#include <ostream>

namespace saddle {

/// Entry point of saddle_solve. Exit codes: 0 success, 1 usage or
/// configuration error, 2 divergence (trace flushed up to the failure).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace saddle
