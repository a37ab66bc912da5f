#pragma once

#include "config.hpp"
#include "report.hpp"

#include <iosfwd>

namespace mollify::cli {

Report cmd_eval(const Json& config, OutputSettings& out);
Report cmd_optimize(const Json& config, OutputSettings& out);
Report cmd_table1(const Json& config, OutputSettings& out);
Report cmd_rank_bound(const Json& config, OutputSettings& out);
Report cmd_verify(const Json& config, OutputSettings& out);

/// Full command-line entry point. Returns the process exit code:
/// 0 success, 1 computational failure, 2 usage or configuration error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace mollify::cli
