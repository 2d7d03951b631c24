#ifndef PLATEFSI_CLI_HPP
#define PLATEFSI_CLI_HPP

#include <string>

#include "platefsi/io.hpp"
#include "platefsi/verify.hpp"

namespace platefsi::cli {

// Exit codes: 0 success, 1 runtime or hypothesis failure, 2 bad usage or
// bad config, 3 verification failure.
int run(int argc, const char* const* argv);

int cmd_solve(const RunConfig& config);
int cmd_sweep(const RunConfig& config);
int cmd_lift(const RunConfig& config, const std::string& field_path);
int cmd_verify(const VerifyOptions& options);

}  // namespace platefsi::cli

#endif
