#pragma once

// Command-line front end: factor, verify and demo subcommands.
//
// Exit codes: 0 success, 1 verification failed, 2 parse error,
// 3 precondition violated, 4 internal error.

#include <iosfwd>
#include <string>
#include <vector>

namespace kcomm::cli {

enum Exit : int { Ok = 0, VerifyFailed = 1, ParseError = 2, PreconditionFailed = 3, InternalError = 4 };

/// Runs the CLI on arguments without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Default verification window for an input descriptor:
/// 2 (prefix + 2 period + k), at least max(size, 4).
std::size_t default_window(const std::string& input_json, unsigned k);

}  // namespace kcomm::cli
