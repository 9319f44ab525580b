#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace bqp::cli {

// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kNotCertified = 1;
inline constexpr int kUsage = 2;
inline constexpr int kWriteFailed = 3;
inline constexpr int kReadFailed = 4;
inline constexpr int kTooLarge = 5;

/// Runs one invocation. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace bqp::cli
