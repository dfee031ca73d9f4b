#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dcjx::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitVerify = 3;

inline constexpr const char* kVersion = "0.1.0";

/// Runs `dcjx <args...>` (args excludes the program name). Files named by
/// the command are written; standard output and diagnostics go to `out` and
/// `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Hex SHA-256 of `data`.
std::string sha256_hex(const std::string& data);

}  // namespace dcjx::cli
