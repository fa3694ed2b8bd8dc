#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace af2db::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

/// Runs one af2db command. argv[0] is the program name.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// File name -> contents written by `af2db example`.
std::map<std::string, std::string> example_files();

} // namespace af2db::cli
