#ifndef GMAS_TOOLS_CLI_HPP
#define GMAS_TOOLS_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace gmas::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;

/// Comma-separated decimals, e.g. "2,2,2,2". Throws std::invalid_argument.
std::vector<double> parse_vector(const std::string& text);
/// Rows separated by ';', entries by ','.
std::vector<std::vector<double>> parse_matrix(const std::string& text);

/// Entry point for the gmas command; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gmas::cli

#endif  // GMAS_TOOLS_CLI_HPP
