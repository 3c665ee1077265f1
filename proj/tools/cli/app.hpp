#ifndef RNMS_CLI_APP_HPP
#define RNMS_CLI_APP_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace rnms::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kNumeric = 2,
  kValidationFailed = 3,
};

/// Parses `args` (without the program name) and runs the chosen subcommand.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "1-7", "2", "1,3,5" or a mix such as "1-3,6".
std::vector<int> parse_int_list(const std::string& text);

/// Comma-separated probabilities for m+1 rules; must sum to 1 within 1e-9, then renormalized.
std::vector<double> parse_probs(const std::string& text, int m);

}  // namespace rnms::cli

#endif  // RNMS_CLI_APP_HPP
