#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace uhlmann::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int { kSuccess = 0, kComputationFailure = 1, kUsageError = 2 };

/// Parses "pi", "pi/2", "3pi/4", "2*pi/3", "-pi/4" or a plain decimal.
/// Throws InvalidInput on anything else.
double parse_angle(std::string_view text);

/// Plain decimal (no pi forms).
double parse_real(std::string_view text);

/// A single value, a comma list "a,b,c", or an inclusive range "start:stop:count"
/// (count >= 2, start < stop). `angles` enables the pi forms.
std::vector<double> parse_values(std::string_view text, bool angles);

/// True when the text uses the start:stop:count form.
bool is_range(std::string_view text);

/// 17 significant digits, '.' decimal point regardless of the global locale.
std::string format_real(double value);

/// Runs the tool. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace uhlmann::cli
