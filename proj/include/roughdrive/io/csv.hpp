#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rd::io {

// Shortest decimal representation that round-trips the IEEE-754 double.
std::string format_double(double v);
double parse_double(std::string_view s);

std::vector<std::string_view> split_csv_line(std::string_view line,
                                             std::vector<std::string_view>& out);

}  // namespace rd::io
