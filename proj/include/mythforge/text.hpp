#pragma once

// Small string helpers shared across modules.

#include <string>
#include <string_view>
#include <vector>

namespace mythforge::text {

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, std::string_view delimiter);
std::string to_lower_ascii(std::string_view s);
// Collapses internal whitespace runs to one space and trims.
std::string collapse_spaces(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace mythforge::text
