#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace molinfer::util {

std::string trim(std::string_view s);

// Splits on any run of whitespace; no empty tokens.
std::vector<std::string> split_ws(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep);

bool starts_with(std::string_view s, std::string_view prefix);

// Strict integer / real parsing; throws std::runtime_error on garbage.
long long parse_int(std::string_view s, std::string_view what);
double parse_real(std::string_view s, std::string_view what);

// Shortest decimal representation that round-trips, capped at 12
// significant digits. Used for LP files, where byte determinism wins
// over the last bits.
std::string format_number(double v);

// Shortest representation that round-trips exactly; for model files and
// other artifacts that must reload bit-identically.
std::string format_number_exact(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace molinfer::util
