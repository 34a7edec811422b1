#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "poiname/matrix.hpp"

namespace poiname::io {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// Fixed 17-significant-digit form, used by the embedding model format.
std::string format_double17(double value);

/// Strict parse of a whole field; throws InputError naming `what` on failure.
double parse_double(std::string_view text, std::string_view what = "number");
std::uint64_t parse_uint(std::string_view text, std::string_view what = "integer");

std::vector<std::string> split(std::string_view line, char delimiter);
std::string_view trim(std::string_view text);

/// Reads `key=value` lines. Blank lines and lines starting with '#' are skipped.
/// Later duplicates overwrite earlier ones.
using KeyValues = std::map<std::string, std::string>;
KeyValues read_key_values(std::istream& in);
KeyValues read_key_values_file(const std::filesystem::path& path);

/// Writes key=value lines in the given order.
void write_key_values(std::ostream& out,
                      const std::vector<std::pair<std::string, std::string>>& entries);

/// Tab-separated matrix: header row `region` + labels, then one row per label.
void write_matrix(std::ostream& out, const LabeledMatrix& matrix, double scale = 1.0);
LabeledMatrix read_matrix(std::istream& in);
LabeledMatrix read_matrix_file(const std::filesystem::path& path);

/// Throws InputError if the file cannot be opened.
std::ifstream open_input(const std::filesystem::path& path);
std::ofstream open_output(const std::filesystem::path& path);

/// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path& path);

/// Percent-escapes '%', whitespace and control bytes so the result is one field.
std::string escape_field(std::string_view text);
std::string unescape_field(std::string_view text);

}  // namespace poiname::io
