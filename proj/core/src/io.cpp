#include "poiname/io.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "poiname/error.hpp"

namespace poiname::io {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), end);
}

std::string format_double17(double value) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value,
                                       std::chars_format::general, 17);
  return std::string(buf.data(), end);
}

double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw InputError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_uint(std::string_view text, std::string_view what) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw InputError("invalid " + std::string(what) + ": '" + std::string(text) + "'");
  }
  return value;
}

std::vector<std::string> split(std::string_view line, char delimiter) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(delimiter, start);
    if (pos == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string_view trim(std::string_view text) {
  constexpr std::string_view ws = " \t\r\n\f\v";
  const auto first = text.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(ws);
  return text.substr(first, last - first + 1);
}

KeyValues read_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  while (std::getline(in, line)) {
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw InputError("expected key=value, got '" + std::string(view) + "'");
    }
    kv[std::string(trim(view.substr(0, eq)))] = std::string(trim(view.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_key_values_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_key_values(in);
}

void write_key_values(std::ostream& out,
                      const std::vector<std::pair<std::string, std::string>>& entries) {
  for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
}

void write_matrix(std::ostream& out, const LabeledMatrix& matrix, double scale) {
  out << "region";
  for (const auto& label : matrix.labels()) out << '\t' << label;
  out << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << matrix.labels()[i];
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      out << '\t' << format_double(matrix.at(i, j) * scale);
    }
    out << '\n';
  }
}

LabeledMatrix read_matrix(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InputError("matrix file is empty");
  auto header = split(line, '\t');
  if (header.empty() || header.front() != "region") {
    throw InputError("matrix header must start with 'region'");
  }
  std::vector<std::string> labels(header.begin() + 1, header.end());
  std::vector<double> values;
  values.reserve(labels.size() * labels.size());
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    const auto fields = split(line, '\t');
    if (row >= labels.size() || fields.size() != labels.size() + 1 || fields.front() != labels[row]) {
      throw InputError("malformed matrix row " + std::to_string(row + 1));
    }
    for (std::size_t j = 1; j < fields.size(); ++j) {
      values.push_back(parse_double(fields[j], "matrix entry"));
    }
    ++row;
  }
  if (row != labels.size()) throw InputError("matrix has missing rows");
  return LabeledMatrix(std::move(labels), std::move(values));
}

LabeledMatrix read_matrix_file(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_matrix(in);
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

std::string file_digest(const std::filesystem::path& path) {
  auto in = open_input(path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    const auto got = in.gcount();
    for (std::streamsize i = 0; i < got; ++i) {
      h ^= static_cast<unsigned char>(buf[static_cast<std::size_t>(i)]);
      h *= 0x100000001b3ULL;
    }
  }
  std::array<char, 17> hex{};
  std::snprintf(hex.data(), hex.size(), "%016llx", static_cast<unsigned long long>(h));
  return std::string(hex.data(), 16);
}

std::string escape_field(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (unsigned char c : text) {
    if (c == '%' || c <= 0x20 || c == 0x7f) {
      char buf[4];
      std::snprintf(buf, sizeof buf, "%%%02X", c);
      out += buf;
    } else {
      out += static_cast<char>(c);
    }
  }
  return out;
}

std::string unescape_field(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%') {
      unsigned value = 0;
      if (i + 2 >= text.size()) {
        throw InputError("truncated escape in '" + std::string(text) + "'");
      }
      const auto [ptr, ec] = std::from_chars(text.data() + i + 1, text.data() + i + 3, value, 16);
      if (ec != std::errc{} || ptr != text.data() + i + 3) {
        throw InputError("bad escape in '" + std::string(text) + "'");
      }
      out += static_cast<char>(value);
      i += 2;
    } else {
      out += text[i];
    }
  }
  return out;
}

}  // namespace poiname::io
