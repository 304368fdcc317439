#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zsac::text {

std::string_view trim(std::string_view s) noexcept;

/// Splits on runs of ASCII whitespace, dropping empty pieces.
std::vector<std::string_view> split_whitespace(std::string_view s);

/// Splits on every occurrence of `sep`, keeping empty pieces.
std::vector<std::string_view> split(std::string_view s, char sep);

std::optional<double> parse_double(std::string_view s) noexcept;
std::optional<std::size_t> parse_size(std::string_view s) noexcept;

/// ASCII lowercase; bytes outside ASCII are left untouched.
std::string to_lower(std::string_view s);

/// Reads a whole file, throwing IoError on failure.
std::string read_file(const std::string& path);

/// Writes a whole file, throwing IoError on failure.
void write_file(const std::string& path, std::string_view content);

/// Replaces characters that are awkward in file names with '_'.
std::string file_safe(std::string_view s);

/// Iterates the lines of a buffer, stripping a trailing '\r'.
class LineReader {
 public:
  explicit LineReader(std::string_view buffer) : rest_(buffer) {}

  bool next(std::string_view& line);
  std::size_t line_number() const noexcept { return line_no_; }

 private:
  std::string_view rest_;
  std::size_t line_no_ = 0;
  bool done_ = false;
};

}  // namespace zsac::text
