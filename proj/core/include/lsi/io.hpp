#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

namespace lsi {

/// Line-at-a-time reader; transparently decompresses gzip input.
class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path);
  ~LineReader();
  LineReader(LineReader&&) noexcept;
  LineReader& operator=(LineReader&&) noexcept;

  /// Reads the next line without its terminator ("\n" or "\r\n").
  bool next(std::string& line);

  /// 1-based number of the line most recently returned.
  std::size_t line_number() const noexcept { return line_number_; }
  const std::string& source() const noexcept { return source_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::string source_;
  std::size_t line_number_ = 0;
};

/// Writes text to a file; output is gzip-compressed when the path ends in ".gz".
class LineWriter {
 public:
  explicit LineWriter(const std::filesystem::path& path);
  ~LineWriter();
  LineWriter(LineWriter&&) noexcept;
  LineWriter& operator=(LineWriter&&) noexcept;

  void write(std::string_view text);
  void write_line(std::string_view line);
  /// Flushes and closes; throws on I/O failure. Called by the destructor if needed
  /// (where errors are only logged).
  void close();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::string target_;
};

/// Writes `contents` to `path` in one shot.
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace lsi
