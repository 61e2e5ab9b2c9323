#include "lsi/io.hpp"

#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <zlib.h>

#include "lsi/error.hpp"
#include "lsi/log.hpp"

namespace lsi {

namespace {

bool has_gz_suffix(const std::filesystem::path& path) { return path.extension() == ".gz"; }

}  // namespace

struct LineReader::Impl {
  gzFile file = nullptr;
  char buffer[1 << 16];
};

LineReader::LineReader(const std::filesystem::path& path)
    : impl_(std::make_unique<Impl>()), source_(path.string()) {
  impl_->file = gzopen(source_.c_str(), "rb");
  if (impl_->file == nullptr) {
    throw InputError("cannot open " + source_ + ": " + std::strerror(errno));
  }
  gzbuffer(impl_->file, 1 << 17);
}

LineReader::~LineReader() {
  if (impl_ && impl_->file) gzclose(impl_->file);
}

LineReader::LineReader(LineReader&&) noexcept = default;
LineReader& LineReader::operator=(LineReader&&) noexcept = default;

bool LineReader::next(std::string& line) {
  line.clear();
  bool any = false;
  while (gzgets(impl_->file, impl_->buffer, sizeof(impl_->buffer)) != nullptr) {
    any = true;
    const std::size_t len = std::strlen(impl_->buffer);
    line.append(impl_->buffer, len);
    if (len > 0 && impl_->buffer[len - 1] == '\n') break;
  }
  if (!any) {
    int err = Z_OK;
    const char* msg = gzerror(impl_->file, &err);
    if (err != Z_OK && err != Z_STREAM_END) {
      throw std::runtime_error("read error in " + source_ + ": " + msg);
    }
    return false;
  }
  if (!line.empty() && line.back() == '\n') line.pop_back();
  if (!line.empty() && line.back() == '\r') line.pop_back();
  ++line_number_;
  return true;
}

struct LineWriter::Impl {
  gzFile gz = nullptr;
  std::FILE* plain = nullptr;
};

LineWriter::LineWriter(const std::filesystem::path& path)
    : impl_(std::make_unique<Impl>()), target_(path.string()) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  if (has_gz_suffix(path)) {
    impl_->gz = gzopen(target_.c_str(), "wb");
  } else {
    impl_->plain = std::fopen(target_.c_str(), "wb");
  }
  if (impl_->gz == nullptr && impl_->plain == nullptr) {
    throw InputError("cannot open " + target_ + " for writing: " + std::strerror(errno));
  }
}

LineWriter::~LineWriter() {
  if (!impl_) return;
  try {
    close();
  } catch (const std::exception& e) {
    logger().error("{}", e.what());
  }
}

LineWriter::LineWriter(LineWriter&&) noexcept = default;
LineWriter& LineWriter::operator=(LineWriter&&) noexcept = default;

void LineWriter::write(std::string_view text) {
  if (text.empty()) return;
  if (impl_->gz) {
    if (gzwrite(impl_->gz, text.data(), static_cast<unsigned>(text.size())) !=
        static_cast<int>(text.size())) {
      throw std::runtime_error("write error on " + target_);
    }
  } else if (impl_->plain) {
    if (std::fwrite(text.data(), 1, text.size(), impl_->plain) != text.size()) {
      throw std::runtime_error("write error on " + target_);
    }
  } else {
    throw std::logic_error("write after close on " + target_);
  }
}

void LineWriter::write_line(std::string_view line) {
  write(line);
  write("\n");
}

void LineWriter::close() {
  int rc = 0;
  if (impl_->gz) {
    rc = gzclose(impl_->gz) == Z_OK ? 0 : -1;
    impl_->gz = nullptr;
  } else if (impl_->plain) {
    rc = std::fclose(impl_->plain);
    impl_->plain = nullptr;
  }
  if (rc != 0) throw std::runtime_error("error closing " + target_);
}

void write_text_file(const std::filesystem::path& path, std::string_view contents) {
  LineWriter out(path);
  out.write(contents);
  out.close();
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lsi
