#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace corpkit {

// --- logging ------------------------------------------------------------

enum class LogLevel { error = 0, warn = 1, info = 2, debug = 3 };

void set_log_level(LogLevel level);
LogLevel log_level();
std::optional<LogLevel> parse_log_level(std::string_view name);

void log(LogLevel level, std::string_view msg);
void log_error(std::string_view msg);
void log_warn(std::string_view msg);
void log_info(std::string_view msg);
void log_debug(std::string_view msg);

// --- number / field formatting -------------------------------------------

// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);
// Fixed-point with the given number of decimals.
std::string format_fixed(double v, int decimals);

// Quotes a CSV field when it contains separators, quotes or newlines.
std::string csv_field(std::string_view field);

// --- files ----------------------------------------------------------------

// Reads a whole file; throws Error naming the path on failure.
std::string read_file(const std::filesystem::path& path);

// Writes to "<final>.tmp.<pid>.<n>" in the same directory and renames into
// place on commit(). The destructor removes the temp file when commit() was
// never reached, so aborted runs leave nothing at the final path.
class AtomicFile {
 public:
  explicit AtomicFile(std::filesystem::path final_path);
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;
  ~AtomicFile();

  std::ofstream& stream() { return out_; }
  const std::filesystem::path& path() const { return final_; }
  void commit();

 private:
  std::filesystem::path final_;
  std::filesystem::path temp_;
  std::ofstream out_;
  bool committed_ = false;
};

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content);

// 64-bit content digest rendered as 16 hex digits, used to log config
// identity for reproducibility.
std::string content_digest(std::string_view content);

// ASCII whitespace trim.
std::string_view trim(std::string_view s);

// Runs fn(i) for i in [0, n); with threads > 1 the index range is split in
// contiguous chunks across that many workers. fn must be safe to call
// concurrently for distinct i.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

}  // namespace corpkit
