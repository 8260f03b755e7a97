#include "corpkit/io_util.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#ifdef _WIN32
#include <process.h>
#else
#include <unistd.h>
#endif

#include "corpkit/error.hpp"
#include "corpkit/hash.hpp"

namespace corpkit {

namespace {

std::atomic<LogLevel> g_log_level{LogLevel::info};
std::atomic<unsigned> g_temp_counter{0};

int process_id() {
#ifdef _WIN32
  return _getpid();
#else
  return getpid();
#endif
}

}  // namespace

void set_log_level(LogLevel level) { g_log_level.store(level); }

LogLevel log_level() { return g_log_level.load(); }

std::optional<LogLevel> parse_log_level(std::string_view name) {
  if (name == "error") return LogLevel::error;
  if (name == "warn") return LogLevel::warn;
  if (name == "info") return LogLevel::info;
  if (name == "debug") return LogLevel::debug;
  return std::nullopt;
}

void log(LogLevel level, std::string_view msg) {
  if (level > g_log_level.load()) return;
  static constexpr const char* kNames[] = {"error", "warn", "info", "debug"};
  std::cerr << "corpkit: [" << kNames[static_cast<int>(level)] << "] " << msg
            << '\n';
}

void log_error(std::string_view msg) { log(LogLevel::error, msg); }
void log_warn(std::string_view msg) { log(LogLevel::warn, msg); }
void log_info(std::string_view msg) { log(LogLevel::info, msg); }
void log_debug(std::string_view msg) { log(LogLevel::debug, msg); }

std::string format_double(double v) {
  char buf[64];
  // Integral values print as plain integers; everything else gets the
  // shortest representation that parses back to the same double.
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    std::snprintf(buf, sizeof buf, "%.0f", v);
    return buf;
  }
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos)
    return std::string(field);
  std::string out;
  out.reserve(field.size() + 2);
  out.push_back('"');
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error("read error on file: " + path.string());
  return std::move(buf).str();
}

AtomicFile::AtomicFile(std::filesystem::path final_path)
    : final_(std::move(final_path)) {
  std::filesystem::path dir = final_.parent_path();
  if (!dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
  }
  temp_ = final_;
  temp_ += ".tmp." + std::to_string(process_id()) + "." +
           std::to_string(g_temp_counter.fetch_add(1));
  out_.open(temp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw Error("cannot write file: " + final_.string());
}

AtomicFile::~AtomicFile() {
  if (!committed_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(temp_, ec);
  }
}

void AtomicFile::commit() {
  out_.flush();
  if (!out_) throw Error("write failed: " + final_.string());
  out_.close();
  std::error_code ec;
  std::filesystem::rename(temp_, final_, ec);
  if (ec) {
    std::filesystem::remove(temp_, ec);
    throw Error("cannot move output into place: " + final_.string());
  }
  committed_ = true;
}

void write_file_atomic(const std::filesystem::path& path,
                       std::string_view content) {
  AtomicFile file(path);
  file.stream().write(content.data(),
                      static_cast<std::streamsize>(content.size()));
  file.commit();
}

std::string content_digest(std::string_view content) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(murmur64(content, 0x64c0)));
  return buf;
}

std::string_view trim(std::string_view s) {
  const char* ws = " \t\r\n\f\v";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t workers =
      std::min<std::size_t>(static_cast<std::size_t>(threads), n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace corpkit
