#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ordexp {

// Minimal RFC-4180 writer: fields are quoted only when they contain a comma,
// quote, or newline.
class CsvWriter {
 public:
  explicit CsvWriter(std::string path);
  void row(const std::vector<std::string>& fields);
  const std::string& path() const { return path_; }
  std::string take();  // rendered bytes (also written on close)
  void close();        // throws std::runtime_error on I/O failure
  ~CsvWriter();

 private:
  std::string path_;
  std::string buf_;
  bool closed_ = false;
};

std::string format_full(double v);     // round-trip precision
std::string format_display(double v);  // 2 decimals, half away from zero

std::uint64_t fnv1a64(const std::string& s);
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);

struct RunManifest {
  std::string tool_version;
  std::uint64_t config_hash = 0;
  std::uint64_t master_seed = 0;
  std::int64_t reps = 0;
  std::vector<std::pair<std::string, std::string>> outputs;  // label -> path
  std::vector<std::string> notes;
  std::int64_t duration_ms = 0;
};

void write_manifest(const std::string& path, const RunManifest& manifest);

}  // namespace ordexp
