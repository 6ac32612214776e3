#include "ordexp/csv.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ordexp {

CsvWriter::CsvWriter(std::string path) : path_(std::move(path)) {}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) buf_ += ',';
    const std::string& f = fields[i];
    if (f.find_first_of(",\"\n\r") != std::string::npos) {
      buf_ += '"';
      for (char c : f) {
        if (c == '"') buf_ += '"';
        buf_ += c;
      }
      buf_ += '"';
    } else {
      buf_ += f;
    }
  }
  buf_ += '\n';
}

std::string CsvWriter::take() { return buf_; }

void CsvWriter::close() {
  if (closed_) return;
  closed_ = true;
  std::ofstream out(path_, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path_);
  out.write(buf_.data(), std::streamsize(buf_.size()));
  if (!out) throw std::runtime_error("write failed: " + path_);
}

CsvWriter::~CsvWriter() {
  try {
    close();
  } catch (...) {
    // destructor swallow; call close() explicitly for error reporting
  }
}

std::string format_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_display(double v) {
  const double r = std::copysign(std::floor(std::fabs(v) * 100.0 + 0.5) / 100.0, v);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", r);
  return buf;
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9E3779B97F4A7C15ull * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

void write_manifest(const std::string& path, const RunManifest& m) {
  std::string buf;
  char line[256];
  buf += "tool_version: " + m.tool_version + "\n";
  std::snprintf(line, sizeof line, "config_hash: %016llx\n",
                (unsigned long long)m.config_hash);
  buf += line;
  std::snprintf(line, sizeof line, "master_seed: %llu\n",
                (unsigned long long)m.master_seed);
  buf += line;
  std::snprintf(line, sizeof line, "reps: %lld\n", (long long)m.reps);
  buf += line;
  for (const auto& [label, p] : m.outputs) buf += "output." + label + ": " + p + "\n";
  for (const auto& note : m.notes) buf += "note: " + note + "\n";
  std::snprintf(line, sizeof line, "duration_ms: %lld\n", (long long)m.duration_ms);
  buf += line;

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open manifest file: " + path);
  out.write(buf.data(), std::streamsize(buf.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace ordexp
