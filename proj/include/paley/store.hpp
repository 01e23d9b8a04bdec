#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "paley/serialize.hpp"

namespace paley {

inline constexpr int kSchemaVersion = 1;

struct ScanRecord {
  int schema_version = kSchemaVersion;
  std::string timestamp;  // UTC ISO-8601
  std::string command;
  std::uint64_t p = 0;
  Json params = Json::object();
  Json result = Json::object();
  std::int64_t runtime_ms = 0;
  // Failed records keep the error text and an empty result.
  bool failed = false;
  std::string error;

  // Idempotence key: command, p and the canonical params dump (params carry the seed).
  std::string key() const;
};

Json to_json(const ScanRecord& record);
ScanRecord record_from_json(const Json& j);

std::string utc_timestamp();

// PALEY_CACHE when set, otherwise "paley_cache.jsonl".
std::filesystem::path default_cache_path();

struct CorruptLine {
  std::size_t line = 0;  // 1-based
  std::string error;
};

struct CacheContents {
  std::vector<ScanRecord> records;
  std::vector<CorruptLine> corrupt;
  bool truncated_tail = false;
};

// Read-only parse. A final line without '\n' is reported as truncated, not loaded.
CacheContents read_cache(const std::filesystem::path& path);

// Exclusive owner of a JSONL cache file for the lifetime of the object.
// Opening takes a non-blocking flock and moves a truncated final line to
// "<path>.quarantine".
class ResultCache {
 public:
  explicit ResultCache(std::filesystem::path path);
  ~ResultCache();
  ResultCache(const ResultCache&) = delete;
  ResultCache& operator=(const ResultCache&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }
  const std::vector<ScanRecord>& records() const noexcept { return records_; }
  const std::vector<CorruptLine>& corrupt() const noexcept { return corrupt_; }
  bool quarantined() const noexcept { return quarantined_; }
  bool contains(const std::string& key) const;

  // One write(2) per record, flushed to disk before returning.
  void append(const ScanRecord& record);

 private:
  std::filesystem::path path_;
  int fd_ = -1;
  std::vector<ScanRecord> records_;
  std::vector<CorruptLine> corrupt_;
  std::vector<std::string> keys_;  // sorted
  bool quarantined_ = false;
};

enum class ExportFormat { csv, json };
ExportFormat parse_export_format(const std::string& text);

struct ExportFilter {
  std::optional<std::string> command;
  std::optional<std::uint64_t> p_min;
  std::optional<std::uint64_t> p_max;
};

struct ExportOptions {
  ExportFormat format = ExportFormat::csv;
  ExportFilter filter;
  // Drop timestamp and runtime_ms so exports of identical runs compare equal.
  bool omit_timing = false;
};

struct ExportSummary {
  std::size_t rows = 0;
  std::vector<CorruptLine> corrupt;
};

// Rows sorted by (command, p); stable for equal keys. CSV skips failed records,
// JSON keeps them.
ExportSummary export_cache(const std::filesystem::path& cache, const ExportOptions& options,
                           std::ostream& out);

}  // namespace paley
