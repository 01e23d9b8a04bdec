#include "paley/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstdlib>
#include <cstring>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "paley/errors.hpp"

namespace paley {

std::string ScanRecord::key() const { return command + '|' + std::to_string(p) + '|' + params.dump(); }

Json to_json(const ScanRecord& r) {
  Json j{{"schema_version", r.schema_version},
         {"timestamp", r.timestamp},
         {"command", r.command},
         {"p", r.p},
         {"params", r.params},
         {"result", r.result},
         {"runtime_ms", r.runtime_ms},
         {"status", r.failed ? "failed" : "ok"}};
  if (r.failed) j["error"] = r.error;
  return j;
}

ScanRecord record_from_json(const Json& j) {
  ScanRecord r;
  r.schema_version = j.at("schema_version").get<int>();
  if (r.schema_version != kSchemaVersion)
    throw input_error("unsupported schema_version " + std::to_string(r.schema_version));
  r.timestamp = j.at("timestamp").get<std::string>();
  r.command = j.at("command").get<std::string>();
  r.p = j.at("p").get<std::uint64_t>();
  r.params = j.at("params");
  r.result = j.at("result");
  r.runtime_ms = j.at("runtime_ms").get<std::int64_t>();
  r.failed = j.value("status", std::string("ok")) == "failed";
  if (r.failed) r.error = j.value("error", std::string());
  return r;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::filesystem::path default_cache_path() {
  if (const char* env = std::getenv("PALEY_CACHE"); env && *env) return env;
  return "paley_cache.jsonl";
}

namespace {

std::string errno_text() { return std::strerror(errno); }

// Parses complete lines of `text` (which ends at a '\n' boundary).
void parse_lines(const std::string& text, std::vector<ScanRecord>& records,
                 std::vector<CorruptLine>& corrupt) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto end = text.find('\n', pos);
    const std::string line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;
    try {
      records.push_back(record_from_json(Json::parse(line)));
    } catch (const std::exception& e) {
      corrupt.push_back({line_no, e.what()});
    }
  }
}

std::string read_all(int fd) {
  std::string out;
  char buf[1 << 16];
  if (lseek(fd, 0, SEEK_SET) < 0) throw input_error("cannot seek cache: " + errno_text());
  for (;;) {
    const ssize_t n = ::read(fd, buf, sizeof buf);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw input_error("cannot read cache: " + errno_text());
    }
    if (n == 0) break;
    out.append(buf, static_cast<std::size_t>(n));
  }
  return out;
}

void write_all(int fd, const std::string& data) {
  std::size_t done = 0;
  while (done < data.size()) {
    const ssize_t n = ::write(fd, data.data() + done, data.size() - done);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw input_error("cannot write cache: " + errno_text());
    }
    done += static_cast<std::size_t>(n);
  }
}

}  // namespace

CacheContents read_cache(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open cache " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  CacheContents out;
  if (!text.empty() && text.back() != '\n') {
    out.truncated_tail = true;
    const auto cut = text.rfind('\n');
    text.resize(cut == std::string::npos ? 0 : cut + 1);
  }
  parse_lines(text, out.records, out.corrupt);
  return out;
}

ResultCache::ResultCache(std::filesystem::path path) : path_(std::move(path)) {
  fd_ = ::open(path_.c_str(), O_RDWR | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) throw input_error("cannot open cache " + path_.string() + ": " + errno_text());
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    throw input_error("cache " + path_.string() + " is locked by another process");
  }
  std::string text = read_all(fd_);
  if (!text.empty() && text.back() != '\n') {
    const auto cut = text.rfind('\n');
    const std::size_t keep = cut == std::string::npos ? 0 : cut + 1;
    std::ofstream q(path_.string() + ".quarantine", std::ios::app | std::ios::binary);
    q << text.substr(keep) << '\n';
    if (!q) throw input_error("cannot write quarantine file for " + path_.string());
    if (::ftruncate(fd_, static_cast<off_t>(keep)) != 0)
      throw input_error("cannot truncate cache: " + errno_text());
    text.resize(keep);
    quarantined_ = true;
  }
  parse_lines(text, records_, corrupt_);
  for (const auto& r : records_) keys_.push_back(r.key());
  std::sort(keys_.begin(), keys_.end());
}

ResultCache::~ResultCache() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

bool ResultCache::contains(const std::string& key) const {
  return std::binary_search(keys_.begin(), keys_.end(), key);
}

void ResultCache::append(const ScanRecord& record) {
  write_all(fd_, to_json(record).dump() + '\n');
  ::fsync(fd_);
  records_.push_back(record);
  const auto key = record.key();
  keys_.insert(std::upper_bound(keys_.begin(), keys_.end(), key), key);
}

ExportFormat parse_export_format(const std::string& text) {
  if (text == "csv") return ExportFormat::csv;
  if (text == "json") return ExportFormat::json;
  throw input_error("unknown export format '" + text + "'");
}

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ';';
      out += csv_cell(v[i]);
    }
    return out;
  }
  return v.dump();
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

struct Column {
  const char* header;
  const char* field;  // key inside result
};

const std::vector<Column>* columns_for(const std::string& command) {
  static const std::vector<Column> bounds{{"tabib", "tabib_bound"},
                                          {"hp", "hp_clique_bound"},
                                          {"appendix", "appendix_bound"},
                                          {"measured", "measured_extremal"},
                                          {"witness", "witness"}};
  static const std::vector<Column> rip{{"K", "K"},
                                       {"delta", "delta"},
                                       {"witness_support", "witness_support"},
                                       {"mode", "mode"},
                                       {"enumerated_count", "enumerated_count"},
                                       {"rng_seed", "rng_seed"}};
  static const std::vector<Column> flat{{"K", "K"},
                                        {"theta", "theta"},
                                        {"witness_I", "witness_I"},
                                        {"witness_J", "witness_J"},
                                        {"mode", "mode"},
                                        {"enumerated_count", "enumerated_count"},
                                        {"rng_seed", "rng_seed"}};
  static const std::vector<Column> charsum{{"alpha", "alpha"},
                                           {"mode", "mode"},
                                           {"pairing", "pairing"},
                                           {"sample_count", "sample_count"},
                                           {"worst_ratio", "worst_ratio"},
                                           {"implied_beta", "implied_beta"},
                                           {"witness_S", nullptr},
                                           {"witness_T", nullptr},
                                           {"rng_seed", "rng_seed"}};
  static const std::vector<Column> extremal{
      {"size", "size"}, {"exact", "exact"}, {"witness", "witness"}};
  static const std::vector<Column> coherence{{"coherence", "coherence"}, {"welch", "welch_bound"}};
  if (command == "bounds") return &bounds;
  if (command == "rip") return &rip;
  if (command == "flat-rip") return &flat;
  if (command == "charsum-scan") return &charsum;
  if (command == "clique" || command == "transitive") return &extremal;
  if (command == "coherence") return &coherence;
  return nullptr;
}

Json column_value(const ScanRecord& r, const Column& c) {
  if (c.field) return r.result.contains(c.field) ? r.result.at(c.field) : Json(nullptr);
  const auto& w = r.result.at("worst_pair_witness");
  return std::string(c.header) == "witness_S" ? w.at("S") : w.at("T");
}

}  // namespace

ExportSummary export_cache(const std::filesystem::path& cache, const ExportOptions& options,
                           std::ostream& out) {
  if (!std::filesystem::exists(cache)) throw input_error("cache " + cache.string() + " does not exist");
  CacheContents contents = read_cache(cache);
  ExportSummary summary;
  summary.corrupt = contents.corrupt;
  if (contents.truncated_tail) summary.corrupt.push_back({0, "truncated final line"});

  const auto& f = options.filter;
  std::vector<const ScanRecord*> rows;
  for (const auto& r : contents.records) {
    if (f.command && r.command != *f.command) continue;
    if (f.p_min && r.p < *f.p_min) continue;
    if (f.p_max && r.p > *f.p_max) continue;
    if (options.format == ExportFormat::csv && r.failed) continue;
    rows.push_back(&r);
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ScanRecord* a, const ScanRecord* b) {
    return a->command != b->command ? a->command < b->command : a->p < b->p;
  });
  summary.rows = rows.size();

  if (options.format == ExportFormat::json) {
    Json arr = Json::array();
    for (const auto* r : rows) {
      Json j = to_json(*r);
      if (options.omit_timing) {
        j.erase("timestamp");
        j.erase("runtime_ms");
      }
      arr.push_back(std::move(j));
    }
    out << arr.dump(2) << '\n';
    return summary;
  }

  // One typed layout when a single command is selected, a generic one otherwise.
  std::optional<std::string> command = f.command;
  if (!command && !rows.empty() &&
      std::all_of(rows.begin(), rows.end(), [&](const ScanRecord* r) { return r->command == rows[0]->command; }))
    command = rows[0]->command;
  const auto* cols = command ? columns_for(*command) : nullptr;

  std::vector<std::string> header;
  if (cols) {
    header.push_back("p");
    for (const auto& c : *cols) header.push_back(c.header);
  } else {
    header = {"command", "p", "params", "result"};
  }
  if (!options.omit_timing) header.push_back("runtime_ms");
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';

  for (const auto* r : rows) {
    std::vector<std::string> cells;
    if (cols) {
      cells.push_back(std::to_string(r->p));
      for (const auto& c : *cols) cells.push_back(csv_cell(column_value(*r, c)));
    } else {
      cells = {r->command, std::to_string(r->p), r->params.dump(), r->result.dump()};
    }
    if (!options.omit_timing) cells.push_back(std::to_string(r->runtime_ms));
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << csv_quote(cells[i]);
    out << '\n';
  }
  return summary;
}

}  // namespace paley
