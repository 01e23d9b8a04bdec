#include "paley/scan.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "paley/errors.hpp"
#include "paley/ff_core.hpp"
#include "paley/paley.hpp"
#include "paley/rip.hpp"
#include "paley/serialize.hpp"
#include "paley/tournament_analysis.hpp"

namespace paley {

Congruence parse_congruence(const std::string& text) {
  if (text == "1") return Congruence::one;
  if (text == "3") return Congruence::three;
  if (text == "both") return Congruence::both;
  throw input_error("congruence class must be 1, 3 or both, got '" + text + "'");
}

std::vector<std::uint64_t> PrimeFilter::primes() const {
  if (lo > hi) throw input_error("empty prime range");
  std::vector<std::uint64_t> out;
  for (auto p : primes_in_range(std::max<std::uint64_t>(lo, 3), hi)) {
    if (residue_class == Congruence::one && p % 4 != 1) continue;
    if (residue_class == Congruence::three && p % 4 != 3) continue;
    out.push_back(p);
  }
  return out;
}

bool command_applies(const std::string& command, std::uint64_t p) {
  if (command == "clique") return p % 4 == 1;
  if (command == "transitive") return p % 4 == 3;
  return true;
}

namespace {

bool uses_sampling(const std::string& command) {
  return command == "rip" || command == "flat-rip" || command == "charsum-scan";
}

std::size_t effective_k(const CommandParams& params, std::uint64_t p) {
  if (!params.tau) return params.k;
  return static_cast<std::size_t>(
      std::ceil(std::pow(static_cast<double>(p), *params.tau + params.beta0) - 1e-12));
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Json clique_payload(const PrimeField& field, const CommandParams& params) {
  const Graph g = build_paley_graph(field);
  CliqueResult r;
  if (params.exact) {
    r = max_clique(g);
  } else {
    r.witness = greedy_clique(g);
    r.size = r.witness.size();
  }
  if (!is_clique(g, r.witness)) throw certificate_error("clique witness failed adjacency check");
  Json j = to_json(r, params.exact);
  const double bound = hp_clique_bound(field.p());
  j["bound"] = bound;
  j["violation"] = r.size > bound_floor(bound);
  return j;
}

Json transitive_payload(const PrimeField& field, const CommandParams& params) {
  const Tournament t = build_paley_tournament(field);
  TransitiveResult r;
  if (params.exact) {
    r = max_transitive(t);
  } else {
    r.witness = greedy_transitive(t);
  }
  if (!is_transitive_order(t, r.witness.vertices))
    throw certificate_error("transitive witness failed order check");
  Json j = to_json(r, params.exact);
  const double bound = std::min(tabib_bound(field.p()), appendix_bound(field.p()));
  j["bound"] = bound;
  j["violation"] = r.size() > bound_floor(bound);
  return j;
}

Json compute_payload(const std::string& command, std::uint64_t p, const CommandParams& params,
                     std::uint64_t seed, unsigned workers) {
  const PrimeField field(p);
  if (command == "coherence") {
    const PaleyMatrix m = build_paley_matrix(field);
    return Json{{"coherence", coherence(m)},
                {"welch_bound", welch_bound(m.rows(), m.cols())},
                {"rows", m.rows()},
                {"cols", m.cols()}};
  }
  if (command == "rip" || command == "flat-rip") {
    const PaleyMatrix m = build_paley_matrix(field);
    EnumerationOptions opts{params.mode, params.budget, params.samples, seed, workers};
    const std::size_t k = effective_k(params, p);
    return command == "rip" ? to_json(rip_constant_exact(m, k, opts))
                            : to_json(flat_rip_constant_exact(m, k, opts));
  }
  if (command == "charsum-scan") {
    PgcScanOptions opts;
    opts.alpha = params.alpha;
    opts.mode = params.mode;
    opts.budget = params.budget;
    opts.samples = params.samples;
    opts.seed = seed;
    opts.workers = workers;
    opts.pairing = params.pairing;
    return to_json(scan_pgc_property(field, opts));
  }
  if (command == "clique") return clique_payload(field, params);
  if (command == "transitive") return transitive_payload(field, params);
  if (command == "bounds") {
    LedgerOptions opts;
    opts.compute_exact = params.exact;
    opts.exact_limit = params.exact_limit;
    opts.workers = workers;
    return to_json(bounds_ledger(field, opts));
  }
  throw input_error("unknown command '" + command + "'");
}

}  // namespace

Json record_params(const std::string& command, std::uint64_t p, const CommandParams& params) {
  Json j = Json::object();
  if (command == "rip" || command == "flat-rip") {
    j["K"] = effective_k(params, p);
    if (params.tau) {
      j["tau"] = *params.tau;
      j["beta0"] = params.beta0;
    }
  }
  if (command == "charsum-scan") {
    j["alpha"] = params.alpha;
    j["pairing"] = to_string(params.pairing);
  }
  if (uses_sampling(command)) {
    j["mode"] = to_string(params.mode);
    if (params.mode == SearchMode::exhaustive)
      j["budget"] = params.budget;
    else
      j["samples"] = params.samples;
  }
  if (command == "clique" || command == "transitive" || command == "bounds") j["exact"] = params.exact;
  if (command == "bounds") j["exact_limit"] = params.exact_limit;
  j["seed"] = params.seed.value_or(0);
  return j;
}

std::uint64_t derive_seed(std::uint64_t global_seed, const std::string& command, std::uint64_t p,
                          const Json& params) {
  Json stripped = params;
  stripped.erase("seed");
  return mix64(global_seed ^ fnv1a(command + '|' + std::to_string(p) + '|' + stripped.dump()));
}

ScanRecord compute_record(const std::string& command, std::uint64_t p, const CommandParams& params,
                          unsigned workers) {
  ScanRecord rec;
  rec.command = command;
  rec.p = p;
  rec.params = record_params(command, p, params);
  const std::uint64_t seed = derive_seed(params.seed.value_or(0), command, p, rec.params);
  const auto start = std::chrono::steady_clock::now();
  try {
    rec.result = compute_payload(command, p, params, seed, workers);
  } catch (const numerical_error& e) {
    rec.failed = true;
    rec.error = std::string("numerical: ") + e.what();
  } catch (const certificate_error& e) {
    rec.failed = true;
    rec.error = std::string("numerical: ") + e.what();
  } catch (const budget_exceeded& e) {
    rec.failed = true;
    rec.error = std::string("budget: ") + e.what();
  } catch (const std::invalid_argument& e) {
    rec.failed = true;
    rec.error = std::string("input: ") + e.what();
  }
  if (rec.failed) rec.result = Json::object();
  rec.runtime_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - start)
                       .count();
  rec.timestamp = utc_timestamp();
  return rec;
}

bool record_violation(const ScanRecord& record) {
  return !record.failed && record.result.value("violation", false);
}

bool record_numerical_failure(const ScanRecord& record) {
  return record.failed && record.error.rfind("numerical:", 0) == 0;
}

void validate(const ScanConfig& config) {
  if (config.commands.empty()) throw input_error("no commands to scan");
  const auto& known = scan_commands();
  bool sampled = false;
  for (const auto& c : config.commands) {
    if (std::find(known.begin(), known.end(), c) == known.end())
      throw input_error("unknown scan command '" + c + "'");
    sampled = sampled || (uses_sampling(c) && config.params.mode == SearchMode::sampled);
  }
  if (config.primes.lo > config.primes.hi) throw input_error("empty prime range");
  if (sampled && !config.params.seed) throw input_error("--seed is required for sampled mode");
  if (config.output.empty()) throw input_error("no output path");
}

ScanSummary run_scan(const ScanConfig& config, const std::function<void(const ScanRecord&)>& on_record) {
  validate(config);
  ResultCache cache(config.output);
  ScanSummary summary;

  struct Task {
    std::string command;
    std::uint64_t p;
  };
  std::vector<Task> tasks;
  for (auto p : config.primes.primes()) {
    for (const auto& c : config.commands) {
      if (!command_applies(c, p)) continue;
      ScanRecord probe;
      probe.command = c;
      probe.p = p;
      probe.params = record_params(c, p, config.params);
      if (cache.contains(probe.key())) {
        ++summary.skipped;
        continue;
      }
      tasks.push_back({c, p});
    }
  }

  std::vector<std::optional<ScanRecord>> slots(tasks.size());
  std::mutex mutex;
  std::condition_variable ready;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      ScanRecord rec = compute_record(tasks[i].command, tasks[i].p, config.params, 1);
      {
        std::lock_guard lock(mutex);
        slots[i] = std::move(rec);
      }
      ready.notify_all();
    }
  };

  const unsigned worker_count =
      static_cast<unsigned>(std::min<std::size_t>(std::max(1U, config.workers), tasks.size()));
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < worker_count; ++w) pool.emplace_back(work);

  // Single writer: append strictly in task order.
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    ScanRecord rec;
    {
      std::unique_lock lock(mutex);
      ready.wait(lock, [&] { return slots[i].has_value(); });
      rec = std::move(*slots[i]);
      slots[i].reset();
    }
    cache.append(rec);
    ++summary.appended;
    if (rec.failed) ++summary.failed;
    if (record_numerical_failure(rec)) ++summary.numerical_failures;
    if (record_violation(rec)) ++summary.violations;
    if (on_record) on_record(rec);
  }
  return summary;
}

}  // namespace paley
