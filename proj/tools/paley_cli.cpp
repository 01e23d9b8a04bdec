// Command-line front end: single computations, prime-range scans and cache export.

#include <CLI11.hpp>

#include <clocale>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "paley/errors.hpp"
#include "paley/paley.hpp"
#include "paley/scan.hpp"
#include "paley/store.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kNumerical = 2, kViolation = 3 };

struct RangeArgs {
  std::uint64_t p = 0;
  std::vector<std::uint64_t> range;  // lo hi
  std::string residue_class = "both";
};

void add_range(CLI::App* cmd, RangeArgs& args) {
  cmd->add_option("--p", args.p, "Single odd prime");
  cmd->add_option("--p-range", args.range, "Inclusive prime range LO HI")->expected(2);
  cmd->add_option("--class", args.residue_class, "Restrict to p = 1 or 3 mod 4 (1|3|both)");
}

paley::PrimeFilter to_filter(const RangeArgs& args) {
  paley::PrimeFilter f;
  f.residue_class = paley::parse_congruence(args.residue_class);
  if (!args.range.empty()) {
    f.lo = args.range[0];
    f.hi = args.range[1];
  } else if (args.p != 0) {
    if (!paley::is_prime(args.p) || args.p == 2) throw paley::input_error("--p must be an odd prime");
    f.lo = f.hi = args.p;
  } else {
    throw paley::input_error("one of --p or --p-range is required");
  }
  return f;
}

int summary_exit(const paley::ScanSummary& s) {
  if (s.violations) return kViolation;
  if (s.numerical_failures) return kNumerical;
  return kOk;
}

void print_record(const paley::ScanRecord& r) {
  std::cout << paley::to_json(r).dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  std::setlocale(LC_ALL, "C");

  CLI::App app{"Paley matrix, graph and tournament verification toolkit"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  unsigned workers = 1;
  std::string cache_path;
  std::uint64_t budget = paley::kDefaultBudget;
  app.add_option("--seed", seed, "Global 64-bit seed (required for sampled modes)");
  app.add_option("--workers", workers, "Worker threads")->check(CLI::Range(1U, 1024U));
  app.add_option("--cache", cache_path, "JSONL cache (default $PALEY_CACHE or paley_cache.jsonl)");
  app.add_option("--budget", budget, "Exhaustive enumeration cap");

  paley::CommandParams params;
  std::string mode = "exhaustive";
  std::string pairing = "independent";
  bool bounds_only = false;
  std::optional<double> tau;

  auto add_search_flags = [&](CLI::App* cmd) {
    cmd->add_option("--mode", mode, "exhaustive|sampled");
    cmd->add_option("--samples", params.samples, "Draws in sampled mode");
    cmd->add_option("--out", cache_path, "JSONL cache to append to");
  };
  auto add_extremal_flags = [&](CLI::App* cmd) {
    auto* exact = cmd->add_flag("--exact", params.exact, "Exact search (default)");
    cmd->add_flag("--bounds-only", bounds_only, "Report the bound ledger without an exact search")
        ->excludes(exact);
    cmd->add_option("--out", cache_path, "JSONL cache to append to");
  };

  // construct
  RangeArgs construct_args;
  std::string kind = "matrix";
  std::string construct_out;
  auto* construct = app.add_subcommand("construct", "Build a Paley matrix, graph or tournament");
  construct->add_option("--p", construct_args.p, "Odd prime")->required();
  construct->add_option("--kind", kind, "matrix|graph|tournament");
  construct->add_option("--out", construct_out,
                        "Output prefix (matrix: PREFIX.csv and PREFIX.json; others: PREFIX.json)")
      ->required();

  RangeArgs rip_args, flat_args, coh_args, cs_args, clique_args, trans_args, bounds_args;
  auto* rip = app.add_subcommand("rip", "Restricted isometry constant delta_K");
  add_range(rip, rip_args);
  rip->add_option("--K", params.k, "Sparsity level");
  rip->add_option("--tau", tau, "Use K = ceil(p^(tau + beta0)) per prime");
  rip->add_option("--beta0", params.beta0, "Offset added to tau");
  add_search_flags(rip);

  auto* flat = app.add_subcommand("flat-rip", "Flat RIP constant theta_K");
  add_range(flat, flat_args);
  flat->add_option("--K", params.k, "Sparsity level");
  flat->add_option("--tau", tau, "Use K = ceil(p^(tau + beta0)) per prime");
  flat->add_option("--beta0", params.beta0, "Offset added to tau");
  add_search_flags(flat);

  auto* coh = app.add_subcommand("coherence", "Coherence of the Paley matrix against the Welch bound");
  add_range(coh, coh_args);
  coh->add_option("--out", cache_path, "JSONL cache to append to");

  auto* cs = app.add_subcommand("charsum-scan", "Worst double character sum ratio over large pairs");
  add_range(cs, cs_args);
  cs->add_option("--alpha", params.alpha, "Size threshold exponent");
  cs->add_option("--pairing", pairing, "independent|diagonal");
  add_search_flags(cs);

  auto* clique = app.add_subcommand("clique", "Clique number of the Paley graph");
  add_range(clique, clique_args);
  add_extremal_flags(clique);

  auto* trans = app.add_subcommand("transitive", "Largest transitive subtournament of the Paley tournament");
  add_range(trans, trans_args);
  add_extremal_flags(trans);

  auto* bounds = app.add_subcommand("bounds", "Bound ledger with measured extremal sizes");
  add_range(bounds, bounds_args);
  bounds->add_option("--exact-limit", params.exact_limit, "Exact search below this prime");
  add_extremal_flags(bounds);

  // scan
  RangeArgs scan_args;
  std::vector<std::string> scan_cmds;
  auto* scan = app.add_subcommand("scan", "Run commands over a prime range into the cache");
  add_range(scan, scan_args);
  scan->add_option("--commands", scan_cmds, "Commands to run")->required()->delimiter(',');
  scan->add_option("--K", params.k, "Sparsity level for rip/flat-rip");
  scan->add_option("--tau", tau, "Use K = ceil(p^(tau + beta0)) per prime");
  scan->add_option("--beta0", params.beta0, "Offset added to tau");
  scan->add_option("--alpha", params.alpha, "Size exponent for charsum-scan");
  scan->add_option("--pairing", pairing, "independent|diagonal");
  scan->add_option("--exact-limit", params.exact_limit, "Exact extremal search below this prime");
  add_search_flags(scan);
  scan->add_flag("--bounds-only", bounds_only, "Skip exact extremal searches");

  // export
  std::string format = "csv";
  std::string export_out;
  std::optional<std::string> filter_command;
  std::optional<std::uint64_t> p_min, p_max;
  bool omit_timing = false;
  auto* exp = app.add_subcommand("export", "Export the cache as CSV or JSON");
  exp->add_option("--format", format, "csv|json");
  exp->add_option("--command", filter_command, "Keep only this command");
  exp->add_option("--p-min", p_min, "Smallest p kept");
  exp->add_option("--p-max", p_max, "Largest p kept");
  exp->add_flag("--omit-timing", omit_timing, "Drop timestamp and runtime_ms");
  exp->add_option("--out", export_out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    params.seed = seed;
    params.budget = budget;
    params.mode = paley::parse_search_mode(mode);
    params.pairing = paley::parse_pairing(pairing);
    params.tau = tau;
    if (bounds_only) params.exact = false;
    const std::filesystem::path cache = cache_path.empty() ? paley::default_cache_path() : std::filesystem::path(cache_path);

    if (construct->parsed()) {
      const paley::PrimeField field(construct_args.p);
      if (kind == "matrix") {
        const auto m = paley::build_paley_matrix(field);
        std::ofstream csv(construct_out + ".csv"), json(construct_out + ".json");
        if (!csv || !json) throw paley::input_error("cannot write " + construct_out);
        paley::write_matrix_csv(csv, m);
        paley::write_matrix_header_json(json, m);
      } else if (kind == "graph" || kind == "tournament") {
        std::ofstream json(construct_out + ".json");
        if (!json) throw paley::input_error("cannot write " + construct_out);
        if (kind == "graph")
          paley::write_edges_json(json, paley::build_paley_graph(field).edges());
        else
          paley::write_edges_json(json, paley::build_paley_tournament(field).arcs());
      } else {
        throw paley::input_error("unknown --kind '" + kind + "'");
      }
      return kOk;
    }

    if (exp->parsed()) {
      paley::ExportOptions opts;
      opts.format = paley::parse_export_format(format);
      opts.filter.command = filter_command;
      opts.filter.p_min = p_min;
      opts.filter.p_max = p_max;
      opts.omit_timing = omit_timing;
      paley::ExportSummary s;
      if (export_out.empty()) {
        s = paley::export_cache(cache, opts, std::cout);
      } else {
        std::ofstream out(export_out, std::ios::binary);
        if (!out) throw paley::input_error("cannot write " + export_out);
        s = paley::export_cache(cache, opts, out);
      }
      for (const auto& c : s.corrupt)
        std::cerr << "warning: skipped corrupt record at line " << c.line << ": " << c.error << '\n';
      return kOk;
    }

    paley::ScanConfig config;
    config.params = params;
    config.workers = workers;
    config.output = cache;
    const RangeArgs* range = nullptr;
    if (scan->parsed()) {
      range = &scan_args;
      config.commands = scan_cmds;
    } else {
      const std::pair<CLI::App*, const RangeArgs*> single[] = {
          {rip, &rip_args},     {flat, &flat_args},   {coh, &coh_args},        {cs, &cs_args},
          {clique, &clique_args}, {trans, &trans_args}, {bounds, &bounds_args}};
      for (const auto& [cmd, args] : single) {
        if (!cmd->parsed()) continue;
        range = args;
        // --bounds-only on an extremal command reports the ledger instead.
        const bool to_ledger = bounds_only && (cmd == clique || cmd == trans);
        config.commands = {to_ledger ? std::string("bounds") : cmd->get_name()};
      }
    }
    config.primes = to_filter(*range);
    const auto summary = paley::run_scan(config, print_record);
    std::cerr << "appended " << summary.appended << ", skipped " << summary.skipped << " cached, "
              << summary.failed << " failed\n";
    return summary_exit(summary);
  } catch (const paley::numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const paley::certificate_error& e) {
    std::cerr << "certificate failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
}
