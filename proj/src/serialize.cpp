#include "paley/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace paley {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// JSON has no infinity; store it as the string "inf".
Json real_or_inf(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double read_real(const Json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  return j.get<double>();
}

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

template <class T>
std::optional<T> read_optional(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

Json to_json(const RipReport& r) {
  return Json{{"p", r.p},
              {"K", r.k},
              {"delta", r.delta},
              {"witness_support", r.witness_support},
              {"mode", to_string(r.mode)},
              {"enumerated_count", r.enumerated_count},
              {"rng_seed", r.rng_seed},
              {"lower_bound_only", r.lower_bound_only}};
}

Json to_json(const FlatRipReport& r) {
  return Json{{"p", r.p},
              {"K", r.k},
              {"theta", r.theta},
              {"witness_I", r.witness_i},
              {"witness_J", r.witness_j},
              {"mode", to_string(r.mode)},
              {"enumerated_count", r.enumerated_count},
              {"rng_seed", r.rng_seed},
              {"lower_bound_only", r.lower_bound_only}};
}

Json to_json(const PgcScanReport& r) {
  return Json{{"p", r.p},
              {"alpha", r.alpha},
              {"mode", to_string(r.mode)},
              {"pairing", to_string(r.pairing)},
              {"sample_count", r.sample_count},
              {"adversarial_count", r.adversarial_count},
              {"min_size", r.min_size},
              {"worst_numerator", r.worst.numerator},
              {"worst_denominator", r.worst.denominator},
              {"worst_ratio", r.worst_ratio},
              {"worst_pair_witness", {{"S", r.worst_pair_witness.s}, {"T", r.worst_pair_witness.t}}},
              {"implied_beta", real_or_inf(r.implied_beta)},
              {"rng_seed", r.rng_seed}};
}

Json to_json(const BoundsLedger& l) {
  return Json{{"p", l.p},
              {"tabib_bound", l.tabib_bound},
              {"hp_clique_bound", optional_json(l.hp_clique_bound)},
              {"appendix_bound", optional_json(l.appendix_bound)},
              {"measured_extremal", optional_json(l.measured_extremal)},
              {"measured_kind", to_string(l.measured_kind)},
              {"witness", l.witness},
              {"bound_certified", optional_json(l.bound_certified)},
              {"violation", l.violation}};
}

Json to_json(const CliqueResult& r, bool exact) {
  return Json{{"size", r.size}, {"witness", r.witness}, {"exact", exact}, {"nodes", r.nodes}};
}

Json to_json(const TransitiveResult& r, bool exact) {
  return Json{{"size", r.size()}, {"witness", r.witness.vertices}, {"exact", exact}, {"nodes", r.nodes}};
}

RipReport rip_report_from_json(const Json& j) {
  RipReport r;
  r.p = j.at("p").get<std::uint64_t>();
  r.k = j.at("K").get<std::size_t>();
  r.delta = j.at("delta").get<double>();
  r.witness_support = j.at("witness_support").get<std::vector<std::size_t>>();
  r.mode = parse_search_mode(j.at("mode").get<std::string>());
  r.enumerated_count = j.at("enumerated_count").get<std::uint64_t>();
  r.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  r.lower_bound_only = j.value("lower_bound_only", false);
  return r;
}

FlatRipReport flat_rip_report_from_json(const Json& j) {
  FlatRipReport r;
  r.p = j.at("p").get<std::uint64_t>();
  r.k = j.at("K").get<std::size_t>();
  r.theta = j.at("theta").get<double>();
  r.witness_i = j.at("witness_I").get<std::vector<std::size_t>>();
  r.witness_j = j.at("witness_J").get<std::vector<std::size_t>>();
  r.mode = parse_search_mode(j.at("mode").get<std::string>());
  r.enumerated_count = j.at("enumerated_count").get<std::uint64_t>();
  r.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  r.lower_bound_only = j.value("lower_bound_only", false);
  return r;
}

PgcScanReport pgc_report_from_json(const Json& j) {
  PgcScanReport r;
  r.p = j.at("p").get<std::uint64_t>();
  r.alpha = j.at("alpha").get<double>();
  r.mode = parse_search_mode(j.at("mode").get<std::string>());
  r.pairing = parse_pairing(j.at("pairing").get<std::string>());
  r.sample_count = j.at("sample_count").get<std::uint64_t>();
  r.adversarial_count = j.at("adversarial_count").get<std::uint64_t>();
  r.min_size = j.at("min_size").get<std::size_t>();
  r.worst = {j.at("worst_numerator").get<std::int64_t>(), j.at("worst_denominator").get<std::int64_t>()};
  r.worst_ratio = j.at("worst_ratio").get<double>();
  r.worst_pair_witness.s = j.at("worst_pair_witness").at("S").get<std::vector<Residue>>();
  r.worst_pair_witness.t = j.at("worst_pair_witness").at("T").get<std::vector<Residue>>();
  r.implied_beta = read_real(j.at("implied_beta"));
  r.rng_seed = j.at("rng_seed").get<std::uint64_t>();
  return r;
}

BoundsLedger bounds_ledger_from_json(const Json& j) {
  BoundsLedger l;
  l.p = j.at("p").get<std::uint64_t>();
  l.tabib_bound = j.at("tabib_bound").get<double>();
  l.hp_clique_bound = read_optional<double>(j, "hp_clique_bound");
  l.appendix_bound = read_optional<double>(j, "appendix_bound");
  l.measured_extremal = read_optional<std::size_t>(j, "measured_extremal");
  const auto kind = j.at("measured_kind").get<std::string>();
  l.measured_kind = kind == "exact" ? MeasuredKind::exact
                                    : (kind == "lower_bound" ? MeasuredKind::lower_bound : MeasuredKind::none);
  l.witness = j.at("witness").get<std::vector<Residue>>();
  l.bound_certified = read_optional<bool>(j, "bound_certified");
  l.violation = j.at("violation").get<bool>();
  return l;
}

}  // namespace paley
