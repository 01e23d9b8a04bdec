#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "paley/charsum.hpp"
#include "paley/rip.hpp"
#include "paley/tournament_analysis.hpp"

namespace paley {

using Json = nlohmann::ordered_json;

Json to_json(const RipReport& report);
Json to_json(const FlatRipReport& report);
Json to_json(const PgcScanReport& report);
Json to_json(const BoundsLedger& ledger);
Json to_json(const CliqueResult& result, bool exact);
Json to_json(const TransitiveResult& result, bool exact);

RipReport rip_report_from_json(const Json& j);
FlatRipReport flat_rip_report_from_json(const Json& j);
PgcScanReport pgc_report_from_json(const Json& j);
BoundsLedger bounds_ledger_from_json(const Json& j);

// Doubles rendered with 17 significant digits, period decimal separator.
std::string format_double(double v);

// "a;b;c" rendering of index lists for CSV cells.
template <class T>
std::string join_list(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace paley
