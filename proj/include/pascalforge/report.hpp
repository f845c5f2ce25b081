#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "pascalforge/census.hpp"
#include "pascalforge/conjectures.hpp"
#include "pascalforge/fraction.hpp"

namespace pascalforge {

// Output records are line-delimited: one self-describing record per line,
// either JSON objects (keys sorted, integers and fraction strings only, so
// bytes are stable across runs) or flat CSV rows with ';'-joined lists.
enum class RecordFormat { jsonl, csv };

RecordFormat parse_format(const std::string& name);  // "jsonl" or "csv"

nlohmann::json violation_to_json(const Violation& v);
Violation violation_from_json(const nlohmann::json& j);

// Each record_* returns one newline-terminated line.
std::string record_row_entry(uint64_t n, uint64_t k, uint64_t m, uint64_t r, RecordFormat f);
std::string record_census(const RowResidueCensus& census, RecordFormat f);
std::string record_frac(uint64_t m, uint64_t n, const Fraction& value, RecordFormat f);
std::string record_period(uint64_t m, RecordFormat f);
std::string record_conj1_report(const AuditReport& report, RecordFormat f);
std::string record_conj2_report(const AuditReport& report, const ExceptionalClassSet& classes,
                                RecordFormat f);
std::string record_conj2_check(uint64_t n, uint64_t p, const Fraction& predicted,
                               const Fraction& observed, const ExceptionalClassSet& classes,
                               RecordFormat f);

}  // namespace pascalforge
