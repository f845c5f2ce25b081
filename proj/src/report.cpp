#include "pascalforge/report.hpp"

#include <sstream>
#include <stdexcept>

#include "pascalforge/modmath.hpp"

namespace pascalforge {

namespace {

using nlohmann::json;

std::string dump_line(const json& j) { return j.dump() + "\n"; }

template <typename Range, typename Fn>
std::string join_semi(const Range& range, Fn&& render) {
  std::string out;
  bool first = true;
  for (const auto& item : range) {
    if (!first) out += ';';
    first = false;
    out += render(item);
  }
  return out;
}

json violations_json(const std::vector<Violation>& violations) {
  json arr = json::array();
  for (const Violation& v : violations) arr.push_back(violation_to_json(v));
  return arr;
}

std::string violations_csv(const std::vector<Violation>& violations) {
  return join_semi(violations, [](const Violation& v) {
    return std::to_string(v.n) + ":" + std::to_string(v.index) + ":" + v.kind;
  });
}

}  // namespace

RecordFormat parse_format(const std::string& name) {
  if (name == "jsonl") return RecordFormat::jsonl;
  if (name == "csv") return RecordFormat::csv;
  throw std::domain_error("unknown format '" + name + "' (expected jsonl or csv)");
}

json violation_to_json(const Violation& v) {
  return json{{"n", v.n},
              {"index", v.index},
              {"kind", v.kind},
              {"expected", v.expected},
              {"observed", v.observed}};
}

Violation violation_from_json(const json& j) {
  Violation v;
  v.n = j.at("n").get<uint64_t>();
  v.index = j.at("index").get<uint64_t>();
  v.kind = j.at("kind").get<std::string>();
  v.expected = j.at("expected").get<std::string>();
  v.observed = j.at("observed").get<std::string>();
  return v;
}

std::string record_row_entry(uint64_t n, uint64_t k, uint64_t m, uint64_t r, RecordFormat f) {
  if (f == RecordFormat::jsonl) {
    return dump_line(json{{"type", "row_entry"}, {"n", n}, {"k", k}, {"m", m}, {"r", r}});
  }
  std::ostringstream os;
  os << "row_entry," << n << ',' << k << ',' << m << ',' << r << '\n';
  return os.str();
}

std::string record_census(const RowResidueCensus& census, RecordFormat f) {
  if (f == RecordFormat::jsonl) {
    return dump_line(
        json{{"type", "census"}, {"n", census.n}, {"k", census.k}, {"counts", census.counts}});
  }
  std::ostringstream os;
  os << "census," << census.n << ',' << census.k << ','
     << join_semi(census.counts, [](uint64_t c) { return std::to_string(c); }) << '\n';
  return os.str();
}

std::string record_frac(uint64_t m, uint64_t n, const Fraction& value, RecordFormat f) {
  if (f == RecordFormat::jsonl) {
    return dump_line(json{{"type", "frac"}, {"m", m}, {"n", n}, {"value", value.str()}});
  }
  std::ostringstream os;
  os << "frac," << m << ',' << n << ',' << value.str() << '\n';
  return os.str();
}

std::string record_period(uint64_t m, RecordFormat f) {
  uint64_t period = frac_period(m);
  uint64_t k = m >= 2 ? m - 1 : 1;
  std::vector<std::pair<uint64_t, uint64_t>> factors;  // (p, p^floor(log_p k))
  if (m >= 2) {
    for (const PrimePower& pp : factorize(m)) {
      factors.emplace_back(pp.prime, checked_pow(pp.prime, floor_log(pp.prime, k)));
    }
  }
  if (f == RecordFormat::jsonl) {
    json fs = json::array();
    for (auto [p, pow] : factors) fs.push_back(json{{"p", p}, {"pow", pow}});
    return dump_line(
        json{{"type", "period"}, {"m", m}, {"k", k}, {"period", period}, {"factors", fs}});
  }
  std::ostringstream os;
  os << "period," << m << ',' << k << ',' << period << ','
     << join_semi(factors,
                  [](const std::pair<uint64_t, uint64_t>& f2) {
                    return std::to_string(f2.first) + "^" + std::to_string(f2.second);
                  })
     << '\n';
  return os.str();
}

std::string record_conj1_report(const AuditReport& report, RecordFormat f) {
  if (f == RecordFormat::jsonl) {
    return dump_line(json{{"type", "conj1_report"},
                          {"from", report.from},
                          {"to", report.to},
                          {"checked", report.checked},
                          {"value_set", report.value_set},
                          {"violations", violations_json(report.violations)}});
  }
  std::ostringstream os;
  os << "conj1_report," << report.from << ',' << report.to << ',' << report.checked << ','
     << report.violations.size() << ','
     << join_semi(report.value_set, [](uint64_t v) { return std::to_string(v); }) << ','
     << violations_csv(report.violations) << '\n';
  return os.str();
}

std::string record_conj2_report(const AuditReport& report, const ExceptionalClassSet& classes,
                                RecordFormat f) {
  if (f == RecordFormat::jsonl) {
    return dump_line(json{{"type", "conj2_report"},
                          {"p", report.prime},
                          {"period", report.to},
                          {"checked", report.checked},
                          {"modulus", classes.modulus},
                          {"exceptional", classes.residues},
                          {"j_map", classes.j_to_residue},
                          {"violations", violations_json(report.violations)}});
  }
  std::ostringstream os;
  os << "conj2_report," << report.prime << ',' << report.to << ',' << report.checked << ','
     << classes.modulus << ','
     << join_semi(classes.residues, [](uint64_t r) { return std::to_string(r); }) << ','
     << report.violations.size() << ',' << violations_csv(report.violations) << '\n';
  return os.str();
}

std::string record_conj2_check(uint64_t n, uint64_t p, const Fraction& predicted,
                               const Fraction& observed, const ExceptionalClassSet& classes,
                               RecordFormat f) {
  bool match = predicted == observed;
  if (f == RecordFormat::jsonl) {
    return dump_line(json{{"type", "conj2_check"},
                          {"p", p},
                          {"n", n},
                          {"predicted", predicted.str()},
                          {"observed", observed.str()},
                          {"exceptional", classes.contains(n)},
                          {"modulus", classes.modulus},
                          {"classes", classes.residues},
                          {"j_map", classes.j_to_residue},
                          {"match", match}});
  }
  std::ostringstream os;
  os << "conj2_check," << p << ',' << n << ',' << predicted.str() << ',' << observed.str() << ','
     << (classes.contains(n) ? 1 : 0) << ',' << (match ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace pascalforge
