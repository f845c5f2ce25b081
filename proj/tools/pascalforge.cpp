#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>

#include "pascalforge/census.hpp"
#include "pascalforge/conjectures.hpp"
#include "pascalforge/modmath.hpp"
#include "pascalforge/report.hpp"
#include "pascalforge/row_scan.hpp"
#include "pascalforge/scan.hpp"

namespace {

using namespace pascalforge;

constexpr int kExitClean = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitAborted = 3;  // --abort-after-rows test hook

struct OutputTarget {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit OutputTarget(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
    stream = &file;
  }
};

unsigned resolve_workers(unsigned flag_value, bool flag_given) {
  if (flag_given) return std::max(1u, flag_value);
  if (const char* env = std::getenv("PASCALFORGE_WORKERS")) {
    char* end = nullptr;
    unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw std::domain_error("PASCALFORGE_WORKERS must be a positive integer");
    }
    return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void require_odd_prime_arg(uint64_t p) {
  if (p == 2 || !is_prime(p)) {
    throw std::domain_error("--p must be an odd prime, got " + std::to_string(p));
  }
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

int run_row(uint64_t n, uint64_t k, bool census, RecordFormat format, const std::string& out) {
  OutputTarget target(out);
  if (census) {
    *target.stream << record_census(census_row(n, k), format);
  } else {
    std::string buffer;
    for (RowScanner scan = row_residues(n, k); !scan.done(); scan.advance()) {
      buffer += record_row_entry(n, k, scan.column(), scan.value(), format);
      if (buffer.size() >= 1 << 16) {
        *target.stream << buffer;
        buffer.clear();
      }
    }
    *target.stream << buffer;
  }
  target.stream->flush();
  return kExitClean;
}

int run_census_scan(ScanOptions options, uint64_t k, RecordFormat format,
                    const std::string& out) {
  if (!options.checkpoint_path.empty() && out.empty()) {
    throw std::domain_error("census --checkpoint requires --out (stream output cannot rewind)");
  }
  Timer timer;
  std::unique_ptr<CensusSink> sink;
  if (out.empty()) {
    sink = std::make_unique<OstreamSink>(std::cout);
  } else {
    sink = std::make_unique<FileSink>(out);
  }
  census_partition_scan(options, k, format, *sink);
  std::cerr << "census: rows [" << options.from << ", " << options.to << "] mod " << k << " in "
            << timer.seconds() << "s\n";
  return kExitClean;
}

int run_conj1_scan(const ScanOptions& options, RecordFormat format, const std::string& out) {
  Timer timer;
  AuditReport report = conj1_partition_scan(options);
  OutputTarget target(out);
  *target.stream << record_conj1_report(report, format);
  target.stream->flush();
  std::cerr << "conj1: rows [" << options.from << ", " << options.to << "], "
            << report.violations.size() << " violation(s), " << report.value_set.size()
            << " distinct counts, " << timer.seconds() << "s\n";
  return report.clean() ? kExitClean : kExitViolation;
}

int run_conj2(uint64_t p, bool full_period, std::optional<uint64_t> single_n, RecordFormat format,
              const std::string& out) {
  require_odd_prime_arg(p);
  OutputTarget target(out);
  if (single_n && !full_period) {
    uint64_t n = *single_n;
    if (n < 1) throw std::domain_error("--n must be >= 1");
    ExceptionalClassSet classes = conj2_exceptional_set(p);
    Fraction predicted = conj2_predicted_frac(n, p, classes);
    Fraction observed = frac_binom(n, 2 * p);
    *target.stream << record_conj2_check(n, p, predicted, observed, classes, format);
    target.stream->flush();
    return predicted == observed ? kExitClean : kExitViolation;
  }
  Timer timer;
  AuditReport report = conj2_verify(p);
  *target.stream << record_conj2_report(report, conj2_exceptional_set(p), format);
  target.stream->flush();
  std::cerr << "conj2: p=" << p << ", " << report.checked << " values, "
            << report.violations.size() << " violation(s), " << timer.seconds() << "s\n";
  return report.clean() ? kExitClean : kExitViolation;
}

int run_frac(uint64_t m, uint64_t count, RecordFormat format, const std::string& out) {
  OutputTarget target(out);
  std::string buffer;
  for (uint64_t n = 1; n <= count; ++n) {
    buffer += record_frac(m, n, frac_binom(n, m), format);
    if (buffer.size() >= 1 << 16) {
      *target.stream << buffer;
      buffer.clear();
    }
  }
  *target.stream << buffer;
  target.stream->flush();
  return kExitClean;
}

int run_period(uint64_t m, RecordFormat format, const std::string& out) {
  OutputTarget target(out);
  *target.stream << record_period(m, format);
  target.stream->flush();
  return kExitClean;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"binomial coefficients modulo primes, prime powers and composites: "
               "row residues, censuses, and conjecture audits"};
  app.require_subcommand(1);

  // all integer arguments are plain decimal; no hex, signs or whitespace
  const CLI::Validator decimal_only(
      [](std::string& value) {
        return !value.empty() && value.find_first_not_of("0123456789") == std::string::npos
                   ? std::string{}
                   : std::string("expected a decimal integer");
      },
      "UINT");

  std::string format_name = "jsonl";
  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format_name, "output format")
        ->check(CLI::IsMember({"jsonl", "csv"}));
  };

  // row --n N --mod K [--census]
  auto* row_cmd = app.add_subcommand("row", "emit row residues or the row census");
  uint64_t row_n = 0, row_mod = 0;
  bool row_census = false;
  std::string row_out;
  row_cmd->add_option("--n", row_n, "row index")->required()->check(decimal_only);
  row_cmd->add_option("--mod", row_mod, "modulus k >= 2")->required()->check(decimal_only)->check(CLI::Range(uint64_t{2}, UINT64_MAX));
  row_cmd->add_flag("--census", row_census, "emit the residue census instead of entries");
  row_cmd->add_option("--out", row_out, "write records to a file instead of stdout");
  add_format(row_cmd);

  // census --from A --to B --mod K
  auto* census_cmd = app.add_subcommand("census", "per-row residue censuses over a range");
  ScanOptions census_opts;
  uint64_t census_mod = 0;
  std::string census_out, census_checkpoint;
  unsigned census_workers = 0;
  census_cmd->add_option("--from", census_opts.from, "first row")->required()->check(decimal_only);
  census_cmd->add_option("--to", census_opts.to, "last row")->required()->check(decimal_only);
  census_cmd->add_option("--mod", census_mod, "modulus k in [2, 65536]")->required()->check(decimal_only);
  census_cmd->add_option("--out", census_out, "output file (required with --checkpoint)");
  auto* census_workers_opt = census_cmd->add_option("--workers", census_workers, "worker threads")->check(decimal_only);
  census_cmd->add_option("--checkpoint", census_checkpoint, "checkpoint file for resumable scans");
  census_cmd->add_option("--chunk-rows", census_opts.chunk_rows)->check(decimal_only)->group("");
  census_cmd->add_option("--checkpoint-rows", census_opts.checkpoint_rows)->check(decimal_only)->group("");
  census_cmd->add_option("--abort-after-rows", census_opts.abort_after_rows)->check(decimal_only)->group("");
  add_format(census_cmd);

  // conj1 --from A --to B
  auto* conj1_cmd = app.add_subcommand("conj1", "mod-16 census divisibility audit and value set");
  ScanOptions conj1_opts;
  std::string conj1_out, conj1_checkpoint;
  unsigned conj1_workers = 0;
  conj1_cmd->add_option("--from", conj1_opts.from, "first row")->required()->check(decimal_only);
  conj1_cmd->add_option("--to", conj1_opts.to, "last row")->required()->check(decimal_only);
  conj1_cmd->add_option("--out", conj1_out, "write the report to a file instead of stdout");
  auto* conj1_workers_opt = conj1_cmd->add_option("--workers", conj1_workers, "worker threads")->check(decimal_only);
  conj1_cmd->add_option("--checkpoint", conj1_checkpoint, "checkpoint file for resumable scans");
  conj1_cmd->add_option("--chunk-rows", conj1_opts.chunk_rows)->check(decimal_only)->group("");
  conj1_cmd->add_option("--checkpoint-rows", conj1_opts.checkpoint_rows)->check(decimal_only)->group("");
  conj1_cmd->add_option("--abort-after-rows", conj1_opts.abort_after_rows)->check(decimal_only)->group("");
  add_format(conj1_cmd);

  // conj2 --p P [--full-period | --n N]
  auto* conj2_cmd = app.add_subcommand("conj2", "exceptional-class audit of C(n, 2p) mod n");
  uint64_t conj2_p = 0;
  uint64_t conj2_n = 0;
  bool conj2_full = false;
  std::string conj2_out;
  conj2_cmd->add_option("--p", conj2_p, "odd prime")->required()->check(decimal_only);
  auto* conj2_full_opt = conj2_cmd->add_flag("--full-period", conj2_full, "audit one full period (default)");
  auto* conj2_n_opt = conj2_cmd->add_option("--n", conj2_n, "check a single n")->check(decimal_only);
  conj2_n_opt->excludes(conj2_full_opt);
  conj2_cmd->add_option("--out", conj2_out, "write records to a file instead of stdout");
  add_format(conj2_cmd);

  // frac --m M --count N
  auto* frac_cmd = app.add_subcommand("frac", "first terms of Frac(C(n, m)/n)");
  uint64_t frac_m = 0, frac_count = 0;
  std::string frac_out;
  frac_cmd->add_option("--m", frac_m, "column m >= 1")->required()->check(decimal_only)->check(CLI::Range(uint64_t{1}, UINT64_MAX));
  frac_cmd->add_option("--count", frac_count, "number of terms (n = 1..count)")->required()->check(decimal_only);
  frac_cmd->add_option("--out", frac_out, "write records to a file instead of stdout");
  add_format(frac_cmd);

  // period --m M
  auto* period_cmd = app.add_subcommand("period", "frac period and its Lu-Tsai constituents");
  uint64_t period_m = 0;
  std::string period_out;
  period_cmd->add_option("--m", period_m, "column m >= 1")->required()->check(decimal_only)->check(CLI::Range(uint64_t{1}, UINT64_MAX));
  period_cmd->add_option("--out", period_out, "write records to a file instead of stdout");
  add_format(period_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitClean : kExitUsage;
  }

  try {
    RecordFormat format = parse_format(format_name);
    if (row_cmd->parsed()) {
      return run_row(row_n, row_mod, row_census, format, row_out);
    }
    if (census_cmd->parsed()) {
      census_opts.workers = resolve_workers(census_workers, census_workers_opt->count() > 0);
      census_opts.checkpoint_path = census_checkpoint;
      census_opts.fingerprint = "census from=" + std::to_string(census_opts.from) +
                                " to=" + std::to_string(census_opts.to) +
                                " mod=" + std::to_string(census_mod) + " format=" + format_name +
                                " out=" + census_out;
      return run_census_scan(census_opts, census_mod, format, census_out);
    }
    if (conj1_cmd->parsed()) {
      conj1_opts.workers = resolve_workers(conj1_workers, conj1_workers_opt->count() > 0);
      conj1_opts.checkpoint_path = conj1_checkpoint;
      conj1_opts.fingerprint = "conj1 from=" + std::to_string(conj1_opts.from) +
                               " to=" + std::to_string(conj1_opts.to) + " format=" + format_name +
                               " out=" + conj1_out;
      return run_conj1_scan(conj1_opts, format, conj1_out);
    }
    if (conj2_cmd->parsed()) {
      std::optional<uint64_t> single_n;
      if (conj2_n_opt->count() > 0) single_n = conj2_n;
      return run_conj2(conj2_p, conj2_full, single_n, format, conj2_out);
    }
    if (frac_cmd->parsed()) {
      return run_frac(frac_m, frac_count, format, frac_out);
    }
    if (period_cmd->parsed()) {
      return run_period(period_m, format, period_out);
    }
    return kExitUsage;
  } catch (const ScanAborted& e) {
    std::cerr << "aborted: " << e.what() << "\n";
    return kExitAborted;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
