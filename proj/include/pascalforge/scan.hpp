#pragma once

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pascalforge/conjectures.hpp"
#include "pascalforge/report.hpp"

namespace pascalforge {

// Raised by the abort_after_rows test hook to simulate a killed scan.
struct ScanAborted : std::runtime_error {
  explicit ScanAborted(uint64_t rows)
      : std::runtime_error("scan aborted after " + std::to_string(rows) + " rows") {}
};

struct ScanOptions {
  uint64_t from = 0;
  uint64_t to = 0;
  unsigned workers = 1;
  // Canonical command string; checkpoints bind to its hash. Worker count and
  // checkpoint location stay out of it: both may change across a resume.
  std::string fingerprint;
  std::string checkpoint_path;  // empty disables checkpointing
  uint64_t chunk_rows = 4096;   // scheduling granularity and merge step
  uint64_t checkpoint_rows = 4096;
  double checkpoint_seconds = 5.0;
  uint64_t abort_after_rows = 0;  // test hook; 0 = never
};

// Snapshot of a scan whose prefix [from, last_n] is fully merged. Resuming
// restarts at last_n + 1 with the stored partial state (and, for streamed
// census output, the output truncated back to out_offset), so the final
// report is byte-identical to an uninterrupted run.
struct ScanCheckpoint {
  uint64_t fingerprint_hash = 0;
  uint64_t from = 0;
  uint64_t to = 0;
  uint64_t last_n = 0;
  uint64_t checked = 0;
  std::set<uint64_t> value_set;
  std::vector<Violation> violations;
  uint64_t out_offset = 0;

  // nullopt when no file exists; malformed contents throw.
  static std::optional<ScanCheckpoint> load(const std::string& path);
  void save(const std::string& path) const;  // write-temp + atomic rename
};

uint64_t fingerprint_hash(std::string_view canonical);

// Conjecture-1 audit of [from, to], chunked across workers and merged in row
// order; deterministic for any worker count.
AuditReport conj1_partition_scan(const ScanOptions& options);

// Destination for streamed census records. Byte offsets and truncation make
// resumed runs rewind output that was written after the last checkpoint.
class CensusSink {
 public:
  virtual ~CensusSink() = default;
  virtual void write(std::string_view bytes) = 0;
  virtual uint64_t offset() = 0;
  virtual void truncate_to(uint64_t offset) = 0;
  virtual void flush() = 0;
};

class FileSink final : public CensusSink {
 public:
  explicit FileSink(std::string path);
  void write(std::string_view bytes) override;
  uint64_t offset() override;
  void truncate_to(uint64_t offset) override;
  void flush() override;

 private:
  std::string path_;
  std::ofstream stream_;
};

// Counting pass-through; cannot rewind, so it only accepts truncation to the
// current offset (fresh scans).
class OstreamSink final : public CensusSink {
 public:
  explicit OstreamSink(std::ostream& os) : os_(os) {}
  void write(std::string_view bytes) override;
  uint64_t offset() override { return written_; }
  void truncate_to(uint64_t offset) override;
  void flush() override { os_.flush(); }

 private:
  std::ostream& os_;
  uint64_t written_ = 0;
};

// Per-row census records for [from, to] mod k, streamed to the sink in row
// order.
void census_partition_scan(const ScanOptions& options, uint64_t k, RecordFormat format,
                           CensusSink& sink);

}  // namespace pascalforge
