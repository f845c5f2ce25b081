#include "pascalforge/scan.hpp"

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <filesystem>
#include <functional>
#include <map>
#include <mutex>
#include <thread>

#include <json.hpp>

#include "pascalforge/census.hpp"

namespace pascalforge {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

// Runs work(lo, hi) over fixed chunk boundaries on a small pool and hands the
// results to merge in ascending chunk order. Chunk boundaries depend only on
// the range and chunk_rows, so output is independent of the worker count.
template <typename Result>
void run_chunks(uint64_t from, uint64_t to, unsigned workers, uint64_t chunk_rows,
                const std::function<Result(uint64_t, uint64_t)>& work,
                const std::function<void(uint64_t, uint64_t, Result&&)>& merge) {
  if (from > to) return;
  if (chunk_rows == 0) chunk_rows = 1;
  uint64_t total = to - from + 1;
  uint64_t chunk_count = (total + chunk_rows - 1) / chunk_rows;

  std::mutex mu;
  std::condition_variable cv;
  std::map<uint64_t, Result> ready;
  std::exception_ptr worker_error;
  std::atomic<uint64_t> next_chunk{0};
  std::atomic<bool> stop{false};

  auto worker = [&] {
    while (!stop.load(std::memory_order_relaxed)) {
      uint64_t c = next_chunk.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunk_count) return;
      uint64_t lo = from + c * chunk_rows;
      uint64_t hi = std::min(to, lo + (chunk_rows - 1));
      try {
        Result r = work(lo, hi);
        std::lock_guard<std::mutex> guard(mu);
        ready.emplace(c, std::move(r));
        cv.notify_all();
      } catch (...) {
        std::lock_guard<std::mutex> guard(mu);
        if (!worker_error) worker_error = std::current_exception();
        stop.store(true);
        cv.notify_all();
        return;
      }
    }
  };

  unsigned pool_size = static_cast<unsigned>(
      std::min<uint64_t>(std::max(1u, workers), chunk_count));
  std::vector<std::thread> pool;
  pool.reserve(pool_size);
  for (unsigned i = 0; i < pool_size; ++i) pool.emplace_back(worker);

  auto join_all = [&] {
    stop.store(true);
    for (std::thread& t : pool) t.join();
  };

  try {
    for (uint64_t c = 0; c < chunk_count; ++c) {
      Result r;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return worker_error || ready.count(c) > 0; });
        if (worker_error) break;
        r = std::move(ready.at(c));
        ready.erase(c);
      }
      uint64_t lo = from + c * chunk_rows;
      uint64_t hi = std::min(to, lo + (chunk_rows - 1));
      merge(lo, hi, std::move(r));
    }
  } catch (...) {
    join_all();
    throw;
  }
  join_all();
  if (worker_error) std::rethrow_exception(worker_error);
}

// Prints a stderr progress line at most every few seconds; stdout stays data.
class ProgressMeter {
 public:
  explicit ProgressMeter(uint64_t to) : to_(to), last_(Clock::now()) {}

  void update(uint64_t through) {
    auto now = Clock::now();
    if (std::chrono::duration<double>(now - last_).count() < 5.0) return;
    last_ = now;
    std::cerr << "progress: through n=" << through << " of " << to_ << "\n";
  }

 private:
  uint64_t to_;
  Clock::time_point last_;
};

// Shared cadence + resume bookkeeping for checkpointed scans.
class CheckpointKeeper {
 public:
  CheckpointKeeper(const ScanOptions& options, uint64_t prefix_checked)
      : options_(options),
        hash_(fingerprint_hash(options.fingerprint)),
        rows_since_save_(0),
        checked_(prefix_checked),
        last_save_(Clock::now()) {}

  void on_merge(uint64_t rows) {
    checked_ += rows;
    rows_since_save_ += rows;
    rows_this_run_ += rows;
    if (options_.abort_after_rows > 0 && rows_this_run_ >= options_.abort_after_rows) {
      throw ScanAborted(rows_this_run_);
    }
  }

  bool due() const {
    if (options_.checkpoint_path.empty()) return false;
    if (rows_since_save_ >= options_.checkpoint_rows) return true;
    std::chrono::duration<double> elapsed = Clock::now() - last_save_;
    return elapsed.count() >= options_.checkpoint_seconds;
  }

  void save(uint64_t last_n, const AuditReport& merged, uint64_t out_offset) {
    if (options_.checkpoint_path.empty()) return;
    ScanCheckpoint cp;
    cp.fingerprint_hash = hash_;
    cp.from = options_.from;
    cp.to = options_.to;
    cp.last_n = last_n;
    cp.checked = checked_;
    cp.value_set = merged.value_set;
    cp.violations = merged.violations;
    cp.out_offset = out_offset;
    cp.save(options_.checkpoint_path);
    rows_since_save_ = 0;
    last_save_ = Clock::now();
  }

 private:
  const ScanOptions& options_;
  uint64_t hash_;
  uint64_t rows_since_save_;
  uint64_t checked_;
  uint64_t rows_this_run_ = 0;
  Clock::time_point last_save_;
};

std::optional<ScanCheckpoint> load_for(const ScanOptions& options) {
  if (options.checkpoint_path.empty()) return std::nullopt;
  auto cp = ScanCheckpoint::load(options.checkpoint_path);
  if (!cp) return std::nullopt;
  if (cp->fingerprint_hash != fingerprint_hash(options.fingerprint)) {
    throw std::runtime_error("checkpoint '" + options.checkpoint_path +
                             "' belongs to a different command");
  }
  return cp;
}

}  // namespace

std::optional<ScanCheckpoint> ScanCheckpoint::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  json j;
  try {
    in >> j;
    ScanCheckpoint cp;
    cp.fingerprint_hash = j.at("fingerprint_hash").get<uint64_t>();
    cp.from = j.at("from").get<uint64_t>();
    cp.to = j.at("to").get<uint64_t>();
    cp.last_n = j.at("last_n").get<uint64_t>();
    cp.checked = j.at("checked").get<uint64_t>();
    cp.value_set = j.at("value_set").get<std::set<uint64_t>>();
    for (const json& v : j.at("violations")) cp.violations.push_back(violation_from_json(v));
    cp.out_offset = j.at("out_offset").get<uint64_t>();
    return cp;
  } catch (const json::exception& e) {
    throw std::runtime_error("malformed checkpoint '" + path + "': " + e.what());
  }
}

void ScanCheckpoint::save(const std::string& path) const {
  json violations_json = json::array();
  for (const Violation& v : violations) violations_json.push_back(violation_to_json(v));
  json j{{"fingerprint_hash", fingerprint_hash},
         {"from", from},
         {"to", to},
         {"last_n", last_n},
         {"checked", checked},
         {"value_set", value_set},
         {"violations", violations_json},
         {"out_offset", out_offset}};
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write checkpoint '" + tmp + "'");
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

uint64_t fingerprint_hash(std::string_view canonical) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

AuditReport conj1_partition_scan(const ScanOptions& options) {
  AuditReport merged;
  merged.from = options.from;
  merged.to = options.to;

  uint64_t start = options.from;
  if (auto cp = load_for(options)) {
    merged.checked = cp->checked;
    merged.value_set = cp->value_set;
    merged.violations = cp->violations;
    if (cp->last_n >= options.to) return merged;  // prior run already finished
    start = cp->last_n + 1;
  }

  CheckpointKeeper keeper(options, merged.checked);
  ProgressMeter progress(options.to);
  run_chunks<AuditReport>(
      start, options.to, options.workers, options.chunk_rows,
      [](uint64_t lo, uint64_t hi) { return conj1_scan(lo, hi); },
      [&](uint64_t, uint64_t hi, AuditReport&& part) {
        uint64_t rows = part.checked;
        merged.merge(part);
        keeper.on_merge(rows);
        if (keeper.due()) keeper.save(hi, merged, 0);
        progress.update(hi);
      });
  if (!options.checkpoint_path.empty()) keeper.save(options.to, merged, 0);
  return merged;
}

FileSink::FileSink(std::string path) : path_(std::move(path)) {
  stream_.open(path_, std::ios::binary | std::ios::app);
  if (!stream_) throw std::runtime_error("cannot open output file '" + path_ + "'");
}

void FileSink::write(std::string_view bytes) {
  stream_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

uint64_t FileSink::offset() {
  stream_.flush();
  return static_cast<uint64_t>(std::filesystem::file_size(path_));
}

void FileSink::truncate_to(uint64_t offset) {
  stream_.close();
  std::filesystem::resize_file(path_, offset);
  stream_.open(path_, std::ios::binary | std::ios::app);
  if (!stream_) throw std::runtime_error("cannot reopen output file '" + path_ + "'");
}

void FileSink::flush() { stream_.flush(); }

void OstreamSink::write(std::string_view bytes) {
  os_.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  written_ += bytes.size();
}

void OstreamSink::truncate_to(uint64_t offset) {
  if (offset != written_) {
    throw std::runtime_error("stream output cannot rewind; use --out with checkpoints");
  }
}

void census_partition_scan(const ScanOptions& options, uint64_t k, RecordFormat format,
                           CensusSink& sink) {
  uint64_t start = options.from;
  AuditReport merged;  // carries nothing for censuses; keeps checkpoint shape uniform
  uint64_t prefix_checked = 0;
  if (auto cp = load_for(options)) {
    sink.truncate_to(cp->out_offset);
    if (cp->last_n >= options.to) return;
    start = cp->last_n + 1;
    prefix_checked = cp->checked;
  } else {
    sink.truncate_to(0);
  }

  CheckpointKeeper keeper(options, prefix_checked);
  ProgressMeter progress(options.to);
  run_chunks<std::string>(
      start, options.to, options.workers, options.chunk_rows,
      [&](uint64_t lo, uint64_t hi) {
        std::string buffer;
        for (uint64_t n = lo;; ++n) {
          buffer += record_census(census_row(n, k), format);
          if (n == hi) break;
        }
        return buffer;
      },
      [&](uint64_t lo, uint64_t hi, std::string&& lines) {
        sink.write(lines);
        keeper.on_merge(hi - lo + 1);
        if (keeper.due()) {
          sink.flush();
          keeper.save(hi, merged, sink.offset());
        }
        progress.update(hi);
      });
  sink.flush();
  if (!options.checkpoint_path.empty()) keeper.save(options.to, merged, sink.offset());
}

}  // namespace pascalforge
