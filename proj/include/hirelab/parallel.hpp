#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hirelab {

/// Trials per work unit. Fixed, so the reduction tree never depends on the
/// worker count.
inline constexpr std::uint64_t kTrialsPerChunk = 8192;

/// Worker count: an explicit request wins, then HIRELAB_THREADS, then the
/// hardware concurrency.
inline unsigned resolve_workers(unsigned requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("HIRELAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Run `trials` trials split into fixed chunks. Each chunk accumulates into
/// a fresh `make()` value via `process(acc, first, last)`; chunk results are
/// folded into the total strictly in chunk order with `merge(total, chunk)`.
/// The result is therefore bit-identical for any number of workers.
template <class Acc, class Make, class Process, class Merge>
Acc run_chunked(std::uint64_t trials, unsigned workers, Make make, Process process, Merge merge,
                std::uint64_t chunk_size = kTrialsPerChunk) {
  Acc total = make();
  if (trials == 0) return total;
  const std::uint64_t chunks = (trials + chunk_size - 1) / chunk_size;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), chunks));

  auto run_chunk = [&](std::uint64_t c) {
    Acc acc = make();
    const std::uint64_t first = c * chunk_size;
    process(acc, first, std::min(trials, first + chunk_size));
    return acc;
  };

  if (workers == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) merge(total, run_chunk(c));
    return total;
  }

  std::atomic<std::uint64_t> next{0};
  std::mutex mu;
  std::map<std::uint64_t, Acc> pending;
  std::uint64_t next_merge = 0;
  std::exception_ptr failure;
  std::atomic<bool> abort{false};

  auto worker = [&] {
    try {
      for (;;) {
        if (abort.load(std::memory_order_relaxed)) return;
        const std::uint64_t c = next.fetch_add(1);
        if (c >= chunks) return;
        Acc acc = run_chunk(c);
        std::lock_guard lock(mu);
        pending.emplace(c, std::move(acc));
        for (auto it = pending.find(next_merge); it != pending.end();
             it = pending.find(next_merge)) {
          merge(total, std::move(it->second));
          pending.erase(it);
          ++next_merge;
        }
      }
    } catch (...) {
      std::lock_guard lock(mu);
      if (!failure) failure = std::current_exception();
      abort = true;
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return total;
}

}  // namespace hirelab
