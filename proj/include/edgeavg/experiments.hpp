#pragma once

#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "edgeavg/config.hpp"
#include "edgeavg/io.hpp"
#include "edgeavg/rng.hpp"

namespace edgeavg {

// Replica-level parallelism: fn(replica) -> T for replica 0..replicas-1,
// results keyed by replica index so aggregation is independent of
// scheduling. threads == 0 means hardware concurrency.
template <class T, class Fn>
std::vector<T> run_replicas(std::uint64_t replicas, std::uint32_t threads, Fn&& fn) {
  std::vector<T> results(replicas);
  std::uint64_t workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<std::uint64_t>(workers, replicas);
  if (workers <= 1) {
    for (std::uint64_t r = 0; r < replicas; ++r) results[r] = fn(r);
    return results;
  }
  std::atomic<std::uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::uint64_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const std::uint64_t r = next.fetch_add(1);
        if (r >= replicas) break;
        try {
          results[r] = fn(r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          break;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

// Stream salts: one replica owns several independent streams.
enum StreamSalt : std::uint64_t {
  kClockSalt = 0,    // ring events of the main trajectory
  kOpinionSalt = 1,  // initial-opinion draws
  kAuxClockSalt = 2, // second simulation phase (e.g. fragmentation runs)
  kAuxOpinionSalt = 3,
};

struct ExperimentOutputs {
  Summary summary;
  std::vector<std::string> files;  // everything written, summary included
};

// Runs one experiment and writes its CSV/summary/snapshot outputs under
// config.out_dir. Reruns with an identical config produce identical bytes.
ExperimentOutputs run_experiment(const ExperimentConfig& config);

}  // namespace edgeavg
