#include "mfkc/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <random>
#include <string_view>

#ifdef __linux__
#include <sched.h>
#endif

#include "mfkc/error.hpp"

namespace mfkc {

namespace {

constexpr std::string_view kBenchAlphabet =
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789";

#ifdef __linux__
// Keeps the calling thread on the CPU it is running on while in scope.
class CpuPin {
 public:
  CpuPin() {
    if (sched_getaffinity(0, sizeof(saved_), &saved_) != 0) return;
    const int cpu = sched_getcpu();
    if (cpu < 0) return;
    cpu_set_t one;
    CPU_ZERO(&one);
    CPU_SET(cpu, &one);
    active_ = sched_setaffinity(0, sizeof(one), &one) == 0;
  }
  ~CpuPin() {
    if (active_) sched_setaffinity(0, sizeof(saved_), &saved_);
  }
  CpuPin(const CpuPin&) = delete;
  CpuPin& operator=(const CpuPin&) = delete;

 private:
  cpu_set_t saved_{};
  bool active_ = false;
};
#else
struct CpuPin {};
#endif

}  // namespace

Workload gen_workload(std::size_t n, std::size_t alphabet_size,
                      std::uint64_t seed) {
  if (n == 0) throw ConfigError("workload length must be at least 1");
  if (alphabet_size < 2 || alphabet_size > kBenchAlphabet.size()) {
    throw ConfigError("alphabet size must lie in [2, " +
                      std::to_string(kBenchAlphabet.size()) + "]");
  }
  std::mt19937_64 rng(seed);
  auto make = [&] {
    std::string s(n, '\0');
    for (auto& c : s) c = kBenchAlphabet[rng() % alphabet_size];
    return s;
  };
  Workload w;
  w.first = make();
  w.second = make();
  return w;
}

BenchTarget bench_target(DistanceFn distance) {
  auto name = distance.name;
  return {std::move(name), [distance = std::move(distance)](const Workload& w) {
            return std::function<double()>(
                [distance, &w] { return distance(w.first, w.second); });
          }};
}

BenchTarget mfkc_prehashed_target(const DistanceSpec& spec) {
  spec.validate();
  return {"mfkc-prehashed", [spec](const Workload& w) {
            auto a = max_k_freq_hash(w.first, spec.k, spec.unit);
            auto b = max_k_freq_hash(w.second, spec.k, spec.unit);
            return std::function<double()>(
                [spec, a = std::move(a), b = std::move(b)] {
                  return mfkc_distance(a, b, spec).distance;
                });
          }};
}

const BenchRow* BenchReport::find(std::string_view function,
                                  std::size_t n) const {
  for (const auto& row : rows) {
    if (row.function == function && row.n == n) return &row;
  }
  return nullptr;
}

const DoublingRatio* BenchReport::find_ratio(std::string_view function,
                                             std::size_t n) const {
  for (const auto& r : ratios) {
    if (r.function == function && r.n == n) return &r;
  }
  return nullptr;
}

std::vector<DoublingRatio> doubling_ratios(std::span<const BenchRow> rows) {
  std::vector<DoublingRatio> out;
  for (const auto& row : rows) {
    if (row.n % 2 != 0) continue;
    for (const auto& half : rows) {
      if (half.function == row.function && half.n * 2 == row.n &&
          half.mean_ns > 0.0) {
        out.push_back({row.function, row.n, row.mean_ns / half.mean_ns});
        break;
      }
    }
  }
  return out;
}

BenchReport time_targets(std::span<const BenchTarget> targets,
                         const BenchConfig& config) {
  using clock = std::chrono::steady_clock;
  if (config.sizes.empty()) throw ConfigError("bench needs at least one size");
  if (!std::is_sorted(config.sizes.begin(), config.sizes.end())) {
    throw ConfigError("bench sizes must be ascending");
  }
  if (config.reps < 30) {
    throw ConfigError("bench needs at least 30 repetitions per cell");
  }

  CpuPin pin;
  BenchReport report;
  report.alphabet_size = config.alphabet_size;
  report.seed = config.seed;

  volatile double sink = 0.0;
  struct Cell {
    std::size_t n = 0;
    std::unique_ptr<Workload> workload;  // ops may point into it
    std::function<double()> op;
    std::size_t inner = 1;
    std::vector<double> samples;
  };
  for (const auto& target : targets) {
    std::vector<Cell> cells;
    for (auto n : config.sizes) {
      // Same workload for every function at a given n.
      Cell cell;
      cell.n = n;
      cell.workload = std::make_unique<Workload>(
          gen_workload(n, config.alphabet_size, config.seed + n));
      cell.op = target.prepare(*cell.workload);
      cells.push_back(std::move(cell));
    }
    auto run_batch = [&](const Cell& cell, std::size_t count) {
      const auto start = clock::now();
      double acc = 0.0;
      for (std::size_t i = 0; i < count; ++i) acc += cell.op();
      const auto elapsed = clock::now() - start;
      sink = sink + acc;
      return std::chrono::duration<double, std::nano>(elapsed).count();
    };

    // Warm-up doubles as calibration of the batch size.
    for (auto& cell : cells) {
      const double single = std::max(run_batch(cell, 1), 1.0);
      cell.inner = static_cast<std::size_t>(std::clamp(
          std::ceil(config.min_batch_ns / single), 1.0, 1e7));
      run_batch(cell, cell.inner);
      cell.samples.reserve(config.reps);
    }
    // Sizes take turns within each repetition so that drift in machine
    // speed hits every size alike instead of skewing the ratios.
    for (std::size_t r = 0; r < config.reps; ++r) {
      for (auto& cell : cells) {
        cell.samples.push_back(run_batch(cell, cell.inner) /
                               static_cast<double>(cell.inner));
      }
    }
    for (const auto& cell : cells) {
      const auto stats = summarize(cell.samples);
      report.rows.push_back({target.name, cell.n, config.reps, cell.inner,
                             std::max(stats.mean, 1e-3), stats.stddev});
    }
  }
  report.ratios = doubling_ratios(report.rows);
  return report;
}

BenchReport time_distance(const DistanceFn& distance,
                          const BenchConfig& config) {
  const BenchTarget target = bench_target(distance);
  return time_targets(std::span<const BenchTarget>(&target, 1), config);
}

}  // namespace mfkc
