#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "rotspin/config.hpp"

namespace rotspin {

// Applies fn to every item on a small worker pool, preserving input order in
// the results. jobs <= 0 means use the hardware thread count. The first
// exception thrown by fn is rethrown on the calling thread.
template <class In, class Fn>
auto parallel_map(const std::vector<In>& items, Fn fn, int jobs = 0)
    -> std::vector<decltype(fn(items.front()))> {
  using Out = decltype(fn(items.front()));
  std::vector<Out> out(items.size());
  if (items.empty()) return out;
  std::size_t n = jobs > 0 ? static_cast<std::size_t>(jobs)
                           : std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  n = std::min(n, items.size());
  if (n == 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mtx;
  std::vector<std::thread> pool;
  pool.reserve(n);
  for (std::size_t w = 0; w < n; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= items.size() || failed.load()) return;
        try {
          out[i] = fn(items[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lk(error_mtx);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

// One swept parameter: a config key and the values it takes.
struct SweepAxis {
  std::string key;
  std::vector<double> values;
};

// Cartesian product of the axes over a base config; the first axis varies
// slowest. Unknown keys and empty axes are rejected up front.
inline std::vector<RunConfig> build_sweep(const RunConfig& base,
                                          const std::vector<SweepAxis>& axes) {
  std::size_t total = 1;
  for (const auto& ax : axes) {
    if (ax.values.empty())
      throw std::invalid_argument("sweep: axis '" + ax.key + "' has no values");
    bool known = false;
    for (const auto& k : config_keys()) known = known || k == ax.key;
    if (!known)
      throw std::invalid_argument("sweep: unknown key '" + ax.key + "'");
    total *= ax.values.size();
  }
  std::vector<RunConfig> out;
  out.reserve(total);
  for (std::size_t idx = 0; idx < total; ++idx) {
    RunConfig cfg = base;
    std::size_t rem = idx;
    for (std::size_t a = axes.size(); a-- > 0;) {
      const SweepAxis& ax = axes[a];
      apply_config_key(cfg, ax.key, ax.values[rem % ax.values.size()]);
      rem /= ax.values.size();
    }
    cfg.par.validate();
    out.push_back(cfg);
  }
  return out;
}

}  // namespace rotspin
