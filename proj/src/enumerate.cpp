#include <algorithm>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "spinlogic/ising.hpp"
#include "spinlogic/kernels.hpp"

namespace spinlogic {

namespace {

constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
constexpr std::size_t kBlock = 2048;
constexpr std::size_t kMaxGroundStates = std::size_t{1} << 22;

struct ScanResult {
  std::int64_t min1 = kInf;        // lowest energy seen
  std::int64_t min2 = kInf;        // second-lowest distinct energy
  std::vector<std::uint64_t> minimizers;  // masks attaining min1, ascending
};

// Scans masks [first, last); minimizer list stays in ascending mask order.
ScanResult scan_range(const kernels::TermTable& table, std::uint64_t first, std::uint64_t last) {
  ScanResult res;
  std::vector<std::int64_t> buf(kBlock);
  for (std::uint64_t base = first; base < last; base += kBlock) {
    const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, last - base));
    const std::int64_t block_min = kernels::energy_block(table, base, count, buf.data());
    if (block_min > res.min2) continue;  // nothing in this block can matter
    for (std::size_t i = 0; i < count; ++i) {
      const std::int64_t e = buf[i];
      if (e < res.min1) {
        res.min2 = res.min1;
        res.min1 = e;
        res.minimizers.clear();
        res.minimizers.push_back(base + i);
      } else if (e == res.min1) {
        res.minimizers.push_back(base + i);
      } else if (e < res.min2) {
        res.min2 = e;
      }
    }
    if (res.minimizers.size() > kMaxGroundStates)
      throw Error("ground-state set exceeds " + std::to_string(kMaxGroundStates) +
                  " assignments; clamp more variables");
  }
  return res;
}

ScanResult merge(ScanResult a, ScanResult b) {
  ScanResult out;
  out.min1 = std::min(a.min1, b.min1);
  out.min2 = kInf;
  for (std::int64_t cand : {a.min1, a.min2, b.min1, b.min2})
    if (cand > out.min1 && cand < out.min2) out.min2 = cand;
  if (a.min1 == out.min1) out.minimizers = std::move(a.minimizers);
  if (b.min1 == out.min1) {
    out.minimizers.insert(out.minimizers.end(), b.minimizers.begin(), b.minimizers.end());
  }
  return out;
}

}  // namespace

GroundStateReport enumerate_ground_states(const IsingModel& model, const SpinAssignment& clamps,
                                          const EnumerateOptions& options) {
  for (const auto& [var, value] : clamps.values())
    if (!model.has_variable(var)) throw Error("clamped variable '" + var + "' is not in the model");

  std::vector<std::string> free_vars;
  for (const auto& var : model.variables())
    if (!clamps.contains(var)) free_vars.push_back(var);
  const std::size_t k = free_vars.size();
  if (k > options.free_limit) throw TooManyFreeVariables(k, options.free_limit);
  if (k > 62) throw TooManyFreeVariables(k, 62);

  // Fold clamps into a reduced table over the free spins.
  kernels::TermTable table;
  table.num_spins = static_cast<int>(k);
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < k; ++i) index[free_vars[i]] = static_cast<int>(i);

  std::int64_t base = model.offset();
  std::vector<std::int64_t> eff_linear(k, 0);
  for (const auto& [var, w] : model.linear_terms()) {
    if (clamps.contains(var))
      base += w * clamps.at(var);
    else
      eff_linear[static_cast<std::size_t>(index.at(var))] += w;
  }
  for (const auto& [pair, w] : model.quadratic_terms()) {
    const bool cu = clamps.contains(pair.first);
    const bool cv = clamps.contains(pair.second);
    if (cu && cv) {
      base += w * clamps.at(pair.first) * clamps.at(pair.second);
    } else if (cu) {
      eff_linear[static_cast<std::size_t>(index.at(pair.second))] += w * clamps.at(pair.first);
    } else if (cv) {
      eff_linear[static_cast<std::size_t>(index.at(pair.first))] += w * clamps.at(pair.second);
    } else {
      table.add_quadratic(index.at(pair.first), index.at(pair.second), w);
    }
  }
  table.base = base;
  for (std::size_t i = 0; i < k; ++i)
    if (eff_linear[i] != 0) table.add_linear(static_cast<int>(i), eff_linear[i]);

  const std::uint64_t total = std::uint64_t{1} << k;
  unsigned threads = options.threads;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  if (k < 20) threads = 1;

  ScanResult scan;
  if (threads <= 1) {
    scan = scan_range(table, 0, total);
  } else {
    // Contiguous chunks merged in order reproduce the sequential report.
    const std::uint64_t chunk = (total + threads - 1) / threads;
    std::vector<ScanResult> parts(threads);
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::mutex failure_mutex;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        const std::uint64_t lo = std::min<std::uint64_t>(total, t * chunk);
        const std::uint64_t hi = std::min<std::uint64_t>(total, lo + chunk);
        try {
          parts[t] = scan_range(table, lo, hi);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    scan = parts[0];
    for (unsigned t = 1; t < threads; ++t) scan = merge(std::move(scan), std::move(parts[t]));
  }

  GroundStateReport report;
  report.min_energy = scan.min1;
  if (scan.min2 != kInf) report.gap = scan.min2 - scan.min1;
  report.ground_states.reserve(scan.minimizers.size());
  for (std::uint64_t mask : scan.minimizers) {
    SpinAssignment s = clamps;
    for (std::size_t i = 0; i < k; ++i) {
      const bool up = (mask >> (k - 1 - i)) & 1u;
      s.set(free_vars[i], up ? +1 : -1);
    }
    report.ground_states.push_back(std::move(s));
  }
  return report;
}

}  // namespace spinlogic
