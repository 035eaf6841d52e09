#include "spinlogic/kernels.hpp"

#include <algorithm>
#include <limits>

namespace spinlogic::kernels {

namespace scalar {

std::int64_t energy_block(const TermTable& table, std::uint64_t first, std::size_t count,
                          std::int64_t* out) {
  const std::size_t nterms = table.num_terms();
  std::int64_t block_min = std::numeric_limits<std::int64_t>::max();
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint64_t mask = first + i;
    std::int64_t e = table.base;
    for (std::size_t t = 0; t < nterms; ++t) {
      const std::uint64_t x = ((mask >> table.shift_a[t]) ^ (mask >> table.shift_b[t])) & 1u;
      e += x ? -table.weight[t] : table.weight[t];
    }
    out[i] = e;
    block_min = std::min(block_min, e);
  }
  return block_min;
}

void add_scaled(const std::int32_t* p, const std::int32_t* sigma, std::int32_t v, int rows,
                std::int32_t* out) {
  for (int r = 0; r < rows; ++r) out[r] = p[r] + v * sigma[r];
}

RowStats row_stats(const std::int32_t* p, const RowLayout& layout) {
  RowStats st;
  st.min_consistent = std::numeric_limits<std::int64_t>::max();
  st.max_consistent = std::numeric_limits<std::int64_t>::min();
  st.min_inconsistent = std::numeric_limits<std::int64_t>::max();
  const int comps = 1 << layout.anc_log2;
  for (int g = 0; g < layout.num_groups; ++g) {
    std::int32_t mn = p[g * comps];
    for (int c = 1; c < comps; ++c) mn = std::min(mn, p[g * comps + c]);
    if (layout.consistent_mask[static_cast<std::size_t>(g) * comps] != 0) {
      st.min_consistent = std::min<std::int64_t>(st.min_consistent, mn);
      st.max_consistent = std::max<std::int64_t>(st.max_consistent, mn);
    } else {
      st.min_inconsistent = std::min<std::int64_t>(st.min_inconsistent, mn);
    }
  }
  return st;
}

}  // namespace scalar

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
  return avx2::compiled_in() && __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

EnergyBlockFn select_energy_block() {
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2()) return avx2::energy_block;
#endif
  return scalar::energy_block;
}

AddScaledFn select_add_scaled() {
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2()) return avx2::add_scaled;
#endif
  return scalar::add_scaled;
}

RowStatsFn select_row_stats() {
#if defined(__x86_64__) || defined(_M_X64)
  if (cpu_has_avx2()) return avx2::row_stats;
#endif
  return scalar::row_stats;
}

}  // namespace

const EnergyBlockFn energy_block = select_energy_block();
const AddScaledFn add_scaled = select_add_scaled();
const RowStatsFn row_stats = select_row_stats();

const std::string& active_implementation() {
  static const std::string name = cpu_has_avx2() ? "avx2" : "scalar";
  return name;
}

}  // namespace spinlogic::kernels
