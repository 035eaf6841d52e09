#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace spinlogic::kernels {

// Inner loops shared by the exact enumerator and the synthesis search.
// Each kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant selected at runtime. All arithmetic is integer, so every variant
// must produce bit-identical results; the test suite enforces this on random
// inputs.

/// Sentinel shift for linear terms: bit 63 of an assignment mask is always 0
/// (free-spin counts are far below 63), so xor-ing against it is a no-op.
inline constexpr std::uint8_t kNullShift = 63;

/// A clamped model compiled to mask arithmetic. Free spins are numbered so
/// that bit (num_spins-1-i) of an assignment mask holds spin i (+1 when set);
/// ascending masks therefore walk assignments in canonical order.
///
/// energy(mask) = base + sum_t (xor_t(mask) ? -weight[t] : +weight[t])
/// where xor_t(mask) = ((mask >> shift_a[t]) ^ (mask >> shift_b[t])) & 1.
///
/// A quadratic term {i, j} stores its coefficient directly (spins differ =>
/// sign flips); a linear term on spin i stores the negated coefficient with
/// shift_b = kNullShift, so a set bit (+1 spin) contributes +coefficient.
struct TermTable {
  int num_spins = 0;
  std::int64_t base = 0;
  std::vector<std::uint8_t> shift_a;
  std::vector<std::uint8_t> shift_b;
  std::vector<std::int64_t> weight;

  void add_linear(int spin, std::int64_t coef) {
    shift_a.push_back(static_cast<std::uint8_t>(num_spins - 1 - spin));
    shift_b.push_back(kNullShift);
    weight.push_back(-coef);
  }
  void add_quadratic(int spin_i, int spin_j, std::int64_t coef) {
    shift_a.push_back(static_cast<std::uint8_t>(num_spins - 1 - spin_i));
    shift_b.push_back(static_cast<std::uint8_t>(num_spins - 1 - spin_j));
    weight.push_back(coef);
  }
  std::size_t num_terms() const { return weight.size(); }
};

/// Writes energies for masks [first, first+count) into out and returns the
/// block minimum.
using EnergyBlockFn = std::int64_t (*)(const TermTable& table, std::uint64_t first,
                                       std::size_t count, std::int64_t* out);

/// Row-table layout for the synthesis search: `rows` partial energies grouped
/// into `num_groups` runs of 2^anc_log2 ancilla completions each.
struct RowLayout {
  int rows = 0;
  int num_groups = 0;
  int anc_log2 = 0;
  /// Per row: ~0u when the row's group is consistent, 0 otherwise.
  std::vector<std::uint32_t> consistent_mask;
};

/// Reductions over a row table needed by the search's bound checks:
/// the min/max over consistent groups of each group's completion-minimum,
/// and the overall minimum over inconsistent completions.
struct RowStats {
  std::int64_t min_consistent = 0;
  std::int64_t max_consistent = 0;
  std::int64_t min_inconsistent = 0;
};

/// out[r] = p[r] + v * sigma[r] for r in [0, rows); buffers padded to 8.
using AddScaledFn = void (*)(const std::int32_t* p, const std::int32_t* sigma, std::int32_t v,
                             int rows, std::int32_t* out);

using RowStatsFn = RowStats (*)(const std::int32_t* p, const RowLayout& layout);

namespace scalar {
std::int64_t energy_block(const TermTable& table, std::uint64_t first, std::size_t count,
                          std::int64_t* out);
void add_scaled(const std::int32_t* p, const std::int32_t* sigma, std::int32_t v, int rows,
                std::int32_t* out);
RowStats row_stats(const std::int32_t* p, const RowLayout& layout);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
std::int64_t energy_block(const TermTable& table, std::uint64_t first, std::size_t count,
                          std::int64_t* out);
void add_scaled(const std::int32_t* p, const std::int32_t* sigma, std::int32_t v, int rows,
                std::int32_t* out);
RowStats row_stats(const std::int32_t* p, const RowLayout& layout);
bool compiled_in();
}  // namespace avx2
#endif

/// Runtime-selected entry points (AVX2 when the CPU supports it, else scalar).
extern const EnergyBlockFn energy_block;
extern const AddScaledFn add_scaled;
extern const RowStatsFn row_stats;

/// Name of the selected implementation ("avx2" or "scalar").
const std::string& active_implementation();

}  // namespace spinlogic::kernels
