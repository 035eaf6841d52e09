#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "spinlogic/compile.hpp"

namespace spinlogic {

/// Grade-school array multiplier of two n-bit operands.
struct MultiplierSpec {
  int n = 4;
  /// Fixes x0 = y0 = s0 = 1, dropping the lowest-bit gates; the natural
  /// setting for factoring, where both operands are odd.
  bool odd_assumption = true;
};

struct MultiplierStats {
  int and_gates = 0;
  int half_adders = 0;
  int full_adders = 0;
  std::size_t model_nodes = 0;
  std::size_t model_edges = 0;
  Coef max_abs_coef = 0;
};

/// AND array for the partial products plus a row-by-row carry-save adder
/// array. Primary inputs are x1..x_{n-1}, y1..y_{n-1} (x0.., y0.. without the
/// odd assumption); primary outputs s1..s_{2n-1} (s0..).
Circuit build_multiplier(const MultiplierSpec& spec);

/// Compile selection used for multiplication models: unit-variant AND array
/// (kept unmerged along the colored rows for a planar layout), zero-input
/// adders, full merging elsewhere.
VariantSelection multiplier_variants();

/// Compiles and counts: gate counts, model nodes/edges, largest |coefficient|.
MultiplierStats model_stats(const MultiplierSpec& spec,
                            const VariantSelection& variants = multiplier_variants());

/// Forward simulation: clamps the operand bits and decodes the product from
/// a ground state.
std::uint64_t multiply(const MultiplierSpec& spec, std::uint64_t x, std::uint64_t y,
                       const SolverChoice& solver);

/// Backward simulation: clamps the product bits and decodes operand pairs.
/// Returns the distinct factorizations found, each as (smaller, larger),
/// sorted; the exact solver returns all of them.
std::vector<std::pair<std::uint64_t, std::uint64_t>> factor(const MultiplierSpec& spec,
                                                            std::uint64_t s,
                                                            const SolverChoice& solver);

}  // namespace spinlogic
