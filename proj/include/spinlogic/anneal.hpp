#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "spinlogic/ising.hpp"

namespace spinlogic {

/// Geometric cooling schedule for the Metropolis annealer. Zero-valued
/// fields are filled in automatically:
///   t_initial <- max over free spins of sum of |incident coefficients|
///                (an upper bound on |dE|/2),
///   sweeps_per_temperature <- 2 * (#free spins).
struct AnnealSchedule {
  double t_initial = 0.0;
  double t_final = 0.1;
  double alpha = 0.97;
  std::uint64_t sweeps_per_temperature = 0;
  std::uint64_t restarts = 1;
  std::uint64_t seed = 0;
  /// Stop as soon as some restart reaches the target energy. Disable to run
  /// every restart and collect all certified assignments (backward
  /// simulation wants the full set).
  bool stop_at_target = true;
};

struct AnnealResult {
  SpinAssignment best_assignment;
  Coef best_energy = 0;
  /// True iff best_energy equals the caller-supplied target.
  bool certified = false;
  std::uint64_t restarts_used = 0;
  std::uint64_t flips_attempted = 0;
  /// Assignments of restarts whose best hit the target, in restart order.
  std::vector<SpinAssignment> certified_assignments;
};

/// Metropolis single-spin-flip annealing over the free (unclamped) variables.
/// A flip is accepted when dE <= 0, otherwise with probability exp(-dE/T);
/// the temperature decays geometrically from t_initial to t_final.
///
/// Fully reproducible: restart r draws from a std::mt19937_64 engine seeded
/// with splitmix64(seed + (r+1) * 0x9E3779B97F4A7C15), so parallel and
/// sequential execution produce the identical result (ties between restarts
/// go to the lower restart index).
AnnealResult anneal(const IsingModel& model, const SpinAssignment& clamps,
                    const AnnealSchedule& schedule, std::optional<Coef> target = {},
                    unsigned threads = 0);

}  // namespace spinlogic
