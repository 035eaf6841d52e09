#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "spinlogic/gate_spec.hpp"
#include "spinlogic/ising.hpp"

namespace spinlogic {

enum class Objective { MaxAbs, InputNum, QuadNum };

/// Priority order for lexicographic minimization.
using ObjectivePriority = std::array<Objective, 3>;

/// MAX_ABS, then INPUT_NUM, then QUAD_NUM: the order that yields zero-input
/// unit models.
inline constexpr ObjectivePriority kZeroInputPriority{Objective::MaxAbs, Objective::InputNum,
                                                      Objective::QuadNum};
/// MAX_ABS, then QUAD_NUM, then INPUT_NUM: favors fewer edges over
/// uncolored inputs.
inline constexpr ObjectivePriority kSparsePriority{Objective::MaxAbs, Objective::QuadNum,
                                                   Objective::InputNum};

std::string objective_name(Objective o);
ObjectivePriority parse_priority(const std::string& names);  // e.g. "max_abs,input_num,quad_num"

/// Achieved objective values together with the priority they were minimized
/// under.
struct ObjectiveVector {
  Coef max_abs = 0;
  int input_num = 0;
  int quad_num = 0;
  ObjectivePriority priority = kZeroInputPriority;

  std::array<Coef, 3> in_priority_order() const;
};

/// The symbolic constraint system for one synthesis instance. Unknowns are
/// one integer coefficient per term plus the ground energy mu. Consistent
/// rows contribute, over their ancilla completions, a disjunction of
/// equalities (some completion equals mu) plus a lower bound (>= mu) per
/// completion; inconsistent rows contribute a lower bound (>= mu + 1) per
/// completion.
struct ConstraintSystem {
  struct Term {
    bool quadratic = false;
    std::string u, v;  // v empty for linear terms
  };
  struct Completion {
    SpinAssignment assignment;      // full assignment including ancillas
    std::vector<int8_t> signs;      // per term, the sign it contributes
  };
  struct Group {
    bool consistent = false;
    SpinAssignment row;             // assignment over spec inputs/outputs
    std::vector<Completion> completions;
  };

  std::vector<std::string> variables;  // spec variables then ancillas
  std::vector<std::string> ancillas;
  std::vector<Term> terms;
  std::vector<Group> groups;

  /// Consistent groups with a single completion (plain equality).
  std::size_t num_equalities() const;
  /// Consistent groups with several completions (disjunction of equalities).
  std::size_t num_disjunctions() const;
  /// All lower-bound constraints (>= mu on consistent completions beyond the
  /// pure-equality case, >= mu+1 on inconsistent completions).
  std::size_t num_inequalities() const;

  std::string to_string() const;
};

/// Builds the constraint system for `spec` with `num_ancilla` extra
/// variables. Total variable count is capped at 7.
ConstraintSystem build_constraints(const GateSpec& spec, int num_ancilla);

struct SynthesisResult {
  IsingModel model;
  Coef mu = 0;
  ObjectiveVector objectives;
  std::vector<std::string> ancillas;
};

/// Certificate that no coefficient vector with all |coefficients| <= bound
/// satisfies the constraints.
struct InfeasibleWithinBound {
  Coef bound = 0;
};

using SynthesisOutcome = std::variant<SynthesisResult, InfeasibleWithinBound>;

enum class SearchStrategy {
  /// Enumerate every coefficient vector in [-bound, +bound]^k, skipping
  /// subtrees as soon as the row constraints become unsatisfiable.
  Exhaustive,
  /// Same enumeration plus branch-and-bound on the objective vector; returns
  /// identical objective values (and the identical tie-broken model).
  BranchAndBound,
};

struct SynthesisOptions {
  SearchStrategy strategy = SearchStrategy::BranchAndBound;
};

/// Finds a coefficient vector satisfying build_constraints(spec, num_ancilla)
/// that is lexicographically minimal in the given objective priority, or
/// certifies infeasibility within the bound. Ties between objective-equal
/// optima are broken by the canonically smallest coefficient vector
/// (quadratic coefficients first, then linear, each in declared variable
/// order). Deterministic.
SynthesisOutcome synthesize(const GateSpec& spec, int num_ancilla, Coef bound,
                            const ObjectivePriority& priority = kZeroInputPriority,
                            const SynthesisOptions& options = {});

/// Brute-force check that `model` is a penalty model for `spec`: every
/// consistent row reaches the global minimum mu through some ancilla
/// completion, every inconsistent row stays >= mu + 1 for all completions.
/// Model variables beyond the spec's are treated as ancillas.
struct VerificationReport {
  bool pass = false;
  Coef mu = 0;
  std::optional<Coef> gap;  // second-lowest distinct energy minus mu
  ObjectiveVector achieved;
  struct RowFailure {
    SpinAssignment row;
    bool consistent = false;
    Coef min_energy = 0;  // min over ancilla completions
  };
  std::vector<RowFailure> failures;
};

VerificationReport verify_gate_model(const IsingModel& model, const GateSpec& spec);

}  // namespace spinlogic
