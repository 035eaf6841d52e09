#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "spinlogic/errors.hpp"

namespace spinlogic {

/// Integer coefficient / energy type. Gate models are tiny, but QUBO
/// conversion inflates linear terms, so everything is 64-bit.
using Coef = std::int64_t;

/// A value of a spin variable: -1 (false) or +1 (true).
using Spin = int;

inline Spin bool_to_spin(bool b) { return b ? +1 : -1; }
inline bool spin_to_bool(Spin s) { return s > 0; }

/// Map from variable name to spin value. Every stored value is -1 or +1.
class SpinAssignment {
 public:
  SpinAssignment() = default;
  SpinAssignment(std::initializer_list<std::pair<const std::string, Spin>> init);

  void set(const std::string& var, Spin value);
  Spin at(const std::string& var) const;
  bool contains(const std::string& var) const { return values_.count(var) != 0; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  const std::map<std::string, Spin>& values() const { return values_; }
  bool operator==(const SpinAssignment& other) const { return values_ == other.values_; }
  bool operator<(const SpinAssignment& other) const { return values_ < other.values_; }

 private:
  std::map<std::string, Spin> values_;
};

/// Unordered variable pair, stored with first < second.
using VarPair = std::pair<std::string, std::string>;

inline VarPair make_pair_key(const std::string& u, const std::string& v) {
  return u < v ? VarPair{u, v} : VarPair{v, u};
}

/// Quadratic form over named spin variables with integer coefficients:
///
///   E(s) = offset + sum_v linear[v]*s[v] + sum_{u<v} quadratic[{u,v}]*s[u]*s[v]
///
/// Zero coefficients are never stored; every variable referenced by a
/// coefficient is registered. Models are value types: transforms return
/// rewritten copies, and a constructed model can be shared freely across
/// threads.
class IsingModel {
 public:
  /// Registers a variable. Adding an existing variable is a no-op.
  void add_variable(const std::string& name);

  /// Adds `w` to the linear coefficient of `v` (which must exist).
  void add_linear(const std::string& v, Coef w);

  /// Adds `w` to the quadratic coefficient of {u, v}; u != v required.
  void add_quadratic(const std::string& u, const std::string& v, Coef w);

  void add_offset(Coef k) { offset_ += k; }

  bool has_variable(const std::string& name) const { return variables_.count(name) != 0; }
  std::size_t num_variables() const { return variables_.size(); }
  std::size_t num_linear() const { return linear_.size(); }
  std::size_t num_quadratic() const { return quadratic_.size(); }

  Coef linear(const std::string& v) const;
  Coef quadratic(const std::string& u, const std::string& v) const;
  Coef offset() const { return offset_; }

  /// Variables in canonical (lexicographic) order.
  const std::set<std::string>& variables() const { return variables_; }
  const std::map<std::string, Coef>& linear_terms() const { return linear_; }
  const std::map<VarPair, Coef>& quadratic_terms() const { return quadratic_; }

  /// True iff every stored coefficient is -1 or +1 (offset excluded).
  bool is_unit() const;

  /// Largest |coefficient| over stored terms; 0 for a constant model.
  Coef max_abs_coefficient() const;

  bool operator==(const IsingModel& other) const;

 private:
  std::set<std::string> variables_;
  std::map<std::string, Coef> linear_;
  std::map<VarPair, Coef> quadratic_;
  Coef offset_ = 0;
};

/// Evaluates the Hamiltonian at a full assignment. The assignment must cover
/// exactly the model's variables: incomplete assignments raise a
/// missing-variable error, extraneous names an unknown-variable error.
Coef energy(const IsingModel& model, const SpinAssignment& s);

/// Result of exhaustive minimization: the exact minimum, every minimizer in
/// canonical order, and the distance to the second-lowest energy level
/// (absent when the enumerated spectrum has a single level).
struct GroundStateReport {
  Coef min_energy = 0;
  std::vector<SpinAssignment> ground_states;
  std::optional<Coef> gap;
};

struct EnumerateOptions {
  /// Hard cap on unclamped variables; 2^free evaluations are performed.
  std::size_t free_limit = 24;
  /// Worker threads; 0 picks automatically. The report is identical to the
  /// sequential one regardless.
  unsigned threads = 0;
};

/// Evaluates all 2^(#free) completions of `clamps` and reports the exact
/// ground set. Clamped names must belong to the model. Throws
/// TooManyFreeVariables when the free count exceeds options.free_limit.
GroundStateReport enumerate_ground_states(const IsingModel& model,
                                          const SpinAssignment& clamps = {},
                                          const EnumerateOptions& options = {});

}  // namespace spinlogic
