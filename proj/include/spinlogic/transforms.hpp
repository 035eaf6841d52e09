#pragma once

#include <map>
#include <set>
#include <string>

#include "spinlogic/ising.hpp"

namespace spinlogic {

/// Assignment of {0,1} values to QUBO variables.
class BitAssignment {
 public:
  BitAssignment() = default;
  BitAssignment(std::initializer_list<std::pair<const std::string, int>> init);

  void set(const std::string& var, int value);
  int at(const std::string& var) const;
  bool contains(const std::string& var) const { return values_.count(var) != 0; }
  const std::map<std::string, int>& values() const { return values_; }

 private:
  std::map<std::string, int> values_;
};

/// Quadratic form over {0,1} variables; same structural rules as IsingModel.
class QuboModel {
 public:
  void add_variable(const std::string& name);
  void add_linear(const std::string& v, Coef w);
  void add_quadratic(const std::string& u, const std::string& v, Coef w);
  void add_offset(Coef k) { offset_ += k; }

  bool has_variable(const std::string& name) const { return variables_.count(name) != 0; }
  Coef linear(const std::string& v) const;
  Coef quadratic(const std::string& u, const std::string& v) const;
  Coef offset() const { return offset_; }

  const std::set<std::string>& variables() const { return variables_; }
  const std::map<std::string, Coef>& linear_terms() const { return linear_; }
  const std::map<VarPair, Coef>& quadratic_terms() const { return quadratic_; }

  bool operator==(const QuboModel& other) const;

 private:
  std::set<std::string> variables_;
  std::map<std::string, Coef> linear_;
  std::map<VarPair, Coef> quadratic_;
  Coef offset_ = 0;
};

Coef energy(const QuboModel& model, const BitAssignment& x);

/// Flips the sign of v's linear coefficient and of every quadratic
/// coefficient incident to v, so that
///   energy(result, s) == energy(model, s with s[v] negated)
/// for every assignment. Used to realize inverted gate pins.
IsingModel negate_variable(const IsingModel& model, const std::string& v);

/// Contracts the wire edge {keep, drop}: requires a quadratic coefficient of
/// exactly -1 on the pair and at most one endpoint with a nonzero linear
/// coefficient. The edge is deleted, -1 is added to the offset, drop's
/// linear coefficient moves onto keep, and every edge {drop, w} re-targets to
/// {keep, w} (summing; zeros vanish). Energies agree with the original model
/// on every assignment with s[keep] == s[drop].
IsingModel merge_nodes(const IsingModel& model, const std::string& keep, const std::string& drop);

/// Ising model I with energy_I(s) = 4 * energy_Q(x) under x_i = (s_i+1)/2.
/// The factor of 4 keeps all coefficients integral.
IsingModel qubo_to_ising(const QuboModel& q);

/// QUBO model Q with energy_Q(x) = energy_I(s) under s_i = 2*x_i - 1
/// (integer-exact; no scaling needed in this direction).
QuboModel ising_to_qubo(const IsingModel& m);

}  // namespace spinlogic
