#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spinlogic/ising.hpp"

namespace spinlogic {

/// A Boolean relation over named input and output variables, given as the
/// set of consistent rows. Each row assigns a spin (+1 = true) to every
/// input and output, in declared order.
struct GateSpec {
  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::set<std::vector<Spin>> relation;

  std::size_t arity() const { return inputs.size() + outputs.size(); }
  /// Inputs followed by outputs, the order rows are written in.
  std::vector<std::string> variables() const;
  bool contains_row(const std::vector<Spin>& row) const { return relation.count(row) != 0; }
  /// True iff every input combination has exactly one consistent output
  /// combination (required for gates used in circuits).
  bool is_function_graph() const;
};

/// Structural checks: 1..4 inputs, 1..2 outputs, distinct names, well-formed
/// rows. Throws on violation.
void validate(const GateSpec& spec);

/// Built-in specs: AND, OR, XOR, XNOR, NAND, NOR (a, b -> x),
/// HA (x, y -> s, c) and FA (x, y, z -> s, c).
GateSpec builtin_gate_spec(const std::string& name);
const std::vector<std::string>& builtin_gate_names();

// Text format:
//   inputs a b
//   outputs x
//   row -1 -1 -1        # one line per consistent row, declared order
GateSpec parse_gate_spec(std::string_view text);
std::string serialize(const GateSpec& spec);

}  // namespace spinlogic
