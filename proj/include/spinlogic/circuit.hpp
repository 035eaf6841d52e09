#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "spinlogic/gate_spec.hpp"

namespace spinlogic {

enum class GateKind { AND, OR, XOR, XNOR, NAND, NOR, HA, FA };

std::string gate_kind_name(GateKind kind);
GateKind parse_gate_kind(const std::string& name);
std::size_t gate_num_inputs(GateKind kind);
std::size_t gate_num_outputs(GateKind kind);
/// The Boolean relation of a gate kind (pin names follow the built-in spec).
const GateSpec& gate_kind_spec(GateKind kind);

/// A gate pin: the net it attaches to, optionally inverted (written ~net).
struct Pin {
  std::string net;
  bool inverted = false;
  bool operator==(const Pin&) const = default;
};

struct GateInstance {
  GateKind kind = GateKind::AND;
  std::vector<Pin> inputs;
  std::vector<Pin> outputs;
  bool operator==(const GateInstance&) const = default;
};

/// Gate-level netlist. Net names are global; each net is driven by at most
/// one gate output or is a primary input; the gate graph is acyclic and
/// every primary output is driven.
struct Circuit {
  std::vector<std::string> primary_inputs;
  std::vector<std::string> primary_outputs;
  std::vector<GateInstance> gates;

  /// Every net mentioned anywhere, in canonical order.
  std::set<std::string> nets() const;
  bool operator==(const Circuit&) const = default;
};

/// Structural validation; throws on arity mismatches, duplicate drivers,
/// undefined nets, combinational cycles, or undriven primary outputs.
void validate(const Circuit& circuit);

/// Gate indices in evaluation order (inputs before consumers).
std::vector<std::size_t> topological_order(const Circuit& circuit);

// Netlist format, line-oriented; '#' starts a comment:
//   input <net>...
//   output <net>...
//   gate <KIND> <pin>... -> <pin>...     (pin = net or ~net)
Circuit parse_netlist(std::string_view text);
std::string serialize(const Circuit& circuit);

/// Evaluates the circuit on the given primary-input values (which must cover
/// exactly the primary inputs) and returns the value of every net.
std::map<std::string, bool> evaluate_circuit(const Circuit& circuit,
                                             const std::map<std::string, bool>& inputs);

}  // namespace spinlogic
