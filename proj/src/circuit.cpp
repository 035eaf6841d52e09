#include "spinlogic/circuit.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace spinlogic {

namespace {

struct KindInfo {
  const char* name;
  std::size_t num_in;
  std::size_t num_out;
};

constexpr KindInfo kKinds[] = {
    {"AND", 2, 1}, {"OR", 2, 1},  {"XOR", 2, 1}, {"XNOR", 2, 1},
    {"NAND", 2, 1}, {"NOR", 2, 1}, {"HA", 2, 2},  {"FA", 3, 2},
};

const KindInfo& info(GateKind kind) { return kKinds[static_cast<std::size_t>(kind)]; }

}  // namespace

std::string gate_kind_name(GateKind kind) { return info(kind).name; }

GateKind parse_gate_kind(const std::string& name) {
  for (std::size_t i = 0; i < std::size(kKinds); ++i)
    if (name == kKinds[i].name) return static_cast<GateKind>(i);
  throw Error("unknown gate kind '" + name + "'");
}

std::size_t gate_num_inputs(GateKind kind) { return info(kind).num_in; }
std::size_t gate_num_outputs(GateKind kind) { return info(kind).num_out; }

const GateSpec& gate_kind_spec(GateKind kind) {
  static const std::map<GateKind, GateSpec> specs = [] {
    std::map<GateKind, GateSpec> m;
    for (std::size_t i = 0; i < std::size(kKinds); ++i)
      m[static_cast<GateKind>(i)] = builtin_gate_spec(kKinds[i].name);
    return m;
  }();
  return specs.at(kind);
}

std::set<std::string> Circuit::nets() const {
  std::set<std::string> all(primary_inputs.begin(), primary_inputs.end());
  all.insert(primary_outputs.begin(), primary_outputs.end());
  for (const auto& gate : gates) {
    for (const auto& pin : gate.inputs) all.insert(pin.net);
    for (const auto& pin : gate.outputs) all.insert(pin.net);
  }
  return all;
}

void validate(const Circuit& circuit) {
  std::set<std::string> inputs;
  for (const auto& net : circuit.primary_inputs)
    if (!inputs.insert(net).second) throw Error("net '" + net + "' declared input twice");
  std::set<std::string> outputs;
  for (const auto& net : circuit.primary_outputs)
    if (!outputs.insert(net).second) throw Error("net '" + net + "' declared output twice");

  std::map<std::string, std::size_t> driver;
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const auto& gate = circuit.gates[g];
    if (gate.inputs.size() != gate_num_inputs(gate.kind) ||
        gate.outputs.size() != gate_num_outputs(gate.kind))
      throw Error("gate " + gate_kind_name(gate.kind) + " expects " +
                  std::to_string(gate_num_inputs(gate.kind)) + " inputs and " +
                  std::to_string(gate_num_outputs(gate.kind)) + " outputs");
    for (const auto& pin : gate.outputs) {
      if (inputs.count(pin.net))
        throw Error("net '" + pin.net + "' is a primary input but driven by a gate");
      if (!driver.emplace(pin.net, g).second)
        throw Error("net '" + pin.net + "' has more than one driver");
    }
  }
  for (const auto& gate : circuit.gates)
    for (const auto& pin : gate.inputs)
      if (!inputs.count(pin.net) && !driver.count(pin.net))
        throw Error("undefined net '" + pin.net + "'");
  for (const auto& net : circuit.primary_outputs)
    if (!driver.count(net)) throw Error("primary output '" + net + "' is not driven");
  topological_order(circuit);  // rejects combinational cycles
}

std::vector<std::size_t> topological_order(const Circuit& circuit) {
  std::map<std::string, std::size_t> driver;
  for (std::size_t g = 0; g < circuit.gates.size(); ++g)
    for (const auto& pin : circuit.gates[g].outputs) driver[pin.net] = g;

  // Kahn's algorithm over gate-to-gate dependencies.
  std::vector<std::vector<std::size_t>> consumers(circuit.gates.size());
  std::vector<std::size_t> pending(circuit.gates.size(), 0);
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    for (const auto& pin : circuit.gates[g].inputs) {
      auto it = driver.find(pin.net);
      if (it != driver.end() && it->second != g) {
        consumers[it->second].push_back(g);
        ++pending[g];
      } else if (it != driver.end() && it->second == g) {
        throw Error("combinational cycle through net '" + pin.net + "'");
      }
    }
  }
  std::deque<std::size_t> ready;
  for (std::size_t g = 0; g < circuit.gates.size(); ++g)
    if (pending[g] == 0) ready.push_back(g);
  std::vector<std::size_t> order;
  while (!ready.empty()) {
    const std::size_t g = ready.front();
    ready.pop_front();
    order.push_back(g);
    for (std::size_t next : consumers[g])
      if (--pending[next] == 0) ready.push_back(next);
  }
  if (order.size() != circuit.gates.size()) throw Error("combinational cycle in circuit");
  return order;
}

Circuit parse_netlist(std::string_view text) {
  Circuit circuit;
  std::istringstream stream{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(stream, line)) {
    ++line_no;
    std::istringstream in(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) {
      if (tok[0] == '#') break;
      tokens.push_back(tok);
    }
    if (tokens.empty()) continue;
    if (tokens[0] == "input") {
      circuit.primary_inputs.insert(circuit.primary_inputs.end(), tokens.begin() + 1, tokens.end());
    } else if (tokens[0] == "output") {
      circuit.primary_outputs.insert(circuit.primary_outputs.end(), tokens.begin() + 1,
                                     tokens.end());
    } else if (tokens[0] == "gate") {
      if (tokens.size() < 2) throw ParseError("gate line needs a kind", line_no);
      GateInstance gate;
      try {
        gate.kind = parse_gate_kind(tokens[1]);
      } catch (const Error& e) {
        throw ParseError(e.what(), line_no);
      }
      auto arrow = std::find(tokens.begin(), tokens.end(), "->");
      if (arrow == tokens.end()) throw ParseError("gate line needs '->'", line_no);
      auto parse_pin = [&](const std::string& t) {
        Pin pin;
        pin.inverted = !t.empty() && t[0] == '~';
        pin.net = pin.inverted ? t.substr(1) : t;
        if (pin.net.empty()) throw ParseError("empty pin name", line_no);
        return pin;
      };
      for (auto it = tokens.begin() + 2; it != arrow; ++it) gate.inputs.push_back(parse_pin(*it));
      for (auto it = arrow + 1; it != tokens.end(); ++it) gate.outputs.push_back(parse_pin(*it));
      if (gate.inputs.size() != gate_num_inputs(gate.kind) ||
          gate.outputs.size() != gate_num_outputs(gate.kind))
        throw ParseError("gate " + std::string(tokens[1]) + " expects " +
                             std::to_string(gate_num_inputs(gate.kind)) + " input pins and " +
                             std::to_string(gate_num_outputs(gate.kind)) + " output pins",
                         line_no);
      circuit.gates.push_back(std::move(gate));
    } else {
      throw ParseError("unknown declaration '" + tokens[0] + "'", line_no);
    }
  }
  validate(circuit);
  return circuit;
}

std::string serialize(const Circuit& circuit) {
  std::ostringstream out;
  out << "input";
  for (const auto& net : circuit.primary_inputs) out << " " << net;
  out << "\noutput";
  for (const auto& net : circuit.primary_outputs) out << " " << net;
  out << "\n";
  auto emit_pin = [&](const Pin& pin) { out << " " << (pin.inverted ? "~" : "") << pin.net; };
  for (const auto& gate : circuit.gates) {
    out << "gate " << gate_kind_name(gate.kind);
    for (const auto& pin : gate.inputs) emit_pin(pin);
    out << " ->";
    for (const auto& pin : gate.outputs) emit_pin(pin);
    out << "\n";
  }
  return out.str();
}

std::map<std::string, bool> evaluate_circuit(const Circuit& circuit,
                                             const std::map<std::string, bool>& inputs) {
  for (const auto& net : circuit.primary_inputs)
    if (!inputs.count(net)) throw Error("missing value for primary input '" + net + "'");
  for (const auto& [net, value] : inputs)
    if (std::find(circuit.primary_inputs.begin(), circuit.primary_inputs.end(), net) ==
        circuit.primary_inputs.end())
      throw Error("value supplied for '" + net + "', which is not a primary input");

  std::map<std::string, bool> values = inputs;
  for (std::size_t g : topological_order(circuit)) {
    const auto& gate = circuit.gates[g];
    std::vector<bool> in;
    for (const auto& pin : gate.inputs) {
      const bool v = values.at(pin.net);
      in.push_back(pin.inverted ? !v : v);
    }
    std::vector<bool> out;
    switch (gate.kind) {
      case GateKind::AND: out = {in[0] && in[1]}; break;
      case GateKind::OR: out = {in[0] || in[1]}; break;
      case GateKind::XOR: out = {in[0] != in[1]}; break;
      case GateKind::XNOR: out = {in[0] == in[1]}; break;
      case GateKind::NAND: out = {!(in[0] && in[1])}; break;
      case GateKind::NOR: out = {!(in[0] || in[1])}; break;
      case GateKind::HA: out = {in[0] != in[1], in[0] && in[1]}; break;
      case GateKind::FA: {
        const int ones = int(in[0]) + int(in[1]) + int(in[2]);
        out = {(ones % 2) == 1, ones >= 2};
        break;
      }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto& pin = gate.outputs[i];
      values[pin.net] = pin.inverted ? !out[i] : out[i];
    }
  }
  return values;
}

}  // namespace spinlogic
