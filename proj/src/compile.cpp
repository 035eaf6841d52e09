#include "spinlogic/compile.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "spinlogic/transforms.hpp"

namespace spinlogic {

std::string variant_name(ModelVariant v) {
  switch (v) {
    case ModelVariant::Plain: return "plain";
    case ModelVariant::Unit: return "u";
    case ModelVariant::ZeroInput: return "zu";
  }
  return "?";
}

ModelVariant parse_variant(const std::string& name) {
  if (name == "plain") return ModelVariant::Plain;
  if (name == "u" || name == "unit") return ModelVariant::Unit;
  if (name == "zu" || name == "zero-input") return ModelVariant::ZeroInput;
  throw Error("unknown model variant '" + name + "'");
}

namespace {

struct TermSpec {
  const char* u;
  const char* v;  // nullptr for linear terms
  Coef w;
};

LibraryEntry make_entry(std::initializer_list<const char*> vars,
                        std::initializer_list<const char*> ancillas,
                        std::initializer_list<TermSpec> terms, Coef mu) {
  LibraryEntry e;
  for (const char* v : vars) e.model.add_variable(v);
  for (const char* v : ancillas) {
    e.model.add_variable(v);
    e.ancillas.push_back(v);
  }
  for (const auto& t : terms) {
    if (t.v)
      e.model.add_quadratic(t.u, t.v, t.w);
    else
      e.model.add_linear(t.u, t.w);
  }
  e.mu = mu;
  return e;
}

LibraryEntry negate_output(const LibraryEntry& base, const std::string& out) {
  LibraryEntry e;
  e.model = negate_variable(base.model, out);
  e.mu = base.mu;
  e.ancillas = base.ancillas;
  return e;
}

GateLibrary build_standard_library() {
  GateLibrary lib;

  auto and_plain = make_entry({"a", "b", "x"}, {},
                              {{"a", "b", 1},
                               {"a", "x", -2},
                               {"b", "x", -2},
                               {"a", nullptr, -1},
                               {"b", nullptr, -1},
                               {"x", nullptr, 2}},
                              -3);
  auto and_u = make_entry({"a", "b", "x"}, {"u"},
                          {{"a", "u", -1},
                           {"a", "x", -1},
                           {"b", "u", 1},
                           {"b", "x", -1},
                           {"b", nullptr, -1},
                           {"u", nullptr, -1},
                           {"x", nullptr, 1}},
                          -3);
  auto and_zu = make_entry({"a", "b", "x"}, {"u"},
                           {{"a", "b", 1},
                            {"a", "u", 1},
                            {"a", "x", -1},
                            {"b", "u", 1},
                            {"b", "x", -1},
                            {"u", nullptr, 1},
                            {"x", nullptr, 1}},
                           -3);
  lib.set(GateKind::AND, ModelVariant::Plain, and_plain);
  lib.set(GateKind::AND, ModelVariant::Unit, and_u);
  lib.set(GateKind::AND, ModelVariant::ZeroInput, and_zu);
  lib.set(GateKind::NAND, ModelVariant::Plain, negate_output(and_plain, "x"));
  lib.set(GateKind::NAND, ModelVariant::Unit, negate_output(and_u, "x"));
  lib.set(GateKind::NAND, ModelVariant::ZeroInput, negate_output(and_zu, "x"));

  auto or_plain = make_entry({"a", "b", "x"}, {},
                             {{"a", "b", 1},
                              {"a", "x", -2},
                              {"b", "x", -2},
                              {"a", nullptr, 1},
                              {"b", nullptr, 1},
                              {"x", nullptr, -2}},
                             -3);
  auto or_u = make_entry({"a", "b", "x"}, {"u"},
                         {{"a", "u", -1},
                          {"a", "x", -1},
                          {"b", "u", 1},
                          {"b", "x", -1},
                          {"b", nullptr, 1},
                          {"u", nullptr, 1},
                          {"x", nullptr, -1}},
                         -3);
  auto or_zu = make_entry({"a", "b", "x"}, {"u"},
                          {{"a", "b", 1},
                           {"a", "u", 1},
                           {"a", "x", -1},
                           {"b", "u", 1},
                           {"b", "x", -1},
                           {"u", nullptr, -1},
                           {"x", nullptr, -1}},
                          -3);
  lib.set(GateKind::OR, ModelVariant::Plain, or_plain);
  lib.set(GateKind::OR, ModelVariant::Unit, or_u);
  lib.set(GateKind::OR, ModelVariant::ZeroInput, or_zu);
  lib.set(GateKind::NOR, ModelVariant::Plain, negate_output(or_plain, "x"));
  lib.set(GateKind::NOR, ModelVariant::Unit, negate_output(or_u, "x"));
  lib.set(GateKind::NOR, ModelVariant::ZeroInput, negate_output(or_zu, "x"));

  // No 3-variable XOR model exists; the 4-variable model needs coefficient
  // magnitude 2, the unit one two ancillas.
  auto xor_plain = make_entry({"a", "b", "x"}, {"u"},
                              {{"a", "b", -1},
                               {"a", "u", 2},
                               {"a", "x", 1},
                               {"b", "u", -2},
                               {"b", "x", -1},
                               {"u", "x", 2},
                               {"a", nullptr, -1},
                               {"b", nullptr, 1},
                               {"u", nullptr, -2},
                               {"x", nullptr, -1}},
                              -4);
  auto xor_zu = make_entry({"a", "b", "x"}, {"u", "v"},
                           {{"a", "b", -1},
                            {"a", "u", -1},
                            {"a", "v", -1},
                            {"b", "u", 1},
                            {"b", "v", 1},
                            {"u", "x", 1},
                            {"v", "x", -1},
                            {"u", nullptr, -1},
                            {"v", nullptr, 1},
                            {"x", nullptr, -1}},
                           -4);
  lib.set(GateKind::XOR, ModelVariant::Plain, xor_plain);
  lib.set(GateKind::XOR, ModelVariant::Unit, xor_zu);
  lib.set(GateKind::XOR, ModelVariant::ZeroInput, xor_zu);
  lib.set(GateKind::XNOR, ModelVariant::Plain, negate_output(xor_plain, "x"));
  lib.set(GateKind::XNOR, ModelVariant::Unit, negate_output(xor_zu, "x"));
  lib.set(GateKind::XNOR, ModelVariant::ZeroInput, negate_output(xor_zu, "x"));

  auto ha_plain = make_entry({"x", "y", "s", "c"}, {},
                             {{"c", "s", 2},
                              {"c", "x", -2},
                              {"c", "y", -2},
                              {"s", "x", -1},
                              {"s", "y", -1},
                              {"x", "y", 1},
                              {"c", nullptr, 2},
                              {"s", nullptr, 1},
                              {"x", nullptr, -1},
                              {"y", nullptr, -1}},
                             -4);
  auto ha_zu = make_entry({"x", "y", "s", "c"}, {"u"},
                          {{"c", "s", 1},
                           {"c", "x", -1},
                           {"c", "y", -1},
                           {"s", "u", 1},
                           {"u", "x", 1},
                           {"u", "y", 1},
                           {"x", "y", 1},
                           {"c", nullptr, 1},
                           {"s", nullptr, 1},
                           {"u", nullptr, 1}},
                          -4);
  lib.set(GateKind::HA, ModelVariant::Plain, ha_plain);
  lib.set(GateKind::HA, ModelVariant::Unit, ha_zu);
  lib.set(GateKind::HA, ModelVariant::ZeroInput, ha_zu);

  auto fa_plain = make_entry({"x", "y", "z", "s", "c"}, {},
                             {{"c", "s", 2},
                              {"c", "x", -2},
                              {"c", "y", -2},
                              {"c", "z", -2},
                              {"s", "x", -1},
                              {"s", "y", -1},
                              {"s", "z", -1},
                              {"x", "y", 1},
                              {"x", "z", 1},
                              {"y", "z", 1}},
                             -4);
  auto fa_zu = make_entry({"x", "y", "z", "s", "c"}, {"u"},
                          {{"c", "s", 1},
                           {"c", "x", -1},
                           {"c", "y", -1},
                           {"c", "z", -1},
                           {"s", "u", -1},
                           {"s", "y", -1},
                           {"u", "x", -1},
                           {"u", "y", 1},
                           {"u", "z", -1},
                           {"x", "z", 1}},
                          -4);
  lib.set(GateKind::FA, ModelVariant::Plain, fa_plain);
  lib.set(GateKind::FA, ModelVariant::Unit, fa_zu);
  lib.set(GateKind::FA, ModelVariant::ZeroInput, fa_zu);
  return lib;
}

}  // namespace

const GateLibrary& GateLibrary::standard() {
  static const GateLibrary lib = build_standard_library();
  return lib;
}

bool GateLibrary::has(GateKind kind, ModelVariant variant) const {
  return entries_.count({kind, variant}) != 0;
}

const LibraryEntry& GateLibrary::entry(GateKind kind, ModelVariant variant) const {
  auto it = entries_.find({kind, variant});
  if (it == entries_.end())
    throw Error("gate library has no entry for " + gate_kind_name(kind) + "/" +
                variant_name(variant));
  return it->second;
}

void GateLibrary::set(GateKind kind, ModelVariant variant, LibraryEntry entry) {
  entries_[{kind, variant}] = std::move(entry);
}

namespace {

std::string gate_var(std::size_t gate_index, const std::string& local) {
  return "g" + std::to_string(gate_index) + "." + local;
}

class Renames {
 public:
  const std::string& resolve(const std::string& name) const {
    const std::string* cur = &name;
    auto it = map_.find(*cur);
    while (it != map_.end()) {
      cur = &it->second;
      it = map_.find(*cur);
    }
    return *cur;
  }
  void add(const std::string& from, const std::string& to) { map_[from] = to; }

 private:
  std::map<std::string, std::string> map_;
};

}  // namespace

CompiledModel compile(const Circuit& circuit, const GateLibrary& library,
                      const VariantSelection& variants, bool merge) {
  validate(circuit);

  CompiledModel out;
  out.primary_inputs = circuit.primary_inputs;
  out.primary_outputs = circuit.primary_outputs;

  // One renamed penalty model per gate; inverted pins are folded into the
  // gate's local model before any wiring.
  IsingModel& model = out.model;
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const auto& gate = circuit.gates[g];
    const LibraryEntry& entry = library.entry(gate.kind, variants.for_kind(gate.kind));
    const GateSpec& spec = gate_kind_spec(gate.kind);

    IsingModel local = entry.model;
    for (std::size_t i = 0; i < gate.inputs.size(); ++i)
      if (gate.inputs[i].inverted) local = negate_variable(local, spec.inputs[i]);
    for (std::size_t i = 0; i < gate.outputs.size(); ++i)
      if (gate.outputs[i].inverted) local = negate_variable(local, spec.outputs[i]);

    for (const auto& var : local.variables()) model.add_variable(gate_var(g, var));
    for (const auto& [var, w] : local.linear_terms()) model.add_linear(gate_var(g, var), w);
    for (const auto& [pair, w] : local.quadratic_terms())
      model.add_quadratic(gate_var(g, pair.first), gate_var(g, pair.second), w);
    model.add_offset(local.offset());
    out.per_gate_mu.push_back(entry.mu);
  }

  // Uncolored node per primary net.
  std::set<std::string> primary_nets(circuit.primary_inputs.begin(),
                                     circuit.primary_inputs.end());
  primary_nets.insert(circuit.primary_outputs.begin(), circuit.primary_outputs.end());
  for (const auto& net : primary_nets) model.add_variable(net);
  for (const auto& net : primary_nets) out.net_map[net] = net;

  // Wire every net: a -1 edge from its driver node to each consumer node.
  std::map<std::string, std::string> hub;
  for (const auto& net : circuit.primary_inputs) hub[net] = net;
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const GateSpec& spec = gate_kind_spec(circuit.gates[g].kind);
    for (std::size_t i = 0; i < circuit.gates[g].outputs.size(); ++i)
      hub[circuit.gates[g].outputs[i].net] = gate_var(g, spec.outputs[i]);
  }
  std::vector<std::pair<std::string, std::string>> wires;
  auto add_wire = [&](const std::string& net, const std::string& spoke) {
    const std::string& h = hub.at(net);
    model.add_quadratic(h, spoke, -1);
    wires.emplace_back(h, spoke);
  };
  for (std::size_t g = 0; g < circuit.gates.size(); ++g) {
    const GateSpec& spec = gate_kind_spec(circuit.gates[g].kind);
    for (std::size_t i = 0; i < circuit.gates[g].inputs.size(); ++i)
      add_wire(circuit.gates[g].inputs[i].net, gate_var(g, spec.inputs[i]));
  }
  for (const auto& net : circuit.primary_outputs) add_wire(net, net);

  out.wire_edge_count = wires.size();
  out.expected_ground_energy = -static_cast<Coef>(wires.size());
  for (Coef mu : out.per_gate_mu) out.expected_ground_energy += mu;

  if (merge) {
    // Wire components with at most one colored node contract to a single
    // node; others keep their edges (u-variant gates color input pins).
    std::map<std::string, std::string> parent;
    std::function<std::string(std::string)> find = [&](std::string v) {
      while (true) {
        auto it = parent.find(v);
        if (it == parent.end() || it->second == v) return v;
        v = it->second;
      }
    };
    for (const auto& [u, v] : wires) {
      auto ru = find(u), rv = find(v);
      if (ru != rv) parent[ru] = rv;
    }
    std::map<std::string, int> colored_count;
    std::set<std::string> component_nodes;
    for (const auto& [u, v] : wires) {
      component_nodes.insert(u);
      component_nodes.insert(v);
    }
    for (const auto& node : component_nodes)
      if (model.linear(node) != 0) ++colored_count[find(node)];

    Renames renames;
    for (const auto& [u, v] : wires) {
      if (colored_count[find(u)] > 1) continue;
      const std::string& a = renames.resolve(u);
      const std::string& b = renames.resolve(v);
      if (a == b)
        throw Error("wire component around '" + u + "' contracted onto itself");
      std::string keep, drop;
      if (model.linear(a) != 0) {
        keep = a;
        drop = b;
      } else if (model.linear(b) != 0) {
        keep = b;
        drop = a;
      } else {
        keep = std::min(a, b);
        drop = std::max(a, b);
      }
      try {
        model = merge_nodes(model, keep, drop);
      } catch (const Error& e) {
        throw Error("merging wire component around '" + u + "': " + e.what());
      }
      renames.add(drop, keep);
    }
    for (auto& [net, var] : out.net_map) var = renames.resolve(var);
    out.merged = true;
  }
  return out;
}

namespace {

SpinAssignment clamp_nets(const CompiledModel& compiled,
                          const std::map<std::string, bool>& values) {
  SpinAssignment clamps;
  for (const auto& [net, value] : values)
    clamps.set(compiled.net_map.at(net), bool_to_spin(value));
  return clamps;
}

}  // namespace

std::map<std::string, bool> forward_simulate(const CompiledModel& compiled,
                                             const std::map<std::string, bool>& inputs,
                                             const SolverChoice& solver) {
  for (const auto& net : compiled.primary_inputs)
    if (!inputs.count(net)) throw Error("missing value for primary input '" + net + "'");
  for (const auto& [net, value] : inputs)
    if (std::find(compiled.primary_inputs.begin(), compiled.primary_inputs.end(), net) ==
        compiled.primary_inputs.end())
      throw Error("value supplied for '" + net + "', which is not a primary input");

  const SpinAssignment clamps = clamp_nets(compiled, inputs);
  std::map<std::string, bool> outputs;

  if (solver.kind == SolverChoice::Kind::Exact) {
    EnumerateOptions opts;
    opts.free_limit = solver.free_limit;
    opts.threads = solver.threads;
    const auto report = enumerate_ground_states(compiled.model, clamps, opts);
    if (report.min_energy != compiled.expected_ground_energy)
      throw SolverFailure("exact minimum " + std::to_string(report.min_energy) +
                          " differs from expected ground energy " +
                          std::to_string(compiled.expected_ground_energy));
    for (const auto& net : compiled.primary_outputs) {
      const auto& var = compiled.net_map.at(net);
      const Spin value = report.ground_states.front().at(var);
      for (const auto& state : report.ground_states)
        if (state.at(var) != value)
          throw SolverFailure("output '" + net + "' is not uniquely determined");
      outputs[net] = spin_to_bool(value);
    }
    return outputs;
  }

  const auto result =
      anneal(compiled.model, clamps, solver.schedule, compiled.expected_ground_energy,
             solver.threads);
  if (!result.certified)
    throw SolverFailure("annealer stopped at energy " + std::to_string(result.best_energy) +
                        ", expected ground energy " +
                        std::to_string(compiled.expected_ground_energy));
  for (const auto& net : compiled.primary_outputs)
    outputs[net] = spin_to_bool(result.best_assignment.at(compiled.net_map.at(net)));
  return outputs;
}

std::vector<std::map<std::string, bool>> backward_simulate(
    const CompiledModel& compiled, const std::map<std::string, bool>& outputs,
    const SolverChoice& solver) {
  for (const auto& [net, value] : outputs)
    if (std::find(compiled.primary_outputs.begin(), compiled.primary_outputs.end(), net) ==
        compiled.primary_outputs.end())
      throw Error("clamp supplied for '" + net + "', which is not a primary output");

  const SpinAssignment clamps = clamp_nets(compiled, outputs);
  std::set<std::map<std::string, bool>> distinct;

  auto project = [&](const SpinAssignment& state) {
    std::map<std::string, bool> in;
    for (const auto& net : compiled.primary_inputs)
      in[net] = spin_to_bool(state.at(compiled.net_map.at(net)));
    return in;
  };

  if (solver.kind == SolverChoice::Kind::Exact) {
    EnumerateOptions opts;
    opts.free_limit = solver.free_limit;
    opts.threads = solver.threads;
    const auto report = enumerate_ground_states(compiled.model, clamps, opts);
    if (report.min_energy > compiled.expected_ground_energy)
      throw Unsatisfiable("no input assignment is consistent with the clamped outputs");
    for (const auto& state : report.ground_states) distinct.insert(project(state));
  } else {
    AnnealSchedule schedule = solver.schedule;
    schedule.stop_at_target = false;  // collect every certified restart
    const auto result = anneal(compiled.model, clamps, schedule,
                               compiled.expected_ground_energy, solver.threads);
    if (result.certified_assignments.empty())
      throw SolverFailure("annealer reached energy " + std::to_string(result.best_energy) +
                          " but never the expected ground energy " +
                          std::to_string(compiled.expected_ground_energy));
    for (const auto& state : result.certified_assignments) distinct.insert(project(state));
  }
  return {distinct.begin(), distinct.end()};
}

}  // namespace spinlogic
