#include "spinlogic/gate_spec.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace spinlogic {

std::vector<std::string> GateSpec::variables() const {
  std::vector<std::string> vars = inputs;
  vars.insert(vars.end(), outputs.begin(), outputs.end());
  return vars;
}

bool GateSpec::is_function_graph() const {
  std::set<std::vector<Spin>> seen_inputs;
  for (const auto& row : relation) {
    std::vector<Spin> in(row.begin(), row.begin() + static_cast<long>(inputs.size()));
    if (!seen_inputs.insert(in).second) return false;
  }
  return seen_inputs.size() == (std::size_t{1} << inputs.size());
}

void validate(const GateSpec& spec) {
  if (spec.inputs.empty() || spec.inputs.size() > 4)
    throw Error("gate spec needs 1 to 4 inputs, got " + std::to_string(spec.inputs.size()));
  if (spec.outputs.empty() || spec.outputs.size() > 2)
    throw Error("gate spec needs 1 or 2 outputs, got " + std::to_string(spec.outputs.size()));
  std::set<std::string> names;
  for (const auto& v : spec.variables()) {
    if (v.empty()) throw Error("gate spec variable names must be non-empty");
    if (!names.insert(v).second) throw Error("duplicate gate spec variable '" + v + "'");
  }
  for (const auto& row : spec.relation) {
    if (row.size() != spec.arity())
      throw Error("gate spec row has " + std::to_string(row.size()) + " values, expected " +
                  std::to_string(spec.arity()));
    for (Spin s : row)
      if (s != -1 && s != +1) throw Error("gate spec rows must contain only -1 or +1");
  }
}

namespace {

GateSpec truth_table(std::vector<std::string> inputs, std::vector<std::string> outputs,
                     unsigned (*fn)(unsigned)) {
  GateSpec spec;
  spec.inputs = std::move(inputs);
  spec.outputs = std::move(outputs);
  const std::size_t nin = spec.inputs.size();
  const std::size_t nout = spec.outputs.size();
  for (unsigned in = 0; in < (1u << nin); ++in) {
    const unsigned out = fn(in);
    std::vector<Spin> row;
    for (std::size_t i = 0; i < nin; ++i) row.push_back((in >> i) & 1u ? +1 : -1);
    for (std::size_t i = 0; i < nout; ++i) row.push_back((out >> i) & 1u ? +1 : -1);
    spec.relation.insert(std::move(row));
  }
  return spec;
}

const std::map<std::string, GateSpec>& builtin_table() {
  static const std::map<std::string, GateSpec> table = [] {
    std::map<std::string, GateSpec> t;
    t["AND"] = truth_table({"a", "b"}, {"x"}, [](unsigned v) { return v == 3u ? 1u : 0u; });
    t["OR"] = truth_table({"a", "b"}, {"x"}, [](unsigned v) { return v != 0u ? 1u : 0u; });
    t["XOR"] = truth_table({"a", "b"}, {"x"},
                           [](unsigned v) { return unsigned(__builtin_popcount(v)) & 1u; });
    t["XNOR"] = truth_table({"a", "b"}, {"x"},
                            [](unsigned v) { return ~unsigned(__builtin_popcount(v)) & 1u; });
    t["NAND"] = truth_table({"a", "b"}, {"x"}, [](unsigned v) { return v == 3u ? 0u : 1u; });
    t["NOR"] = truth_table({"a", "b"}, {"x"}, [](unsigned v) { return v != 0u ? 0u : 1u; });
    t["HA"] = truth_table({"x", "y"}, {"s", "c"}, [](unsigned v) {
      const unsigned x = v & 1u, y = (v >> 1) & 1u;
      return (x ^ y) | ((x & y) << 1);
    });
    t["FA"] = truth_table({"x", "y", "z"}, {"s", "c"}, [](unsigned v) {
      const unsigned n = unsigned(__builtin_popcount(v & 7u));
      return (n & 1u) | ((n >= 2u ? 1u : 0u) << 1);
    });
    return t;
  }();
  return table;
}

}  // namespace

GateSpec builtin_gate_spec(const std::string& name) {
  auto it = builtin_table().find(name);
  if (it == builtin_table().end()) throw Error("unknown built-in gate '" + name + "'");
  return it->second;
}

const std::vector<std::string>& builtin_gate_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, spec] : builtin_table()) n.push_back(name);
    return n;
  }();
  return names;
}

GateSpec parse_gate_spec(std::string_view text) {
  GateSpec spec;
  bool saw_inputs = false, saw_outputs = false;
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
    if (tokens[0] == "inputs") {
      if (saw_inputs) throw ParseError("duplicate inputs line", line_no);
      saw_inputs = true;
      spec.inputs.assign(tokens.begin() + 1, tokens.end());
    } else if (tokens[0] == "outputs") {
      if (saw_outputs) throw ParseError("duplicate outputs line", line_no);
      saw_outputs = true;
      spec.outputs.assign(tokens.begin() + 1, tokens.end());
    } else if (tokens[0] == "row") {
      if (!saw_inputs || !saw_outputs)
        throw ParseError("row before inputs/outputs declarations", line_no);
      if (tokens.size() - 1 != spec.arity())
        throw ParseError("row has " + std::to_string(tokens.size() - 1) + " values, expected " +
                             std::to_string(spec.arity()),
                         line_no);
      std::vector<Spin> row;
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        std::string_view tok = tokens[i];
        if (!tok.empty() && tok[0] == '+') tok.remove_prefix(1);
        int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size() || (v != -1 && v != +1))
          throw ParseError("row values must be -1 or +1, got '" + tokens[i] + "'", line_no);
        row.push_back(v);
      }
      if (!spec.relation.insert(row).second) throw ParseError("duplicate row", line_no);
    } else {
      throw ParseError("unknown declaration '" + tokens[0] + "'", line_no);
    }
  }
  if (!saw_inputs || !saw_outputs) throw Error("gate spec needs inputs and outputs lines");
  validate(spec);
  return spec;
}

std::string serialize(const GateSpec& spec) {
  std::ostringstream out;
  out << "inputs";
  for (const auto& v : spec.inputs) out << " " << v;
  out << "\noutputs";
  for (const auto& v : spec.outputs) out << " " << v;
  out << "\n";
  for (const auto& row : spec.relation) {
    out << "row";
    for (Spin s : row) out << " " << (s > 0 ? "+1" : "-1");
    out << "\n";
  }
  return out.str();
}

}  // namespace spinlogic
