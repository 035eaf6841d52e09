#include "spinlogic/multiplier.hpp"

#include <algorithm>
#include <string>

namespace spinlogic {

namespace {

void check_spec(const MultiplierSpec& spec) {
  if (spec.n < 2) throw Error("multiplier width must be at least 2");
  if (spec.n > 16) throw Error("multiplier width above 16 bits is not supported");
}

std::string bit_net(const char* base, int i) { return base + std::to_string(i); }

std::string product_net(int i, int j) {
  return "p" + std::to_string(i) + "_" + std::to_string(j);
}

}  // namespace

Circuit build_multiplier(const MultiplierSpec& spec) {
  check_spec(spec);
  const int n = spec.n;
  const int lo = spec.odd_assumption ? 1 : 0;  // first operand bit that is a variable

  Circuit c;
  for (int i = lo; i < n; ++i) c.primary_inputs.push_back(bit_net("x", i));
  for (int j = lo; j < n; ++j) c.primary_inputs.push_back(bit_net("y", j));
  for (int k = lo; k < 2 * n; ++k) c.primary_outputs.push_back(bit_net("s", k));

  // Partial products p(i,j) = x_i AND y_j. Under the odd assumption row 0
  // and column 0 are the operand bits themselves. The y pin comes first:
  // the unit-variant AND colors its second input, and keeping the colored
  // rows on the x side matches the layout the adder array expects.
  auto product = [&](int i, int j) -> std::string {
    if (spec.odd_assumption) {
      if (i == 0) return bit_net("y", j);  // y_0 = 1 folds away; j >= 1 here
      if (j == 0) return bit_net("x", i);
    }
    return product_net(i, j);
  };
  for (int j = lo; j < n; ++j)
    for (int i = lo; i < n; ++i) {
      GateInstance gate;
      gate.kind = GateKind::AND;
      gate.inputs = {{bit_net("y", j), false}, {bit_net("x", i), false}};
      gate.outputs = {{(!spec.odd_assumption && i == 0 && j == 0) ? bit_net("s", 0)
                                                                  : product_net(i, j),
                       false}};
      c.gates.push_back(std::move(gate));
    }

  // Adder array: row r folds the shifted row-r partial products into the
  // running sum. Cell i of row r handles weight r+i and consumes running[i+1];
  // cell 0 emits the final product bit s_r; the top cell's carry feeds the
  // next row's top cell (and becomes s_{2n-1} after the last row).
  std::vector<std::string> running(static_cast<std::size_t>(n));
  for (int i = 1; i < n; ++i) running[static_cast<std::size_t>(i)] = product(i, 0);
  // Weight 0 needs no adder: it is the constant 1 (odd case) or p(0,0) = s_0.

  auto add_gate = [&](GateKind kind, std::vector<std::string> ins, std::vector<std::string> outs) {
    GateInstance gate;
    gate.kind = kind;
    for (auto& net : ins) gate.inputs.push_back({std::move(net), false});
    for (auto& net : outs) gate.outputs.push_back({std::move(net), false});
    c.gates.push_back(std::move(gate));
  };
  auto carry_net = [&](int r, int i) {
    return "c" + std::to_string(r) + "_" + std::to_string(i);
  };
  auto sum_net = [&](int r, int i) { return "t" + std::to_string(r) + "_" + std::to_string(i); };

  std::string top_carry;  // carry-out of the previous row's top cell
  for (int r = 1; r < n; ++r) {
    const bool last_row = r == n - 1;
    std::vector<std::string> next_running(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      const std::string sum_out =
          (i == 0) ? bit_net("s", r) : (last_row ? bit_net("s", r + i) : sum_net(r, i));
      const std::string carry_out =
          (last_row && i == n - 1) ? bit_net("s", 2 * n - 1) : carry_net(r, i);
      if (i == 0) {
        add_gate(GateKind::HA, {product(0, r), running[1]}, {sum_out, carry_out});
      } else if (i < n - 1) {
        add_gate(GateKind::FA, {product(i, r), running[static_cast<std::size_t>(i) + 1],
                                carry_net(r, i - 1)},
                 {sum_out, carry_out});
      } else if (r == 1) {
        // Row 0 has no bit of weight n, so the first row tops out with a
        // half adder.
        add_gate(GateKind::HA, {product(n - 1, r), carry_net(r, i - 1)}, {sum_out, carry_out});
      } else {
        add_gate(GateKind::FA, {product(n - 1, r), top_carry, carry_net(r, i - 1)},
                 {sum_out, carry_out});
      }
      if (i > 0) next_running[static_cast<std::size_t>(i)] = sum_out;
    }
    top_carry = carry_net(r, n - 1);
    running = std::move(next_running);
  }

  validate(c);
  return c;
}

VariantSelection multiplier_variants() {
  VariantSelection v;
  v.default_variant = ModelVariant::ZeroInput;
  v.per_kind[GateKind::AND] = ModelVariant::Unit;
  return v;
}

MultiplierStats model_stats(const MultiplierSpec& spec, const VariantSelection& variants) {
  const Circuit c = build_multiplier(spec);
  MultiplierStats stats;
  for (const auto& gate : c.gates) {
    if (gate.kind == GateKind::AND) ++stats.and_gates;
    if (gate.kind == GateKind::HA) ++stats.half_adders;
    if (gate.kind == GateKind::FA) ++stats.full_adders;
  }
  const CompiledModel compiled = compile(c, GateLibrary::standard(), variants, true);
  stats.model_nodes = compiled.model.num_variables();
  stats.model_edges = compiled.model.num_quadratic();
  stats.max_abs_coef = compiled.model.max_abs_coefficient();
  return stats;
}

namespace {

void check_operand(const MultiplierSpec& spec, std::uint64_t value, const char* name) {
  if (value >= (std::uint64_t{1} << spec.n))
    throw Error(std::string(name) + " does not fit in " + std::to_string(spec.n) + " bits");
  if (spec.odd_assumption && (value & 1u) == 0)
    throw Error(std::string(name) + " must be odd under the odd-operand assumption");
}

}  // namespace

std::uint64_t multiply(const MultiplierSpec& spec, std::uint64_t x, std::uint64_t y,
                       const SolverChoice& solver) {
  check_spec(spec);
  check_operand(spec, x, "x");
  check_operand(spec, y, "y");

  const Circuit c = build_multiplier(spec);
  const CompiledModel compiled = compile(c, GateLibrary::standard(), multiplier_variants(), true);

  std::map<std::string, bool> inputs;
  const int lo = spec.odd_assumption ? 1 : 0;
  for (int i = lo; i < spec.n; ++i) {
    inputs[bit_net("x", i)] = (x >> i) & 1u;
    inputs[bit_net("y", i)] = (y >> i) & 1u;
  }
  const auto outputs = forward_simulate(compiled, inputs, solver);

  std::uint64_t s = spec.odd_assumption ? 1u : 0u;
  for (int k = lo; k < 2 * spec.n; ++k)
    if (outputs.at(bit_net("s", k))) s |= std::uint64_t{1} << k;
  return s;
}

std::vector<std::pair<std::uint64_t, std::uint64_t>> factor(const MultiplierSpec& spec,
                                                            std::uint64_t s,
                                                            const SolverChoice& solver) {
  check_spec(spec);
  if (s >= (std::uint64_t{1} << (2 * spec.n)))
    throw Error("product does not fit in " + std::to_string(2 * spec.n) + " bits");
  if (spec.odd_assumption && (s & 1u) == 0)
    throw Error("product must be odd under the odd-operand assumption");

  const Circuit c = build_multiplier(spec);
  const CompiledModel compiled = compile(c, GateLibrary::standard(), multiplier_variants(), true);

  std::map<std::string, bool> outputs;
  const int lo = spec.odd_assumption ? 1 : 0;
  for (int k = lo; k < 2 * spec.n; ++k) outputs[bit_net("s", k)] = (s >> k) & 1u;

  const auto inputs = backward_simulate(compiled, outputs, solver);

  std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
  for (const auto& assignment : inputs) {
    std::uint64_t x = spec.odd_assumption ? 1u : 0u;
    std::uint64_t y = spec.odd_assumption ? 1u : 0u;
    for (int i = lo; i < spec.n; ++i) {
      if (assignment.at(bit_net("x", i))) x |= std::uint64_t{1} << i;
      if (assignment.at(bit_net("y", i))) y |= std::uint64_t{1} << i;
    }
    pairs.emplace(std::min(x, y), std::max(x, y));
  }
  return {pairs.begin(), pairs.end()};
}

}  // namespace spinlogic
