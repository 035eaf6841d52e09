#include "spinlogic/transforms.hpp"

namespace spinlogic {

BitAssignment::BitAssignment(std::initializer_list<std::pair<const std::string, int>> init) {
  for (const auto& [var, value] : init) set(var, value);
}

void BitAssignment::set(const std::string& var, int value) {
  if (value != 0 && value != 1)
    throw Error("binary value for '" + var + "' must be 0 or 1, got " + std::to_string(value));
  values_[var] = value;
}

int BitAssignment::at(const std::string& var) const {
  auto it = values_.find(var);
  if (it == values_.end()) throw Error("assignment has no value for variable '" + var + "'");
  return it->second;
}

void QuboModel::add_variable(const std::string& name) {
  if (name.empty()) throw Error("variable name must be non-empty");
  variables_.insert(name);
}

void QuboModel::add_linear(const std::string& v, Coef w) {
  if (!has_variable(v)) throw Error("unknown variable '" + v + "' in linear term");
  Coef& slot = linear_[v];
  slot += w;
  if (slot == 0) linear_.erase(v);
}

void QuboModel::add_quadratic(const std::string& u, const std::string& v, Coef w) {
  if (u == v) throw Error("quadratic term requires two distinct variables, got '" + u + "' twice");
  if (!has_variable(u)) throw Error("unknown variable '" + u + "' in quadratic term");
  if (!has_variable(v)) throw Error("unknown variable '" + v + "' in quadratic term");
  VarPair key = make_pair_key(u, v);
  Coef& slot = quadratic_[key];
  slot += w;
  if (slot == 0) quadratic_.erase(key);
}

Coef QuboModel::linear(const std::string& v) const {
  auto it = linear_.find(v);
  return it == linear_.end() ? 0 : it->second;
}

Coef QuboModel::quadratic(const std::string& u, const std::string& v) const {
  auto it = quadratic_.find(make_pair_key(u, v));
  return it == quadratic_.end() ? 0 : it->second;
}

bool QuboModel::operator==(const QuboModel& other) const {
  return variables_ == other.variables_ && linear_ == other.linear_ &&
         quadratic_ == other.quadratic_ && offset_ == other.offset_;
}

Coef energy(const QuboModel& model, const BitAssignment& x) {
  for (const auto& [var, value] : x.values())
    if (!model.has_variable(var)) throw Error("assignment names unknown variable '" + var + "'");
  for (const auto& var : model.variables())
    if (!x.contains(var)) throw Error("assignment is missing variable '" + var + "'");
  Coef e = model.offset();
  for (const auto& [var, w] : model.linear_terms()) e += w * x.at(var);
  for (const auto& [pair, w] : model.quadratic_terms()) e += w * x.at(pair.first) * x.at(pair.second);
  return e;
}

IsingModel negate_variable(const IsingModel& model, const std::string& v) {
  if (!model.has_variable(v)) throw Error("cannot negate unknown variable '" + v + "'");
  IsingModel out;
  for (const auto& var : model.variables()) out.add_variable(var);
  for (const auto& [var, w] : model.linear_terms()) out.add_linear(var, var == v ? -w : w);
  for (const auto& [pair, w] : model.quadratic_terms()) {
    const bool incident = pair.first == v || pair.second == v;
    out.add_quadratic(pair.first, pair.second, incident ? -w : w);
  }
  out.add_offset(model.offset());
  return out;
}

IsingModel merge_nodes(const IsingModel& model, const std::string& keep, const std::string& drop) {
  if (keep == drop) throw Error("merge of '" + keep + "' with itself would create a self-pair");
  if (!model.has_variable(keep)) throw Error("cannot merge unknown variable '" + keep + "'");
  if (!model.has_variable(drop)) throw Error("cannot merge unknown variable '" + drop + "'");
  if (model.quadratic(keep, drop) != -1)
    throw Error("merge of '" + keep + "' and '" + drop +
                "' requires a wire edge with coefficient -1 between them");
  if (model.linear(keep) != 0 && model.linear(drop) != 0)
    throw Error("merge of '" + keep + "' and '" + drop +
                "' would combine two colored nodes (both carry linear terms)");

  IsingModel out;
  for (const auto& var : model.variables())
    if (var != drop) out.add_variable(var);
  for (const auto& [var, w] : model.linear_terms()) out.add_linear(var == drop ? keep : var, w);
  for (const auto& [pair, w] : model.quadratic_terms()) {
    std::string u = pair.first == drop ? keep : pair.first;
    std::string v = pair.second == drop ? keep : pair.second;
    if (u == v) continue;  // the wire edge itself
    out.add_quadratic(u, v, w);
  }
  // The contracted edge contributed -1 whenever the two spins agreed.
  out.add_offset(model.offset() - 1);
  return out;
}

IsingModel qubo_to_ising(const QuboModel& q) {
  IsingModel out;
  for (const auto& var : q.variables()) out.add_variable(var);
  Coef offset = 4 * q.offset();
  for (const auto& [var, w] : q.linear_terms()) {
    out.add_linear(var, 2 * w);
    offset += 2 * w;
  }
  for (const auto& [pair, w] : q.quadratic_terms()) {
    out.add_quadratic(pair.first, pair.second, w);
    out.add_linear(pair.first, w);
    out.add_linear(pair.second, w);
    offset += w;
  }
  out.add_offset(offset);
  return out;
}

QuboModel ising_to_qubo(const IsingModel& m) {
  QuboModel out;
  for (const auto& var : m.variables()) out.add_variable(var);
  Coef offset = m.offset();
  for (const auto& [var, w] : m.linear_terms()) {
    out.add_linear(var, 2 * w);
    offset -= w;
  }
  for (const auto& [pair, w] : m.quadratic_terms()) {
    out.add_quadratic(pair.first, pair.second, 4 * w);
    out.add_linear(pair.first, -2 * w);
    out.add_linear(pair.second, -2 * w);
    offset += w;
  }
  out.add_offset(offset);
  return out;
}

}  // namespace spinlogic
