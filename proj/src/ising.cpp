#include "spinlogic/ising.hpp"

#include <algorithm>

namespace spinlogic {

SpinAssignment::SpinAssignment(std::initializer_list<std::pair<const std::string, Spin>> init) {
  for (const auto& [var, value] : init) set(var, value);
}

void SpinAssignment::set(const std::string& var, Spin value) {
  if (value != -1 && value != +1)
    throw Error("spin value for '" + var + "' must be -1 or +1, got " + std::to_string(value));
  values_[var] = value;
}

Spin SpinAssignment::at(const std::string& var) const {
  auto it = values_.find(var);
  if (it == values_.end()) throw Error("assignment has no value for variable '" + var + "'");
  return it->second;
}

void IsingModel::add_variable(const std::string& name) {
  if (name.empty()) throw Error("variable name must be non-empty");
  variables_.insert(name);
}

void IsingModel::add_linear(const std::string& v, Coef w) {
  if (!has_variable(v)) throw Error("unknown variable '" + v + "' in linear term");
  Coef& slot = linear_[v];
  slot += w;
  if (slot == 0) linear_.erase(v);
}

void IsingModel::add_quadratic(const std::string& u, const std::string& v, Coef w) {
  if (u == v) throw Error("quadratic term requires two distinct variables, got '" + u + "' twice");
  if (!has_variable(u)) throw Error("unknown variable '" + u + "' in quadratic term");
  if (!has_variable(v)) throw Error("unknown variable '" + v + "' in quadratic term");
  VarPair key = make_pair_key(u, v);
  Coef& slot = quadratic_[key];
  slot += w;
  if (slot == 0) quadratic_.erase(key);
}

Coef IsingModel::linear(const std::string& v) const {
  auto it = linear_.find(v);
  return it == linear_.end() ? 0 : it->second;
}

Coef IsingModel::quadratic(const std::string& u, const std::string& v) const {
  auto it = quadratic_.find(make_pair_key(u, v));
  return it == quadratic_.end() ? 0 : it->second;
}

bool IsingModel::is_unit() const {
  auto unit = [](Coef w) { return w == 1 || w == -1; };
  return std::all_of(linear_.begin(), linear_.end(), [&](const auto& t) { return unit(t.second); }) &&
         std::all_of(quadratic_.begin(), quadratic_.end(),
                     [&](const auto& t) { return unit(t.second); });
}

Coef IsingModel::max_abs_coefficient() const {
  Coef m = 0;
  for (const auto& [v, w] : linear_) m = std::max(m, w < 0 ? -w : w);
  for (const auto& [p, w] : quadratic_) m = std::max(m, w < 0 ? -w : w);
  return m;
}

bool IsingModel::operator==(const IsingModel& other) const {
  return variables_ == other.variables_ && linear_ == other.linear_ &&
         quadratic_ == other.quadratic_ && offset_ == other.offset_;
}

Coef energy(const IsingModel& model, const SpinAssignment& s) {
  for (const auto& [var, value] : s.values())
    if (!model.has_variable(var)) throw Error("assignment names unknown variable '" + var + "'");
  for (const auto& var : model.variables())
    if (!s.contains(var)) throw Error("assignment is missing variable '" + var + "'");
  Coef e = model.offset();
  for (const auto& [var, w] : model.linear_terms()) e += w * s.at(var);
  for (const auto& [pair, w] : model.quadratic_terms()) e += w * s.at(pair.first) * s.at(pair.second);
  return e;
}

}  // namespace spinlogic
