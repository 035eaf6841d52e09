#include "spinlogic/synth.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

#include "spinlogic/kernels.hpp"

namespace spinlogic {

namespace {

constexpr int kVariableCap = 7;
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();

std::vector<std::string> pick_ancilla_names(const GateSpec& spec, int num_ancilla) {
  std::set<std::string> taken;
  for (const auto& v : spec.variables()) taken.insert(v);
  static const char* preferred[] = {"u", "v", "w", "t"};
  std::vector<std::string> names;
  int serial = 0;
  while (static_cast<int>(names.size()) < num_ancilla) {
    std::string cand;
    if (names.size() < 4 && !taken.count(preferred[names.size()]))
      cand = preferred[names.size()];
    else
      do {
        cand = "anc" + std::to_string(serial++);
      } while (taken.count(cand));
    taken.insert(cand);
    names.push_back(cand);
  }
  return names;
}

}  // namespace

std::string objective_name(Objective o) {
  switch (o) {
    case Objective::MaxAbs: return "max_abs";
    case Objective::InputNum: return "input_num";
    case Objective::QuadNum: return "quad_num";
  }
  return "?";
}

ObjectivePriority parse_priority(const std::string& names) {
  ObjectivePriority priority{};
  std::array<bool, 3> seen{};
  std::istringstream in(names);
  std::string tok;
  std::size_t slot = 0;
  while (std::getline(in, tok, ',')) {
    Objective o;
    if (tok == "max_abs")
      o = Objective::MaxAbs;
    else if (tok == "input_num")
      o = Objective::InputNum;
    else if (tok == "quad_num")
      o = Objective::QuadNum;
    else
      throw Error("unknown objective '" + tok + "'");
    if (slot >= 3) throw Error("priority lists more than three objectives");
    if (seen[static_cast<std::size_t>(o)]) throw Error("objective '" + tok + "' repeated");
    seen[static_cast<std::size_t>(o)] = true;
    priority[slot++] = o;
  }
  if (slot != 3) throw Error("priority must list all three objectives");
  return priority;
}

std::array<Coef, 3> ObjectiveVector::in_priority_order() const {
  const std::array<Coef, 3> raw{max_abs, input_num, quad_num};
  return {raw[static_cast<std::size_t>(priority[0])], raw[static_cast<std::size_t>(priority[1])],
          raw[static_cast<std::size_t>(priority[2])]};
}

std::size_t ConstraintSystem::num_equalities() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.consistent && g.completions.size() == 1;
  return n;
}

std::size_t ConstraintSystem::num_disjunctions() const {
  std::size_t n = 0;
  for (const auto& g : groups) n += g.consistent && g.completions.size() > 1;
  return n;
}

std::size_t ConstraintSystem::num_inequalities() const {
  std::size_t n = 0;
  for (const auto& g : groups) {
    if (g.consistent && g.completions.size() > 1)
      n += g.completions.size();  // every completion bounded below by mu
    else if (!g.consistent)
      n += g.completions.size();  // every completion >= mu + 1
  }
  return n;
}

std::string ConstraintSystem::to_string() const {
  std::ostringstream out;
  auto term_name = [&](const Term& t) {
    return t.quadratic ? t.u + "*" + t.v : t.u;
  };
  auto expr = [&](const Completion& c) {
    std::string s;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      s += c.signs[t] > 0 ? " +" : " -";
      s += term_name(terms[t]);
    }
    return s;
  };
  for (const auto& g : groups) {
    out << "row";
    for (const auto& [var, value] : g.row.values())
      out << " " << var << "=" << (value > 0 ? "+1" : "-1");
    out << (g.consistent ? "  [consistent]\n" : "  [inconsistent]\n");
    if (g.consistent) {
      if (g.completions.size() == 1) {
        out << " " << expr(g.completions[0]) << " == mu\n";
      } else {
        for (std::size_t i = 0; i < g.completions.size(); ++i)
          out << (i == 0 ? "  one of:" : "       or") << expr(g.completions[i]) << " == mu\n";
        for (const auto& c : g.completions) out << " " << expr(c) << " >= mu\n";
      }
    } else {
      for (const auto& c : g.completions) out << " " << expr(c) << " >= mu + 1\n";
    }
  }
  return out.str();
}

ConstraintSystem build_constraints(const GateSpec& spec, int num_ancilla) {
  validate(spec);
  if (num_ancilla < 0) throw Error("ancilla count must be non-negative");
  const int nio = static_cast<int>(spec.arity());
  const int n = nio + num_ancilla;
  if (n > kVariableCap)
    throw Error("variable cap exceeded: " + std::to_string(n) + " variables, limit is " +
                std::to_string(kVariableCap));

  ConstraintSystem cs;
  cs.ancillas = pick_ancilla_names(spec, num_ancilla);
  cs.variables = spec.variables();
  cs.variables.insert(cs.variables.end(), cs.ancillas.begin(), cs.ancillas.end());

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      cs.terms.push_back({true, cs.variables[static_cast<std::size_t>(i)],
                          cs.variables[static_cast<std::size_t>(j)]});
  for (int i = 0; i < n; ++i)
    cs.terms.push_back({false, cs.variables[static_cast<std::size_t>(i)], ""});

  const auto io_vars = spec.variables();
  for (unsigned g = 0; g < (1u << nio); ++g) {
    ConstraintSystem::Group group;
    std::vector<Spin> row_values(static_cast<std::size_t>(nio));
    for (int k = 0; k < nio; ++k) {
      row_values[static_cast<std::size_t>(k)] = (g >> k) & 1u ? +1 : -1;
      group.row.set(io_vars[static_cast<std::size_t>(k)], row_values[static_cast<std::size_t>(k)]);
    }
    group.consistent = spec.contains_row(row_values);
    for (unsigned a = 0; a < (1u << num_ancilla); ++a) {
      ConstraintSystem::Completion comp;
      comp.assignment = group.row;
      std::vector<Spin> full(static_cast<std::size_t>(n));
      for (int k = 0; k < nio; ++k) full[static_cast<std::size_t>(k)] = (g >> k) & 1u ? +1 : -1;
      for (int k = 0; k < num_ancilla; ++k) {
        const Spin s = (a >> k) & 1u ? +1 : -1;
        full[static_cast<std::size_t>(nio + k)] = s;
        comp.assignment.set(cs.ancillas[static_cast<std::size_t>(k)], s);
      }
      comp.signs.reserve(cs.terms.size());
      std::size_t idx = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++idx)
          comp.signs.push_back(static_cast<int8_t>(full[static_cast<std::size_t>(i)] *
                                                   full[static_cast<std::size_t>(j)]));
      for (int i = 0; i < n; ++i)
        comp.signs.push_back(static_cast<int8_t>(full[static_cast<std::size_t>(i)]));
      group.completions.push_back(std::move(comp));
    }
    cs.groups.push_back(std::move(group));
  }
  return cs;
}

namespace {

// Depth-first search over coefficient vectors. Coordinates follow canonical
// term order (quadratic pairs, then linear, in declared variable order).
// Subtrees are cut when no completion of the partial vector can satisfy the
// row constraints: with s = (#unassigned coords) * m slack per row,
//   (a) consistent group minima must still be able to meet:   spread <= 2s
//   (b) inconsistent rows must still be able to clear mu + 1: gap bound
// Branch-and-bound adds cuts on the partial objective vector, which is a
// component-wise lower bound of any completion's objectives.
class Search {
 public:
  Search(const ConstraintSystem& cs, int num_inputs, const ObjectivePriority& priority,
         bool objective_pruning)
      : priority_(priority), objective_pruning_(objective_pruning) {
    K_ = static_cast<int>(cs.terms.size());
    const int n = static_cast<int>(cs.variables.size());
    Q_ = n * (n - 1) / 2;
    nanc_ = static_cast<int>(cs.ancillas.size());
    const int groups = static_cast<int>(cs.groups.size());
    const int comps = 1 << nanc_;
    rows_ = groups * comps;
    padded_ = (rows_ + 7) & ~7;

    layout_.rows = rows_;
    layout_.num_groups = groups;
    layout_.anc_log2 = nanc_;
    layout_.consistent_mask.assign(static_cast<std::size_t>(padded_), 0u);

    sigma_.assign(static_cast<std::size_t>(K_),
                  std::vector<std::int32_t>(static_cast<std::size_t>(padded_), 0));
    lin_input_.assign(static_cast<std::size_t>(K_), false);
    for (int t = Q_; t < K_; ++t)
      lin_input_[static_cast<std::size_t>(t)] = (t - Q_) < num_inputs;

    has_consistent_ = has_inconsistent_ = false;
    for (int g = 0; g < groups; ++g) {
      const auto& group = cs.groups[static_cast<std::size_t>(g)];
      (group.consistent ? has_consistent_ : has_inconsistent_) = true;
      for (int c = 0; c < comps; ++c) {
        const int r = g * comps + c;
        layout_.consistent_mask[static_cast<std::size_t>(r)] = group.consistent ? ~0u : 0u;
        for (int t = 0; t < K_; ++t)
          sigma_[static_cast<std::size_t>(t)][static_cast<std::size_t>(r)] =
              group.completions[static_cast<std::size_t>(c)].signs[static_cast<std::size_t>(t)];
      }
    }

    // Padding rows behave as inconsistent completions pinned at +infinity.
    p_.assign(static_cast<std::size_t>(K_) + 1,
              std::vector<std::int32_t>(static_cast<std::size_t>(padded_), 0));
    for (auto& level : p_)
      for (int r = rows_; r < padded_; ++r)
        level[static_cast<std::size_t>(r)] = std::numeric_limits<std::int32_t>::max();
    coef_.assign(static_cast<std::size_t>(K_), 0);
  }

  bool feasible_exists() const { return has_consistent_; }

  /// Runs the search with coefficients in [-m, +m]. Keeps any previously
  /// found best (used by the ascending outer loop on MAX_ABS).
  void run(int m) {
    m_ = m;
    dfs(0, 0, 0, 0);
  }

  bool found() const { return found_; }
  const std::vector<Coef>& best_coefficients() const { return best_coef_; }
  Coef best_mu() const { return best_mu_; }
  std::array<Coef, 3> best_objectives() const { return best_obj_; }
  int quad_terms() const { return Q_; }

 private:
  std::array<Coef, 3> ordered(Coef max_abs, Coef input_num, Coef quad_num) const {
    const std::array<Coef, 3> raw{max_abs, input_num, quad_num};
    return {raw[static_cast<std::size_t>(priority_[0])],
            raw[static_cast<std::size_t>(priority_[1])],
            raw[static_cast<std::size_t>(priority_[2])]};
  }

  void dfs(int depth, int cur_max, int cur_inputs, int cur_quads) {
    const auto stats =
        kernels::row_stats(p_[static_cast<std::size_t>(depth)].data(), layout_);
    const std::int64_t slack = static_cast<std::int64_t>(K_ - depth) * m_;
    if (stats.max_consistent - stats.min_consistent > 2 * slack) return;
    if (has_inconsistent_ && stats.min_inconsistent - stats.max_consistent < 1 - 2 * slack)
      return;
    if (objective_pruning_ && found_ && ordered(cur_max, cur_inputs, cur_quads) > best_obj_)
      return;

    if (depth == K_) {
      if (stats.max_consistent != stats.min_consistent) return;
      if (has_inconsistent_ && stats.min_inconsistent - stats.max_consistent < 1) return;
      const auto obj = ordered(cur_max, cur_inputs, cur_quads);
      if (!found_ || obj < best_obj_ ||
          (obj == best_obj_ && std::lexicographical_compare(coef_.begin(), coef_.end(),
                                                            best_coef_.begin(),
                                                            best_coef_.end()))) {
        found_ = true;
        best_obj_ = obj;
        best_coef_ = coef_;
        best_mu_ = stats.min_consistent;
      }
      return;
    }

    const std::int32_t* cur = p_[static_cast<std::size_t>(depth)].data();
    std::int32_t* next = p_[static_cast<std::size_t>(depth) + 1].data();
    const std::int32_t* sig = sigma_[static_cast<std::size_t>(depth)].data();
    const bool is_quad = depth < Q_;
    const bool is_input_lin = lin_input_[static_cast<std::size_t>(depth)];
    for (int mag = 0; mag <= m_; ++mag) {
      for (int sign = 0; sign < (mag == 0 ? 1 : 2); ++sign) {
        const int v = sign == 0 ? -mag : mag;
        coef_[static_cast<std::size_t>(depth)] = v;
        kernels::add_scaled(cur, sig, v, padded_, next);
        dfs(depth + 1, std::max(cur_max, mag), cur_inputs + (v != 0 && is_input_lin),
            cur_quads + (v != 0 && is_quad));
      }
    }
    coef_[static_cast<std::size_t>(depth)] = 0;
  }

  ObjectivePriority priority_;
  bool objective_pruning_;
  int K_ = 0, Q_ = 0, nanc_ = 0, rows_ = 0, padded_ = 0, m_ = 1;
  kernels::RowLayout layout_;
  std::vector<std::vector<std::int32_t>> sigma_;
  std::vector<bool> lin_input_;
  bool has_consistent_ = false, has_inconsistent_ = false;

  std::vector<std::vector<std::int32_t>> p_;
  std::vector<Coef> coef_;
  bool found_ = false;
  std::array<Coef, 3> best_obj_{};
  std::vector<Coef> best_coef_;
  Coef best_mu_ = 0;
};

}  // namespace

SynthesisOutcome synthesize(const GateSpec& spec, int num_ancilla, Coef bound,
                            const ObjectivePriority& priority, const SynthesisOptions& options) {
  if (bound < 1) throw Error("coefficient bound must be at least 1");
  if (bound > 1000) throw Error("coefficient bound " + std::to_string(bound) + " is impractical");
  const ConstraintSystem cs = build_constraints(spec, num_ancilla);

  Search search(cs, static_cast<int>(spec.inputs.size()), priority,
                options.strategy == SearchStrategy::BranchAndBound);
  if (!search.feasible_exists()) return InfeasibleWithinBound{bound};

  if (priority[0] == Objective::MaxAbs) {
    // With MAX_ABS leading, the first magnitude admitting any solution is the
    // optimum of the leading objective; the run at that magnitude settles the
    // rest.
    for (Coef m = 1; m <= bound; ++m) {
      search.run(static_cast<int>(m));
      if (search.found()) break;
    }
  } else {
    search.run(static_cast<int>(bound));
  }
  if (!search.found()) return InfeasibleWithinBound{bound};

  const auto& coef = search.best_coefficients();
  SynthesisResult result;
  result.ancillas = cs.ancillas;
  for (const auto& var : cs.variables) result.model.add_variable(var);
  Coef max_abs = 0;
  int input_num = 0, quad_num = 0;
  const int num_inputs = static_cast<int>(spec.inputs.size());
  for (std::size_t t = 0; t < cs.terms.size(); ++t) {
    const Coef w = coef[t];
    if (w == 0) continue;
    max_abs = std::max<Coef>(max_abs, w < 0 ? -w : w);
    if (cs.terms[t].quadratic) {
      result.model.add_quadratic(cs.terms[t].u, cs.terms[t].v, w);
      ++quad_num;
    } else {
      result.model.add_linear(cs.terms[t].u, w);
      const auto idx = t - static_cast<std::size_t>(search.quad_terms());
      if (static_cast<int>(idx) < num_inputs) ++input_num;
    }
  }
  result.mu = search.best_mu();
  result.objectives.max_abs = max_abs;
  result.objectives.input_num = input_num;
  result.objectives.quad_num = quad_num;
  result.objectives.priority = priority;
  return result;
}

VerificationReport verify_gate_model(const IsingModel& model, const GateSpec& spec) {
  validate(spec);
  for (const auto& v : spec.variables())
    if (!model.has_variable(v))
      throw Error("gate spec variable '" + v + "' is absent from the model");
  const std::size_t nv = model.num_variables();
  if (nv > 26) throw Error("model too large for brute-force verification");

  // Canonical variable order defines mask bits; record where each spec
  // variable landed.
  std::vector<std::string> vars(model.variables().begin(), model.variables().end());
  std::map<std::string, int> pos;
  for (std::size_t i = 0; i < vars.size(); ++i) pos[vars[i]] = static_cast<int>(i);

  kernels::TermTable table;
  table.num_spins = static_cast<int>(nv);
  table.base = model.offset();
  for (const auto& [var, w] : model.linear_terms()) table.add_linear(pos.at(var), w);
  for (const auto& [pair, w] : model.quadratic_terms())
    table.add_quadratic(pos.at(pair.first), pos.at(pair.second), w);

  const auto io_vars = spec.variables();
  std::vector<int> io_shift;
  for (const auto& v : io_vars) io_shift.push_back(static_cast<int>(nv) - 1 - pos.at(v));

  const std::size_t num_rows = std::size_t{1} << io_vars.size();
  std::vector<Coef> row_min(num_rows, kInf);
  Coef global_min = kInf, second = kInf;

  const std::uint64_t total = std::uint64_t{1} << nv;
  constexpr std::size_t kBlock = 1024;
  std::vector<std::int64_t> buf(kBlock);
  for (std::uint64_t base = 0; base < total; base += kBlock) {
    const std::size_t count = static_cast<std::size_t>(std::min<std::uint64_t>(kBlock, total - base));
    kernels::energy_block(table, base, count, buf.data());
    for (std::size_t i = 0; i < count; ++i) {
      const std::uint64_t mask = base + i;
      const Coef e = buf[i];
      std::size_t row = 0;
      for (std::size_t k = 0; k < io_vars.size(); ++k)
        row |= ((mask >> io_shift[k]) & 1u) << k;
      row_min[row] = std::min(row_min[row], e);
      if (e < global_min) {
        second = global_min;
        global_min = e;
      } else if (e > global_min) {
        second = std::min(second, e);
      }
    }
  }

  VerificationReport report;
  report.mu = global_min;
  if (second != kInf) report.gap = second - global_min;
  report.achieved.max_abs = model.max_abs_coefficient();
  report.achieved.quad_num = static_cast<int>(model.num_quadratic());
  report.achieved.input_num = 0;
  for (const auto& v : spec.inputs)
    if (model.linear(v) != 0) ++report.achieved.input_num;

  for (std::size_t row = 0; row < num_rows; ++row) {
    std::vector<Spin> row_values;
    SpinAssignment assignment;
    for (std::size_t k = 0; k < io_vars.size(); ++k) {
      const Spin s = (row >> k) & 1u ? +1 : -1;
      row_values.push_back(s);
      assignment.set(io_vars[k], s);
    }
    const bool consistent = spec.contains_row(row_values);
    const bool ok = consistent ? row_min[row] == global_min : row_min[row] >= global_min + 1;
    if (!ok) report.failures.push_back({assignment, consistent, row_min[row]});
  }
  report.pass = report.failures.empty();
  return report;
}

}  // namespace spinlogic
