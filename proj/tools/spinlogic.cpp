// Command-line front end: synthesis, verification, circuit compilation,
// solving, and the multiplier/factorization demo. Exit codes: 0 success,
// 1 domain error (or failed verification), 2 usage error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "spinlogic/anneal.hpp"
#include "spinlogic/circuit.hpp"
#include "spinlogic/compile.hpp"
#include "spinlogic/gate_spec.hpp"
#include "spinlogic/model_io.hpp"
#include "spinlogic/multiplier.hpp"
#include "spinlogic/synth.hpp"
#include "spinlogic/transforms.hpp"
#include "spinlogic/version.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace spinlogic;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

struct Manifest {
  std::string subcommand;
  std::vector<std::string> argv;
  std::optional<std::uint64_t> seed;
  std::string outcome = "ok";

  void emit() const {
    json m;
    m["tool"] = "spinlogic";
    m["version"] = kVersion;
    m["subcommand"] = subcommand;
    m["argv"] = argv;
    if (seed) m["seed"] = *seed;
    m["outcome"] = outcome;
    std::cerr << m.dump() << "\n";
  }
};

json objectives_json(const ObjectiveVector& o) {
  json j;
  j["max_abs"] = o.max_abs;
  j["input_num"] = o.input_num;
  j["quad_num"] = o.quad_num;
  std::string prio;
  for (std::size_t i = 0; i < 3; ++i)
    prio += (i ? "," : "") + objective_name(o.priority[i]);
  j["priority"] = prio;
  return j;
}

json assignment_json(const SpinAssignment& s) {
  json j;
  for (const auto& [var, value] : s.values()) j[var] = value;
  return j;
}

std::string assignment_text(const SpinAssignment& s) {
  std::string out;
  for (const auto& [var, value] : s.values()) {
    if (!out.empty()) out += " ";
    out += var + "=" + (value > 0 ? "+1" : "-1");
  }
  return out;
}

GateSpec load_spec(const std::string& gate, const std::string& spec_file) {
  if (!gate.empty() && !spec_file.empty())
    throw Error("give either a built-in gate name or a spec file, not both");
  if (!gate.empty()) return builtin_gate_spec(gate);
  if (!spec_file.empty()) return parse_gate_spec(read_file(spec_file));
  throw Error("a gate spec is required (--gate or --spec)");
}

SpinAssignment parse_clamps(const std::vector<std::string>& clamps) {
  SpinAssignment out;
  for (const auto& c : clamps) {
    const auto eq = c.find('=');
    if (eq == std::string::npos) throw Error("clamp '" + c + "' is not of the form var=+1|-1");
    const std::string var = c.substr(0, eq);
    const std::string val = c.substr(eq + 1);
    if (val == "1" || val == "+1")
      out.set(var, +1);
    else if (val == "-1")
      out.set(var, -1);
    else
      throw Error("clamp value for '" + var + "' must be +1 or -1, got '" + val + "'");
  }
  return out;
}

// ---- synth ----------------------------------------------------------------

int cmd_synth(const std::string& gate, const std::string& spec_file, int ancillas, Coef bound,
              const std::string& priority_csv, const std::string& strategy,
              const std::string& out_file, bool json_mode, bool dump_constraints,
              Manifest& manifest) {
  const GateSpec spec = load_spec(gate, spec_file);
  const ObjectivePriority priority = parse_priority(priority_csv);
  SynthesisOptions options;
  if (strategy == "exhaustive")
    options.strategy = SearchStrategy::Exhaustive;
  else if (strategy == "bnb")
    options.strategy = SearchStrategy::BranchAndBound;
  else
    throw Error("unknown strategy '" + strategy + "'");

  if (dump_constraints) {
    const auto cs = build_constraints(spec, ancillas);
    std::cout << cs.to_string();
    return 0;
  }

  const SynthesisOutcome outcome = synthesize(spec, ancillas, bound, priority, options);
  if (const auto* infeasible = std::get_if<InfeasibleWithinBound>(&outcome)) {
    manifest.outcome = "infeasible";
    if (json_mode) {
      json j;
      j["feasible"] = false;
      j["bound"] = infeasible->bound;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "infeasible: no model with all |coefficients| <= " << infeasible->bound
                << "\n";
    }
    return 0;
  }
  const auto& result = std::get<SynthesisResult>(outcome);
  const std::string text = serialize(result.model);
  if (!out_file.empty()) write_file(out_file, text);
  if (json_mode) {
    json j;
    j["feasible"] = true;
    j["objectives"] = objectives_json(result.objectives);
    j["mu"] = result.mu;
    j["ancillas"] = result.ancillas;
    j["model"] = text;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "feasible: max_abs=" << result.objectives.max_abs
              << " input_num=" << result.objectives.input_num
              << " quad_num=" << result.objectives.quad_num << " mu=" << result.mu << "\n";
    if (out_file.empty()) std::cout << text;
  }
  return 0;
}

// ---- verify ---------------------------------------------------------------

int cmd_verify(const std::string& model_file, const std::string& gate,
               const std::string& spec_file, bool json_mode, Manifest& manifest) {
  const IsingModel model = parse_ising(read_file(model_file));
  const GateSpec spec = load_spec(gate, spec_file);
  const VerificationReport report = verify_gate_model(model, spec);
  manifest.outcome = report.pass ? "pass" : "fail";
  if (json_mode) {
    json j;
    j["pass"] = report.pass;
    j["mu"] = report.mu;
    if (report.gap) j["gap"] = *report.gap;
    j["objectives"] = objectives_json(report.achieved);
    json failures = json::array();
    for (const auto& f : report.failures) {
      json fj;
      fj["row"] = assignment_json(f.row);
      fj["consistent"] = f.consistent;
      fj["min_energy"] = f.min_energy;
      failures.push_back(fj);
    }
    j["failures"] = failures;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << (report.pass ? "pass" : "fail") << ": mu=" << report.mu;
    if (report.gap) std::cout << " gap=" << *report.gap;
    std::cout << "\n";
    for (const auto& f : report.failures)
      std::cout << "  violated " << (f.consistent ? "consistent" : "inconsistent") << " row "
                << assignment_text(f.row) << " (min over completions " << f.min_energy << ")\n";
  }
  return report.pass ? 0 : 1;
}

// ---- compile ----------------------------------------------------------------

int cmd_compile(const std::string& netlist_file, const std::string& out_file,
                const std::string& map_file, const std::string& variant,
                const std::vector<std::string>& per_kind, bool no_merge, bool json_mode,
                Manifest&) {
  const Circuit circuit = parse_netlist(read_file(netlist_file));
  VariantSelection variants;
  variants.default_variant = parse_variant(variant);
  for (const auto& entry : per_kind) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos)
      throw Error("per-kind override '" + entry + "' is not of the form KIND=VARIANT");
    variants.per_kind[parse_gate_kind(entry.substr(0, eq))] = parse_variant(entry.substr(eq + 1));
  }
  const CompiledModel compiled =
      compile(circuit, GateLibrary::standard(), variants, !no_merge);

  const std::string text = serialize(compiled.model);
  if (!out_file.empty()) write_file(out_file, text);
  std::string map_text;
  for (const auto& [net, var] : compiled.net_map) map_text += "net " + net + " " + var + "\n";
  if (!map_file.empty()) write_file(map_file, map_text);

  if (json_mode) {
    json j;
    j["variables"] = compiled.model.num_variables();
    j["quadratic_terms"] = compiled.model.num_quadratic();
    j["wire_edges"] = compiled.wire_edge_count;
    j["merged"] = compiled.merged;
    j["expected_ground_energy"] = compiled.expected_ground_energy;
    j["max_abs_coefficient"] = compiled.model.max_abs_coefficient();
    json nm;
    for (const auto& [net, var] : compiled.net_map) nm[net] = var;
    j["net_map"] = nm;
    if (out_file.empty()) j["model"] = text;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "variables=" << compiled.model.num_variables()
              << " quadratic=" << compiled.model.num_quadratic()
              << " wire_edges=" << compiled.wire_edge_count
              << " expected_ground_energy=" << compiled.expected_ground_energy << "\n";
    if (out_file.empty()) std::cout << text;
    if (map_file.empty()) std::cout << map_text;
  }
  return 0;
}

// ---- solve ------------------------------------------------------------------

int cmd_solve(const std::string& model_file, const std::vector<std::string>& clamp_args,
              bool use_sa, std::size_t free_limit, AnnealSchedule schedule,
              std::optional<Coef> target, unsigned threads, bool json_mode,
              Manifest& manifest) {
  const IsingModel model = parse_ising(read_file(model_file));
  const SpinAssignment clamps = parse_clamps(clamp_args);

  if (!use_sa) {
    EnumerateOptions opts;
    opts.free_limit = free_limit;
    opts.threads = threads;
    const GroundStateReport report = enumerate_ground_states(model, clamps, opts);
    if (json_mode) {
      json j;
      j["min_energy"] = report.min_energy;
      if (report.gap) j["gap"] = *report.gap;
      j["num_ground_states"] = report.ground_states.size();
      json states = json::array();
      for (const auto& s : report.ground_states) states.push_back(assignment_json(s));
      j["ground_states"] = states;
      std::cout << j.dump() << "\n";
    } else {
      std::cout << "min energy " << report.min_energy;
      if (report.gap) std::cout << " (gap " << *report.gap << ")";
      std::cout << ", " << report.ground_states.size() << " ground state(s)\n";
      const std::size_t shown = std::min<std::size_t>(report.ground_states.size(), 32);
      for (std::size_t i = 0; i < shown; ++i)
        std::cout << "  " << assignment_text(report.ground_states[i]) << "\n";
      if (shown < report.ground_states.size())
        std::cout << "  ... (" << report.ground_states.size() - shown << " more)\n";
    }
    return 0;
  }

  const AnnealResult result = anneal(model, clamps, schedule, target, threads);
  manifest.outcome = target ? (result.certified ? "certified" : "uncertified") : "ok";
  if (json_mode) {
    json j;
    j["best_energy"] = result.best_energy;
    j["certified"] = result.certified;
    j["restarts_used"] = result.restarts_used;
    j["flips_attempted"] = result.flips_attempted;
    j["best_assignment"] = assignment_json(result.best_assignment);
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "best energy " << result.best_energy
              << (result.certified ? " (certified)" : "") << " after " << result.restarts_used
              << " restart(s)\n  " << assignment_text(result.best_assignment) << "\n";
  }
  return 0;
}

// ---- multiply / factor / stats ----------------------------------------------

SolverChoice make_solver(bool use_sa, std::size_t free_limit, const AnnealSchedule& schedule,
                         unsigned threads) {
  SolverChoice solver = use_sa ? SolverChoice::annealer(schedule) : SolverChoice::exact(free_limit);
  solver.threads = threads;
  return solver;
}

int cmd_multiply(int bits, bool no_odd, std::uint64_t x, std::uint64_t y, bool use_sa,
                 std::size_t free_limit, const AnnealSchedule& schedule, unsigned threads,
                 bool json_mode, Manifest&) {
  const MultiplierSpec spec{bits, !no_odd};
  const std::uint64_t product =
      multiply(spec, x, y, make_solver(use_sa, free_limit, schedule, threads));
  if (json_mode) {
    json j;
    j["x"] = x;
    j["y"] = y;
    j["product"] = product;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << x << " * " << y << " = " << product << "\n";
  }
  return 0;
}

int cmd_factor(int bits, bool no_odd, std::uint64_t s, bool use_exact, std::size_t free_limit,
               const AnnealSchedule& schedule, unsigned threads, bool json_mode,
               Manifest& manifest) {
  const MultiplierSpec spec{bits, !no_odd};
  const auto pairs =
      factor(spec, s, make_solver(!use_exact, free_limit, schedule, threads));
  manifest.outcome = pairs.empty() ? "none" : "ok";
  if (json_mode) {
    json j;
    j["s"] = s;
    json f = json::array();
    for (const auto& [a, b] : pairs) f.push_back(json::array({a, b}));
    j["factorizations"] = f;
    std::cout << j.dump() << "\n";
  } else {
    for (const auto& [a, b] : pairs) std::cout << a << " x " << b << "\n";
  }
  return 0;
}

int cmd_stats(int bits, bool no_odd, bool json_mode, Manifest&) {
  const MultiplierSpec spec{bits, !no_odd};
  const MultiplierStats stats = model_stats(spec);
  if (json_mode) {
    json j;
    j["bits"] = bits;
    j["and_gates"] = stats.and_gates;
    j["half_adders"] = stats.half_adders;
    j["full_adders"] = stats.full_adders;
    j["model_nodes"] = stats.model_nodes;
    j["model_edges"] = stats.model_edges;
    j["max_abs_coef"] = stats.max_abs_coef;
    std::cout << j.dump() << "\n";
  } else {
    std::cout << "and_gates=" << stats.and_gates << " half_adders=" << stats.half_adders
              << " full_adders=" << stats.full_adders << " nodes=" << stats.model_nodes
              << " edges=" << stats.model_edges << " max_abs_coef=" << stats.max_abs_coef
              << "\n";
  }
  return 0;
}

// ---- convert ------------------------------------------------------------------

int cmd_convert(const std::string& in_file, const std::string& to, const std::string& out_file,
                Manifest&) {
  const auto parsed = parse_model(read_file(in_file));
  std::string text;
  if (to == "ising") {
    if (std::holds_alternative<IsingModel>(parsed))
      throw Error("input is already an Ising model");
    text = serialize(qubo_to_ising(std::get<QuboModel>(parsed)));
  } else if (to == "qubo") {
    if (std::holds_alternative<QuboModel>(parsed)) throw Error("input is already a QUBO model");
    text = serialize(ising_to_qubo(std::get<IsingModel>(parsed)));
  } else {
    throw Error("convert target must be 'ising' or 'qubo'");
  }
  if (out_file.empty())
    std::cout << text;
  else
    write_file(out_file, text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unit Ising models for logic circuits: synthesis, compilation, solving"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  Manifest manifest;
  for (int i = 0; i < argc; ++i) manifest.argv.push_back(argv[i]);

  bool json_mode = false;
  app.add_flag("--json", json_mode, "machine-readable output, one JSON object per line");
  unsigned threads = 0;
  app.add_option("--threads", threads, "worker threads (0 = auto)");

  // synth
  auto* synth = app.add_subcommand("synth", "synthesize a penalty model for a gate");
  std::string sy_gate, sy_spec, sy_priority = "max_abs,input_num,quad_num", sy_strategy = "bnb";
  std::string sy_out;
  int sy_ancillas = 0;
  Coef sy_bound = 2;
  bool sy_dump = false;
  synth->add_option("--gate", sy_gate, "built-in gate name (AND, OR, XOR, ...)");
  synth->add_option("--spec", sy_spec, "gate spec file");
  synth->add_option("--ancillas", sy_ancillas, "number of ancilla variables");
  synth->add_option("--bound", sy_bound, "coefficient magnitude bound");
  synth->add_option("--priority", sy_priority, "objective priority (comma-separated)");
  synth->add_option("--strategy", sy_strategy, "search strategy: bnb or exhaustive");
  synth->add_option("--out", sy_out, "write the model to this file");
  synth->add_flag("--dump-constraints", sy_dump, "print the constraint system and exit");

  // verify
  auto* verify = app.add_subcommand("verify", "check a model against a gate spec");
  std::string ve_model, ve_gate, ve_spec;
  verify->add_option("--model", ve_model, "model file")->required();
  verify->add_option("--gate", ve_gate, "built-in gate name");
  verify->add_option("--spec", ve_spec, "gate spec file");

  // compile
  auto* comp = app.add_subcommand("compile", "compile a netlist into an Ising model");
  std::string co_netlist, co_out, co_map, co_variant = "zu";
  std::vector<std::string> co_per_kind;
  bool co_no_merge = false;
  comp->add_option("--netlist", co_netlist, "netlist file")->required();
  comp->add_option("--out", co_out, "write the model to this file");
  comp->add_option("--map", co_map, "write the net-to-variable map to this file");
  comp->add_option("--variant", co_variant, "default variant: zu, u or plain");
  comp->add_option("--per-kind", co_per_kind, "override, e.g. AND=u (repeatable)");
  comp->add_flag("--no-merge", co_no_merge, "keep wire edges instead of contracting");

  // shared solver flags
  auto add_sa_options = [](CLI::App* cmd, AnnealSchedule& sched, bool& seed_given) {
    cmd->add_option_function<std::uint64_t>(
           "--seed", [&sched, &seed_given](std::uint64_t v) { sched.seed = v; seed_given = true; },
           "random seed");
    cmd->add_option("--restarts", sched.restarts, "annealer restarts");
    cmd->add_option("--t0", sched.t_initial, "initial temperature (0 = auto)");
    cmd->add_option("--t1", sched.t_final, "final temperature");
    cmd->add_option("--alpha", sched.alpha, "geometric decay factor");
    cmd->add_option("--sweeps", sched.sweeps_per_temperature, "sweeps per temperature (0 = auto)");
  };

  // solve
  auto* solve = app.add_subcommand("solve", "minimize a model (exactly or by annealing)");
  std::string so_model;
  std::vector<std::string> so_clamps;
  bool so_exact = false, so_sa = false, so_seed_given = false;
  std::size_t so_free_limit = 24;
  AnnealSchedule so_sched;
  std::optional<Coef> so_target;
  solve->add_option("--model", so_model, "model file")->required();
  solve->add_option("--clamp", so_clamps, "fix a variable, e.g. --clamp a=+1 (repeatable)");
  solve->add_flag("--exact", so_exact, "exhaustive enumeration (default)");
  solve->add_flag("--sa", so_sa, "simulated annealing");
  solve->add_option("--free-limit", so_free_limit, "exact solver: max free variables");
  solve->add_option_function<Coef>(
      "--target", [&so_target](Coef v) { so_target = v; }, "certify against this energy");
  add_sa_options(solve, so_sched, so_seed_given);

  // multiply
  auto* mul = app.add_subcommand("multiply", "run the multiplier forward");
  int mu_bits = 4;
  bool mu_no_odd = false, mu_sa = false, mu_seed_given = false;
  std::uint64_t mu_x = 0, mu_y = 0;
  std::size_t mu_free_limit = 26;
  AnnealSchedule mu_sched;
  mul->add_option("--bits", mu_bits, "operand width")->required();
  mul->add_option("--x", mu_x, "multiplicand")->required();
  mul->add_option("--y", mu_y, "multiplier")->required();
  mul->add_flag("--no-odd", mu_no_odd, "drop the odd-operand assumption");
  mul->add_flag("--sa", mu_sa, "use the annealer instead of exact enumeration");
  mul->add_option("--free-limit", mu_free_limit, "exact solver: max free variables");
  add_sa_options(mul, mu_sched, mu_seed_given);

  // factor
  auto* fac = app.add_subcommand("factor", "run the multiplier backward");
  int fa_bits = 4;
  bool fa_no_odd = false, fa_exact = false, fa_seed_given = false;
  std::uint64_t fa_s = 0;
  std::size_t fa_free_limit = 26;
  AnnealSchedule fa_sched;
  fa_sched.restarts = 64;
  fac->add_option("--bits", fa_bits, "operand width")->required();
  fac->add_option("--s", fa_s, "product to factor")->required();
  fac->add_flag("--no-odd", fa_no_odd, "drop the odd-operand assumption");
  fac->add_flag("--exact", fa_exact, "exact enumeration instead of annealing");
  fac->add_option("--free-limit", fa_free_limit, "exact solver: max free variables");
  add_sa_options(fac, fa_sched, fa_seed_given);

  // stats
  auto* stats = app.add_subcommand("stats", "multiplier model statistics");
  int st_bits = 4;
  bool st_no_odd = false;
  stats->add_option("--bits", st_bits, "operand width")->required();
  stats->add_flag("--no-odd", st_no_odd, "drop the odd-operand assumption");

  // convert
  auto* conv = app.add_subcommand("convert", "convert between Ising and QUBO formats");
  std::string cv_in, cv_to, cv_out;
  conv->add_option("--in", cv_in, "input model file")->required();
  conv->add_option("--to", cv_to, "target format: ising or qubo")->required();
  conv->add_option("--out", cv_out, "output file (stdout when absent)");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return 2;
  }

  try {
    int rc = 1;
    if (*synth) {
      manifest.subcommand = "synth";
      rc = cmd_synth(sy_gate, sy_spec, sy_ancillas, sy_bound, sy_priority, sy_strategy, sy_out,
                     json_mode, sy_dump, manifest);
    } else if (*verify) {
      manifest.subcommand = "verify";
      rc = cmd_verify(ve_model, ve_gate, ve_spec, json_mode, manifest);
    } else if (*comp) {
      manifest.subcommand = "compile";
      rc = cmd_compile(co_netlist, co_out, co_map, co_variant, co_per_kind, co_no_merge,
                       json_mode, manifest);
    } else if (*solve) {
      manifest.subcommand = "solve";
      if (so_exact && so_sa) throw Error("--exact and --sa are mutually exclusive");
      if (so_sa && json_mode && !so_seed_given)
        throw CLI::ValidationError("solve", "--seed is required with --sa in --json mode");
      if (so_sa) manifest.seed = so_sched.seed;
      rc = cmd_solve(so_model, so_clamps, so_sa, so_free_limit, so_sched, so_target, threads,
                     json_mode, manifest);
    } else if (*mul) {
      manifest.subcommand = "multiply";
      if (mu_sa && json_mode && !mu_seed_given)
        throw CLI::ValidationError("multiply", "--seed is required with --sa in --json mode");
      if (mu_sa) manifest.seed = mu_sched.seed;
      rc = cmd_multiply(mu_bits, mu_no_odd, mu_x, mu_y, mu_sa, mu_free_limit, mu_sched, threads,
                        json_mode, manifest);
    } else if (*fac) {
      manifest.subcommand = "factor";
      if (!fa_exact && json_mode && !fa_seed_given)
        throw CLI::ValidationError("factor", "--seed is required with the annealer in --json mode");
      if (!fa_exact) manifest.seed = fa_sched.seed;
      rc = cmd_factor(fa_bits, fa_no_odd, fa_s, fa_exact, fa_free_limit, fa_sched, threads,
                      json_mode, manifest);
    } else if (*stats) {
      manifest.subcommand = "stats";
      rc = cmd_stats(st_bits, st_no_odd, json_mode, manifest);
    } else if (*conv) {
      manifest.subcommand = "convert";
      rc = cmd_convert(cv_in, cv_to, cv_out, manifest);
    }
    manifest.emit();
    return rc;
  } catch (const CLI::ValidationError& e) {
    manifest.outcome = std::string("usage error: ") + e.what();
    manifest.emit();
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    manifest.outcome = std::string("error: ") + e.what();
    manifest.emit();
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
