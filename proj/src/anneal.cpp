#include "spinlogic/anneal.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <random>
#include <thread>

namespace spinlogic {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t restart_seed(std::uint64_t seed, std::uint64_t restart) {
  return splitmix64(seed + (restart + 1) * 0x9E3779B97F4A7C15ull);
}

double unit_double(std::mt19937_64& rng) {
  return double(rng() >> 11) * 0x1.0p-53;
}

// Model reduced over the free variables, clamps folded in.
struct Reduced {
  std::vector<std::string> free_vars;
  Coef base = 0;
  std::vector<Coef> field;  // linear + clamp contributions
  struct Edge {
    std::uint32_t other;
    Coef weight;
  };
  std::vector<std::vector<Edge>> adj;
};

Reduced reduce(const IsingModel& model, const SpinAssignment& clamps) {
  for (const auto& [var, value] : clamps.values())
    if (!model.has_variable(var)) throw Error("clamped variable '" + var + "' is not in the model");
  Reduced red;
  std::map<std::string, std::uint32_t> index;
  for (const auto& var : model.variables()) {
    if (clamps.contains(var)) continue;
    index[var] = static_cast<std::uint32_t>(red.free_vars.size());
    red.free_vars.push_back(var);
  }
  red.base = model.offset();
  red.field.assign(red.free_vars.size(), 0);
  red.adj.assign(red.free_vars.size(), {});
  for (const auto& [var, w] : model.linear_terms()) {
    if (clamps.contains(var))
      red.base += w * clamps.at(var);
    else
      red.field[index.at(var)] += w;
  }
  for (const auto& [pair, w] : model.quadratic_terms()) {
    const bool cu = clamps.contains(pair.first), cv = clamps.contains(pair.second);
    if (cu && cv) {
      red.base += w * clamps.at(pair.first) * clamps.at(pair.second);
    } else if (cu) {
      red.field[index.at(pair.second)] += w * clamps.at(pair.first);
    } else if (cv) {
      red.field[index.at(pair.first)] += w * clamps.at(pair.second);
    } else {
      const auto i = index.at(pair.first), j = index.at(pair.second);
      red.adj[i].push_back({j, w});
      red.adj[j].push_back({i, w});
    }
  }
  return red;
}

struct RestartOutcome {
  std::vector<int8_t> best_spins;
  Coef best_energy = 0;
  std::uint64_t flips = 0;
  bool hit_target = false;
};

RestartOutcome run_restart(const Reduced& red, const AnnealSchedule& sched,
                           std::optional<Coef> target, std::uint64_t restart) {
  const std::size_t n = red.free_vars.size();
  std::mt19937_64 rng(restart_seed(sched.seed, restart));

  std::vector<int8_t> spins(n);
  for (std::size_t i = 0; i < n; ++i) spins[i] = (rng() & 1u) ? +1 : -1;

  std::vector<Coef> local(n);  // field[i] + sum_j J_ij s_j
  Coef energy = red.base;
  for (std::size_t i = 0; i < n; ++i) {
    Coef l = red.field[i];
    for (const auto& e : red.adj[i]) l += e.weight * spins[e.other];
    local[i] = l;
    energy += red.field[i] * spins[i];
    for (const auto& e : red.adj[i])
      if (e.other > i) energy += e.weight * spins[i] * spins[e.other];
  }

  RestartOutcome out;
  out.best_spins = spins;
  out.best_energy = energy;
  out.hit_target = target && energy == *target;

  const std::uint64_t sweeps =
      sched.sweeps_per_temperature ? sched.sweeps_per_temperature : 2 * std::uint64_t(n);
  for (double t = sched.t_initial; t >= sched.t_final && !out.hit_target;
       t *= sched.alpha) {
    for (std::uint64_t sweep = 0; sweep < sweeps && !out.hit_target; ++sweep) {
      for (std::size_t v = 0; v < n; ++v) {
        ++out.flips;
        const Coef delta = -2 * Coef(spins[v]) * local[v];
        if (delta > 0 && unit_double(rng) >= std::exp(-double(delta) / t)) continue;
        spins[v] = static_cast<int8_t>(-spins[v]);
        energy += delta;
        for (const auto& e : red.adj[v]) local[e.other] += 2 * e.weight * spins[v];
        if (energy < out.best_energy) {
          out.best_energy = energy;
          out.best_spins = spins;
          if (target && energy == *target) {
            out.hit_target = true;
            break;
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

AnnealResult anneal(const IsingModel& model, const SpinAssignment& clamps,
                    const AnnealSchedule& schedule, std::optional<Coef> target, unsigned threads) {
  const Reduced red = reduce(model, clamps);
  const std::size_t n = red.free_vars.size();

  AnnealResult result;
  if (n == 0) {
    result.best_assignment = clamps;
    result.best_energy = red.base;
    result.certified = target && red.base == *target;
    if (result.certified) result.certified_assignments.push_back(clamps);
    return result;
  }

  AnnealSchedule sched = schedule;
  if (sched.t_initial == 0.0) {
    Coef widest = 0;
    for (std::size_t i = 0; i < n; ++i) {
      Coef sum = red.field[i] < 0 ? -red.field[i] : red.field[i];
      for (const auto& e : red.adj[i]) sum += e.weight < 0 ? -e.weight : e.weight;
      widest = std::max(widest, sum);
    }
    sched.t_initial = std::max(double(widest), sched.t_final);
  }
  if (sched.restarts < 1) throw Error("annealer needs at least one restart");
  if (!(sched.t_final > 0.0) || sched.t_initial < sched.t_final)
    throw Error("annealer temperatures must satisfy t_initial >= t_final > 0");
  if (!(sched.alpha > 0.0) || !(sched.alpha < 1.0))
    throw Error("annealer decay must lie strictly between 0 and 1");

  const std::uint64_t restarts = sched.restarts;
  std::vector<RestartOutcome> outcomes(restarts);
  std::vector<char> ran(restarts, 0);

  unsigned workers = threads ? threads : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, restarts));

  if (workers <= 1) {
    for (std::uint64_t r = 0; r < restarts; ++r) {
      outcomes[r] = run_restart(red, sched, target, r);
      ran[r] = 1;
      if (sched.stop_at_target && outcomes[r].hit_target) break;
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> first_hit{restarts};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::uint64_t r = next.fetch_add(1);
          if (r >= restarts) return;
          // Restarts past an already-certified index cannot affect the
          // sequential answer.
          if (sched.stop_at_target && r > first_hit.load()) continue;
          outcomes[r] = run_restart(red, sched, target, r);
          ran[r] = 1;
          if (sched.stop_at_target && outcomes[r].hit_target) {
            std::uint64_t seen = first_hit.load();
            while (r < seen && !first_hit.compare_exchange_weak(seen, r)) {
            }
          }
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  // Reduce exactly as the sequential loop would have.
  std::uint64_t winner = restarts;
  for (std::uint64_t r = 0; r < restarts && winner == restarts; ++r)
    if (ran[r] && outcomes[r].hit_target) winner = r;

  const std::uint64_t last = (sched.stop_at_target && winner < restarts) ? winner : restarts - 1;
  std::uint64_t best_r = restarts;
  for (std::uint64_t r = 0; r <= last; ++r) {
    if (!ran[r]) continue;
    result.flips_attempted += outcomes[r].flips;
    ++result.restarts_used;
    if (best_r == restarts || outcomes[r].best_energy < outcomes[best_r].best_energy) best_r = r;
    if (outcomes[r].hit_target) {
      SpinAssignment s = clamps;
      for (std::size_t i = 0; i < n; ++i) s.set(red.free_vars[i], outcomes[r].best_spins[i]);
      result.certified_assignments.push_back(std::move(s));
    }
  }

  result.best_energy = outcomes[best_r].best_energy;
  result.best_assignment = clamps;
  for (std::size_t i = 0; i < n; ++i)
    result.best_assignment.set(red.free_vars[i], outcomes[best_r].best_spins[i]);
  result.certified = target && result.best_energy == *target;
  return result;
}

}  // namespace spinlogic
