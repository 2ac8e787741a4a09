#include "plpx/sld.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "plpx/error.hpp"

namespace plpx {

bool is_blocked(const GoalAtom& g) {
  return std::any_of(g.ancestors.begin(), g.ancestors.end(),
                     [&](const Atom& a) { return is_variant(g.atom, a); });
}

std::optional<std::size_t> select_atom(std::span<const GoalAtom> goal) {
  for (std::size_t i = 0; i < goal.size(); ++i) {
    if (!goal[i].marked && !is_blocked(goal[i])) {
      return i;
    }
  }
  return std::nullopt;
}

namespace {

void apply_in_place(const Substitution& theta, Goal& goal) {
  for (GoalAtom& g : goal) {
    g.atom = theta.apply(g.atom);
    for (Atom& a : g.ancestors) {
      a = theta.apply(a);
    }
  }
}

}  // namespace

std::vector<Resolvent> sld_step(const Goal& goal, std::size_t selected,
                                const Program& program, VarSupply& supply) {
  std::vector<Resolvent> out;
  const GoalAtom& sel = goal.at(selected);
  for (std::size_t ci : program.clauses_for(sel.atom.id())) {
    Clause renamed = rename_apart(program.clauses()[ci], supply);
    auto theta = mgu(sel.atom, renamed.head);
    if (!theta) {
      continue;
    }
    std::vector<Atom> ancestors = sel.ancestors;
    ancestors.push_back(sel.atom);

    Resolvent r;
    r.goal.reserve(goal.size() + renamed.body.size());
    r.goal.insert(r.goal.end(), goal.begin(), goal.begin() + selected);
    for (const BodyAtom& b : renamed.body) {
      r.goal.push_back(GoalAtom{b.atom, ancestors, false});
    }
    r.goal.insert(r.goal.end(), goal.begin() + selected + 1, goal.end());
    apply_in_place(*theta, r.goal);
    r.clause = theta->apply(renamed);
    r.mgu = std::move(*theta);
    r.clause_index = ci;
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

struct SearchState {
  Goal goal;
  Substitution theta;
  std::vector<DerivationStep> steps;
  std::vector<UsedClause> used;
};

Derivation finish(const Atom& query, SearchState&& s) {
  Derivation d;
  d.query = query;
  d.answer = s.theta.restricted_to(vars_of(query));
  d.steps = std::move(s.steps);
  for (UsedClause& u : s.used) {
    if (!u.instance.is_ground()) {
      throw Error(ErrorKind::NonGroundProbClause,
                  "encountered a non-ground probabilistic clause " +
                      to_string(u.instance) + " while proving " +
                      to_string(query));
    }
    const bool seen = std::any_of(
        d.used_prob_clauses.begin(), d.used_prob_clauses.end(),
        [&](const UsedClause& v) {
          return v.clause_index == u.clause_index &&
                 v.instance.head == u.instance.head;
        });
    if (!seen) {
      d.used_prob_clauses.push_back(std::move(u));
    }
  }
  return d;
}

}  // namespace

SolveResult solve(const Atom& query, const Program& program,
                  const SolveLimits& limits) {
  SolveResult result;
  VarSupply supply;
  std::vector<SearchState> stack;
  stack.push_back(SearchState{{GoalAtom{query, {}, false}}, {}, {}, {}});

  while (!stack.empty()) {
    SearchState state = std::move(stack.back());
    stack.pop_back();
    if (state.goal.empty()) {
      result.derivations.push_back(finish(query, std::move(state)));
      continue;
    }
    auto selected = select_atom(state.goal);
    if (!selected) {
      ++result.pruned;
      continue;
    }
    if (state.steps.size() >= limits.max_steps ||
        result.total_steps >= limits.max_total_steps) {
      result.limit_exceeded = true;
      if (result.total_steps >= limits.max_total_steps) {
        break;
      }
      continue;
    }
    ++result.total_steps;
    const Atom sel_atom = state.goal[*selected].atom;
    std::vector<Resolvent> next = sld_step(state.goal, *selected, program, supply);
    if (next.empty()) {
      ++result.failed;
      continue;
    }
    for (auto it = next.rbegin(); it != next.rend(); ++it) {
      SearchState child;
      child.goal = std::move(it->goal);
      child.theta = compose(state.theta, it->mgu);
      child.steps = state.steps;
      child.steps.push_back(DerivationStep{sel_atom, it->clause_index, it->mgu});
      child.used.reserve(state.used.size() + 1);
      for (const UsedClause& u : state.used) {
        child.used.push_back(UsedClause{u.clause_index, it->mgu.apply(u.instance)});
      }
      if (it->clause.is_probabilistic()) {
        child.used.push_back(UsedClause{it->clause_index, it->clause});
      }
      stack.push_back(std::move(child));
    }
  }
  return result;
}

double proof_probability(const Derivation& d) {
  std::set<std::pair<std::size_t, Atom>> seen;
  double p = 1.0;
  for (const UsedClause& u : d.used_prob_clauses) {
    if (seen.emplace(u.clause_index, u.instance.head).second) {
      p *= *u.instance.probability;
    }
  }
  return p;
}

std::optional<Derivation> most_likely_proof(const Atom& query,
                                            const Program& program,
                                            const SolveLimits& limits) {
  SolveResult r = solve(query, program, limits);
  std::optional<Derivation> best;
  double best_p = -1.0;
  for (Derivation& d : r.derivations) {
    double p = proof_probability(d);
    if (p > best_p) {
      best_p = p;
      best = std::move(d);
    }
  }
  return best;
}

}  // namespace plpx
