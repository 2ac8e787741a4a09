#include "plpx/grounder.hpp"

#include <algorithm>
#include <deque>
#include <tuple>

#include "plpx/error.hpp"

namespace plpx {

namespace {

// Calls `emit` with every ground instance of `atom` whose remaining
// variables range over `universe`.
template <typename Emit>
void for_each_grounding(const Atom& atom, const std::set<Term>& universe,
                        Emit&& emit) {
  std::vector<Var> vars;
  collect_vars(atom, vars);
  if (vars.empty()) {
    emit(atom);
    return;
  }
  if (universe.empty()) {
    return;
  }
  const std::vector<Term> values(universe.begin(), universe.end());
  std::vector<std::size_t> pick(vars.size(), 0);
  while (true) {
    Substitution theta;
    for (std::size_t i = 0; i < vars.size(); ++i) {
      theta.bind(vars[i], values[pick[i]]);
    }
    emit(theta.apply(atom));
    std::size_t k = 0;
    while (k < pick.size() && ++pick[k] == values.size()) {
      pick[k++] = 0;
    }
    if (k == pick.size()) {
      return;
    }
  }
}

std::string line_of(const Clause& c) {
  return c.line ? "line " + std::to_string(c.line)
                : "clause " + std::to_string(c.origin);
}

void check_deterministic_bodies(const Program& program) {
  for (const Clause& rule : program.clauses()) {
    if (!rule.is_probabilistic() || rule.body.empty()) {
      continue;
    }
    std::set<PredicateId> seen;
    std::deque<PredicateId> todo;
    for (const BodyAtom& b : rule.body) {
      todo.push_back(b.atom.id());
    }
    while (!todo.empty()) {
      PredicateId p = std::move(todo.front());
      todo.pop_front();
      if (!seen.insert(p).second) {
        continue;
      }
      if (program.is_probabilistic(p)) {
        throw Error(ErrorKind::StochasticGrounding,
                    "body of probabilistic rule at " + line_of(rule) +
                        " depends on probabilistic predicate " + p.str());
      }
      for (std::size_t i : program.clauses_for(p)) {
        for (const BodyAtom& b : program.clauses()[i].body) {
          todo.push_back(b.atom.id());
        }
      }
    }
  }
}

}  // namespace

// --- GroundFactTable --------------------------------------------------------

std::optional<std::size_t> GroundFactTable::find(const Atom& atom) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].atom == atom) {
      return i;
    }
  }
  return std::nullopt;
}

std::optional<double> GroundFactTable::probability(const Atom& atom) const {
  auto i = find(atom);
  if (!i) {
    return std::nullopt;
  }
  return entries_[*i].probability;
}

bool GroundFactTable::insert(GroundFact fact) {
  auto key = [](const GroundFact& f) {
    return std::tie(f.clause_index, f.atom);
  };
  auto pos = std::lower_bound(
      entries_.begin(), entries_.end(), fact,
      [&](const GroundFact& a, const GroundFact& b) { return key(a) < key(b); });
  if (pos != entries_.end() && key(*pos) == key(fact)) {
    return false;
  }
  entries_.insert(pos, std::move(fact));
  return true;
}

// --- Grounding --------------------------------------------------------------

std::set<Term> herbrand_constants(const Program& program) {
  std::set<Term> constants;
  bool nonground_prob = false;
  auto scan = [&](const Atom& a) {
    for (const Term& t : a.args) {
      if (t.is_const()) {
        constants.insert(t);
      }
    }
  };
  for (const Clause& c : program.clauses()) {
    scan(c.head);
    for (const BodyAtom& b : c.body) {
      scan(b.atom);
    }
    nonground_prob = nonground_prob || (c.is_probabilistic() && !c.is_ground());
  }
  for (const Atom& q : program.queries()) {
    scan(q);
  }
  if (constants.empty() && nonground_prob) {
    throw Error(ErrorKind::EmptyUniverse,
                "no constants to ground non-ground probabilistic clauses");
  }
  return constants;
}

GroundFactTable ground_probabilistic_facts(const Program& program) {
  check_deterministic_bodies(program);

  const auto& clauses = program.clauses();
  const bool needs_universe =
      std::any_of(clauses.begin(), clauses.end(), [](const Clause& c) {
        return c.is_probabilistic() && !c.is_ground();
      });
  const bool has_rules =
      std::any_of(clauses.begin(), clauses.end(), [](const Clause& c) {
        return c.is_probabilistic() && !c.body.empty();
      });
  const std::set<Term> universe = needs_universe || has_rules
                                      ? herbrand_constants(program)
                                      : std::set<Term>{};
  const Model deterministic =
      has_rules ? least_model(clauses, {}, universe) : Model{};

  GroundFactTable table;
  std::map<Atom, std::size_t> producer;
  auto add = [&](std::size_t index, const Atom& atom) {
    const Clause& c = clauses[index];
    auto [it, fresh] = producer.emplace(atom, index);
    if (!fresh && it->second != index && !program.is_unsafe(atom.id())) {
      throw Error(ErrorKind::DuplicateFact,
                  "ground probabilistic fact " + to_string(atom) +
                      " produced by " + line_of(clauses[it->second]) +
                      " and " + line_of(c));
    }
    table.insert(GroundFact{atom, *c.probability, index});
  };

  for (std::size_t i = 0; i < clauses.size(); ++i) {
    const Clause& c = clauses[i];
    if (!c.is_probabilistic()) {
      continue;
    }
    if (c.body.empty()) {
      for_each_grounding(c.head, universe,
                         [&](const Atom& ground) { add(i, ground); });
      continue;
    }
    for (const Substitution& theta : deterministic.answers(c.body)) {
      Atom head = theta.apply(c.head);
      if (!head.is_ground()) {
        throw Error(ErrorKind::NonGroundAfterGrounding,
                    "head " + to_string(head) + " of probabilistic rule at " +
                        line_of(c) + " is not ground after grounding");
      }
      add(i, head);
    }
  }
  return table;
}

// --- Model ------------------------------------------------------------------

bool Model::insert(const Atom& ground) {
  if (!atoms_.insert(ground).second) {
    return false;
  }
  by_predicate_[ground.id()].push_back(ground);
  return true;
}

bool Model::entails(const Atom& atom) const {
  if (atom.is_ground()) {
    return contains(atom);
  }
  auto it = by_predicate_.find(atom.id());
  if (it == by_predicate_.end()) {
    return false;
  }
  return std::any_of(it->second.begin(), it->second.end(),
                     [&](const Atom& a) { return mgu(atom, a).has_value(); });
}

std::vector<Substitution> Model::answers(std::span<const BodyAtom> body) const {
  std::vector<Substitution> out;
  extend(body, 0, Substitution{}, out);
  return out;
}

void Model::extend(std::span<const BodyAtom> body, std::size_t i,
                   const Substitution& theta,
                   std::vector<Substitution>& out) const {
  if (i == body.size()) {
    out.push_back(theta);
    return;
  }
  const Atom goal = theta.apply(body[i].atom);
  if (goal.is_ground()) {
    if (contains(goal)) {
      extend(body, i + 1, theta, out);
    }
    return;
  }
  auto it = by_predicate_.find(goal.id());
  if (it == by_predicate_.end()) {
    return;
  }
  for (const Atom& fact : it->second) {
    if (auto m = mgu(goal, fact)) {
      extend(body, i + 1, compose(theta, *m), out);
    }
  }
}

Model least_model(std::span<const Clause> rules, std::span<const Atom> facts,
                  const std::set<Term>& universe) {
  Model model;
  for (const Atom& f : facts) {
    model.insert(f);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const Clause& rule : rules) {
      if (rule.is_probabilistic()) {
        continue;
      }
      for (const Substitution& theta : model.answers(rule.body)) {
        for_each_grounding(theta.apply(rule.head), universe,
                           [&](const Atom& ground) {
                             changed = model.insert(ground) || changed;
                           });
      }
    }
  }
  return model;
}

}  // namespace plpx
