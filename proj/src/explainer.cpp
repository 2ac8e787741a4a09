#include "plpx/explainer.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "plpx/error.hpp"
#include "plpx/parser.hpp"

namespace plpx {

namespace {

std::map<std::uint32_t, std::size_t> index_by_id(const Explanation& e) {
  std::map<std::uint32_t, std::size_t> out;
  for (std::size_t i = 0; i < e.clauses.size(); ++i) {
    out.emplace(e.clauses[i].id, i);
  }
  return out;
}

// Visits the unmarked atoms reachable from the query clause through links,
// in proof-tree order.
template <typename Visit>
void walk(const Explanation& e, Visit&& visit) {
  if (e.clauses.empty()) {
    return;
  }
  const auto by_id = index_by_id(e);
  std::set<std::size_t> seen;
  std::function<void(std::size_t)> go = [&](std::size_t c) {
    if (!seen.insert(c).second) {
      return;
    }
    const ExplClause& clause = e.clauses[c];
    for (std::size_t j = 0; j < clause.body.size(); ++j) {
      const ExplAtom& a = clause.body[j];
      if (!a.marked) {
        visit(Selection{c, j});
      } else if (a.link) {
        auto it = by_id.find(*a.link);
        if (it != by_id.end()) {
          go(it->second);
        }
      }
    }
  };
  go(0);
}

std::set<std::uint32_t> reachable_ids(const Explanation& e) {
  std::set<std::uint32_t> ids;
  if (e.clauses.empty()) {
    return ids;
  }
  const auto by_id = index_by_id(e);
  std::vector<std::size_t> todo{0};
  while (!todo.empty()) {
    const ExplClause& c = e.clauses[todo.back()];
    todo.pop_back();
    if (!ids.insert(c.id).second) {
      continue;
    }
    for (const ExplAtom& a : c.body) {
      if (a.link) {
        auto it = by_id.find(*a.link);
        if (it != by_id.end()) {
          todo.push_back(it->second);
        }
      }
    }
  }
  return ids;
}

bool blocked(const ExplAtom& a) {
  return std::any_of(a.ancestors.begin(), a.ancestors.end(),
                     [&](const Atom& anc) { return is_variant(a.atom, anc); });
}

bool unifies_with_some_head(const Atom& atom, const Program& program) {
  VarSupply probe(std::numeric_limits<std::uint32_t>::max() - 1024);
  for (std::size_t ci : program.clauses_for(atom.id())) {
    Clause c = rename_apart(program.clauses()[ci], probe);
    if (mgu(atom, c.head)) {
      return true;
    }
  }
  return false;
}

void apply_all(const Substitution& theta, Explanation& e) {
  for (ExplClause& c : e.clauses) {
    c.head = theta.apply(c.head);
    for (ExplAtom& a : c.body) {
      a.atom = theta.apply(a.atom);
      for (Atom& anc : a.ancestors) {
        anc = theta.apply(anc);
      }
    }
  }
}

// Merges probabilistic clauses that denote the same ground fact and drops
// clauses no longer reachable from the query clause.
void normalize(Explanation& e) {
  bool merged = true;
  while (merged) {
    merged = false;
    for (std::size_t i = 1; i < e.clauses.size() && !merged; ++i) {
      const ExplClause& later = e.clauses[i];
      if (!later.is_probabilistic()) {
        continue;
      }
      for (std::size_t j = 1; j < i; ++j) {
        const ExplClause& earlier = e.clauses[j];
        if (earlier.is_probabilistic() && earlier.source == later.source &&
            earlier.head == later.head) {
          const std::uint32_t from = later.id;
          const std::uint32_t to = earlier.id;
          for (ExplClause& c : e.clauses) {
            for (ExplAtom& a : c.body) {
              if (a.link == from) {
                a.link = to;
              }
            }
          }
          e.clauses.erase(e.clauses.begin() + static_cast<std::ptrdiff_t>(i));
          merged = true;
          break;
        }
      }
    }
  }
  const std::set<std::uint32_t> keep = reachable_ids(e);
  std::erase_if(e.clauses,
                [&](const ExplClause& c) { return !keep.count(c.id); });
}

bool is_pruned(const Explanation& e) {
  const std::vector<Selection> open = open_atoms(e);
  return !open.empty() &&
         std::all_of(open.begin(), open.end(), [&](const Selection& s) {
           return blocked(e.clauses[s.clause].body[s.atom]);
         });
}

}  // namespace

Clause ExplClause::to_clause(bool keep_marks) const {
  Clause c;
  c.probability = probability;
  c.head = head;
  for (const ExplAtom& a : body) {
    c.body.push_back(BodyAtom{a.atom, keep_marks && a.marked});
  }
  return c;
}

const ExplClause* Explanation::find(std::uint32_t id) const {
  for (const ExplClause& c : clauses) {
    if (c.id == id) {
      return &c;
    }
  }
  return nullptr;
}

Atom rho(const Atom& a, RenamingState& state) {
  unsigned& k = state.counters[a.predicate];
  std::string name;
  do {
    ++k;
    name = a.predicate + "_" + std::to_string(k);
  } while (state.taken.count(name) ||
           (state.reserved && state.reserved->count(name)));
  state.taken.insert(name);
  Atom out = a;
  out.predicate = std::move(name);
  return out;
}

Explanation initial_explanation(const Atom& q, const Program& program) {
  if (!program.is_defined(q.id())) {
    throw Error(ErrorKind::UnknownPredicate,
                "no clauses for query predicate " + q.id().str());
  }
  auto reserved = std::make_shared<std::set<std::string>>(program.predicate_names());
  reserved->insert(kQueryPredicate);

  Explanation e;
  e.query = q;
  e.rename_state.reserved = std::move(reserved);
  ExplClause query_clause;
  query_clause.id = e.next_id++;
  query_clause.head = make_query_atom(q);
  query_clause.body.push_back(ExplAtom{q, false, {}, std::nullopt});
  e.clauses.push_back(std::move(query_clause));
  return e;
}

std::vector<Selection> open_atoms(const Explanation& e) {
  std::vector<Selection> out;
  walk(e, [&](const Selection& s) { out.push_back(s); });
  return out;
}

std::optional<Selection> select_atom(const Explanation& e) {
  for (const Selection& s : open_atoms(e)) {
    if (!blocked(e.clauses[s.clause].body[s.atom])) {
      return s;
    }
  }
  return std::nullopt;
}

std::vector<Explanation> unfold_step(const Explanation& e,
                                     const Program& program,
                                     VarSupply& supply) {
  std::vector<Explanation> out;
  const std::optional<Selection> sel = select_atom(e);
  if (!sel) {
    return out;
  }
  const ExplClause& host = e.clauses[sel->clause];
  const ExplAtom& call = host.body[sel->atom];
  const PredicateId pred = call.atom.id();
  const bool prob_call = program.is_probabilistic(pred);
  const bool rename =
      !prob_call && (program.is_visible(pred) ||
                     (host.is_probabilistic() && program.is_unsafe(pred)));
  const std::set<Var> query_vars = vars_of(e.query);

  std::vector<Atom> ancestors = call.ancestors;
  ancestors.push_back(call.atom);

  for (std::size_t ci : program.clauses_for(pred)) {
    Clause c = rename_apart(program.clauses()[ci], supply);
    auto theta = mgu(call.atom, c.head);
    if (!theta) {
      continue;
    }
    std::vector<ExplAtom> body;
    for (const BodyAtom& b : c.body) {
      body.push_back(ExplAtom{b.atom, false, ancestors, std::nullopt});
    }

    Explanation next = e;
    std::vector<ExplAtom>& host_body = next.clauses[sel->clause].body;
    if (prob_call || rename) {
      ExplClause added;
      added.id = next.next_id++;
      added.body = std::move(body);
      if (prob_call) {
        added.probability = c.probability;
        added.head = c.head;
        added.source = ci;
        host_body[sel->atom].marked = true;
      } else {
        added.head = rho(call.atom, next.rename_state);
        host_body[sel->atom] =
            ExplAtom{added.head, true, call.ancestors, std::nullopt};
      }
      host_body[sel->atom].link = added.id;
      next.clauses.push_back(std::move(added));
    } else {
      auto pos = host_body.erase(host_body.begin() +
                                 static_cast<std::ptrdiff_t>(sel->atom));
      host_body.insert(pos, body.begin(), body.end());
    }
    apply_all(*theta, next);
    next.bindings = compose(next.bindings, *theta).restricted_to(query_vars);
    ++next.steps;
    next.status = classify(next, program);
    out.push_back(std::move(next));
  }
  return out;
}

ExplanationStatus classify(const Explanation& e, const Program& program) {
  const std::vector<Selection> open = open_atoms(e);
  if (open.empty()) {
    return ExplanationStatus::Successful;
  }
  bool selectable = false;
  for (const Selection& s : open) {
    const ExplAtom& a = e.clauses[s.clause].body[s.atom];
    if (blocked(a)) {
      continue;
    }
    selectable = true;
    if (!unifies_with_some_head(a.atom, program)) {
      return ExplanationStatus::Failing;
    }
  }
  return selectable ? ExplanationStatus::Partial : ExplanationStatus::Failing;
}

double explanation_probability(const Explanation& e) {
  if (e.status != ExplanationStatus::Successful) {
    throw Error(ErrorKind::NotSuccessful,
                "probability requested for an explanation that is not successful");
  }
  double p = 1.0;
  for (const ExplClause& c : e.clauses) {
    if (c.is_probabilistic()) {
      p *= *c.probability;
    }
  }
  return p;
}

GenerationResult generate_explanations(const Atom& q, const Program& program,
                                       const SolveLimits& limits) {
  if (program.has_query_clauses()) {
    throw Error(ErrorKind::Load,
                "program already defines query/1 clauses; query must be fresh");
  }
  GenerationResult result;
  Explanation init = initial_explanation(q, program);
  init.status = classify(init, program);

  VarSupply supply;
  std::vector<Explanation> stack;
  stack.push_back(std::move(init));
  while (!stack.empty()) {
    Explanation e = std::move(stack.back());
    stack.pop_back();
    switch (e.status) {
      case ExplanationStatus::Successful: {
        normalize(e);
        for (const ExplClause& c : e.clauses) {
          if (c.is_probabilistic() && !c.head.is_ground()) {
            throw Error(ErrorKind::NonGroundProbClause,
                        "explanation of " + to_string(q) +
                            " contains the non-ground probabilistic clause " +
                            to_string(c.to_clause(false)));
          }
        }
        const double p = explanation_probability(e);
        result.explanations.push_back(GeneratedExplanation{std::move(e), p});
        continue;
      }
      case ExplanationStatus::Failing:
        if (is_pruned(e)) {
          ++result.pruned;
        } else {
          ++result.failed;
        }
        continue;
      case ExplanationStatus::Partial:
        break;
    }
    if (e.steps >= limits.max_steps ||
        result.total_steps >= limits.max_total_steps) {
      result.limit_exceeded = true;
      if (result.total_steps >= limits.max_total_steps) {
        break;
      }
      continue;
    }
    ++result.total_steps;
    std::vector<Explanation> next = unfold_step(e, program, supply);
    if (next.empty()) {
      ++result.failed;
      continue;
    }
    for (auto it = next.rbegin(); it != next.rend(); ++it) {
      stack.push_back(std::move(*it));
    }
  }
  return result;
}

std::vector<Clause> explanation_clauses(const Explanation& e, bool keep_marks) {
  struct Keyed {
    int group;
    std::string predicate;
    std::string text;
    Clause clause;
  };
  std::vector<Keyed> keyed;
  for (const ExplClause& c : e.clauses) {
    Clause clause = c.to_clause(keep_marks);
    const int group = c.is_probabilistic() ? 0 : (c.head.is_query() ? 2 : 1);
    std::string predicate = group == 1 ? c.head.predicate : std::string{};
    std::string text = format_clause(clause, keep_marks);
    keyed.push_back(Keyed{group, std::move(predicate), std::move(text),
                          std::move(clause)});
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const Keyed& a, const Keyed& b) {
                     return std::tie(a.group, a.predicate, a.text) <
                            std::tie(b.group, b.predicate, b.text);
                   });
  std::vector<Clause> out;
  for (Keyed& k : keyed) {
    out.push_back(std::move(k.clause));
  }
  return out;
}

Program to_program(const Explanation& e) {
  Program p;
  for (Clause& c : explanation_clauses(e, false)) {
    p.add_clause(std::move(c));
  }
  p.validate();
  return p;
}

Program union_program(const std::vector<Explanation>& es) {
  std::vector<Clause> clauses;
  for (const Explanation& e : es) {
    for (Clause& c : explanation_clauses(e, false)) {
      auto same = std::find_if(clauses.begin(), clauses.end(),
                               [&](const Clause& d) {
                                 if (c.is_probabilistic() &&
                                     d.is_probabilistic()) {
                                   return c.head == d.head;
                                 }
                                 return c == d;
                               });
      if (same == clauses.end()) {
        clauses.push_back(std::move(c));
      } else if (same->probability != c.probability) {
        throw std::logic_error("probabilistic fact " + to_string(c.head) +
                               " appears with two different probabilities");
      }
    }
  }
  Program p;
  for (Clause& c : clauses) {
    p.add_clause(std::move(c));
  }
  p.validate();
  return p;
}

}  // namespace plpx
