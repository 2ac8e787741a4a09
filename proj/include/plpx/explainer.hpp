#ifndef PLPX_EXPLAINER_HPP
#define PLPX_EXPLAINER_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plpx/core.hpp"
#include "plpx/program.hpp"
#include "plpx/sld.hpp"

namespace plpx {

// A body atom of an explanation clause. Marked atoms are never selected; a
// marked call produced by renaming or by adding a probabilistic clause links
// to the clause that defines it.
struct ExplAtom {
  Atom atom;
  bool marked = false;
  std::vector<Atom> ancestors;
  std::optional<std::uint32_t> link;
};

struct ExplClause {
  std::uint32_t id = 0;
  std::optional<double> probability;
  Atom head;
  std::vector<ExplAtom> body;
  // Source program clause, for probabilistic clauses.
  std::optional<std::size_t> source;

  bool is_probabilistic() const { return probability.has_value(); }
  Clause to_clause(bool keep_marks = true) const;
};

// Fresh predicate names for rho: per predicate name a counter, plus every
// name already taken (source program names and names handed out so far).
struct RenamingState {
  std::map<std::string, unsigned> counters;
  std::set<std::string> taken;
  std::shared_ptr<const std::set<std::string>> reserved;
};

// Same arguments, predicate renamed to `name_k` for the smallest k above the
// last one used for `name` that gives a fresh name.
Atom rho(const Atom& a, RenamingState& state);

enum class ExplanationStatus { Partial, Successful, Failing };

struct Explanation {
  Atom query;
  // clauses[0] is the query clause; the rest in insertion order.
  std::vector<ExplClause> clauses;
  // Accumulated unifiers, restricted to the variables of `query`.
  Substitution bindings;
  RenamingState rename_state;
  ExplanationStatus status = ExplanationStatus::Partial;
  std::size_t steps = 0;
  std::uint32_t next_id = 0;

  const ExplClause& query_clause() const { return clauses.front(); }
  const ExplClause* find(std::uint32_t id) const;
};

// {query(q) :- q}. Throws UnknownPredicate when q's predicate has no clauses.
Explanation initial_explanation(const Atom& q, const Program& program);

struct Selection {
  std::size_t clause = 0;  // index into Explanation::clauses
  std::size_t atom = 0;    // index into that clause's body
};

// The unmarked atoms in proof-tree order: the query clause's body left to
// right, descending into the defining clause of each linked mark.
std::vector<Selection> open_atoms(const Explanation& e);

// First open atom that is not a variant of one of its ancestors.
std::optional<Selection> select_atom(const Explanation& e);

// One successor per program clause whose renamed-apart head unifies with the
// selected atom, in program order. Empty when nothing is selectable or
// nothing unifies.
std::vector<Explanation> unfold_step(const Explanation& e,
                                     const Program& program, VarSupply& supply);

// Successful: no open atom left. Failing: some selectable atom unifies with
// no clause head, or every open atom is blocked. Partial otherwise.
ExplanationStatus classify(const Explanation& e, const Program& program);

// Throws NotSuccessful for explanations that are not successful.
double explanation_probability(const Explanation& e);

struct GeneratedExplanation {
  Explanation explanation;
  double probability = 0.0;
};

struct GenerationResult {
  std::vector<GeneratedExplanation> explanations;
  bool limit_exceeded = false;
  std::size_t pruned = 0;
  std::size_t failed = 0;
  std::size_t total_steps = 0;
};

// Depth-first enumeration of the successful explanations of q in discovery
// order. Throws Load for programs that already contain query clauses and
// NonGroundProbClause for successful explanations with a non-ground
// probabilistic clause.
GenerationResult generate_explanations(const Atom& q, const Program& program,
                                       const SolveLimits& limits = {});

// Explanation clauses for display: probabilistic clauses sorted by text,
// derived clauses by predicate then text, the query clause last.
std::vector<Clause> explanation_clauses(const Explanation& e,
                                        bool keep_marks = true);

// The explanation as a standalone program (marks stripped).
Program to_program(const Explanation& e);

// Clause-set union of successful explanations of one query; marks stripped,
// identical clauses and probabilistic clauses with the same ground head
// merged.
Program union_program(const std::vector<Explanation>& es);

}  // namespace plpx

#endif  // PLPX_EXPLAINER_HPP
