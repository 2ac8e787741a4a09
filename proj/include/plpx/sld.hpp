#ifndef PLPX_SLD_HPP
#define PLPX_SLD_HPP

#include <optional>
#include <span>
#include <vector>

#include "plpx/core.hpp"
#include "plpx/program.hpp"

namespace plpx {

// A goal atom with the chain of (instantiated) atoms it was derived from.
struct GoalAtom {
  Atom atom;
  std::vector<Atom> ancestors;
  bool marked = false;
};

using Goal = std::vector<GoalAtom>;

// True when the atom is a variant of one of its ancestors.
bool is_blocked(const GoalAtom& g);

// Leftmost atom that is neither marked nor blocked.
std::optional<std::size_t> select_atom(std::span<const GoalAtom> goal);

struct Resolvent {
  Goal goal;
  Substitution mgu;
  std::size_t clause_index = 0;
  // The renamed-apart program clause, with mgu applied.
  Clause clause;
};

// One resolvent per program clause whose renamed head unifies with the
// selected atom, in program order. Probabilities play no role here.
std::vector<Resolvent> sld_step(const Goal& goal, std::size_t selected,
                                const Program& program, VarSupply& supply);

struct SolveLimits {
  std::size_t max_steps = 10'000;         // resolution steps per derivation
  std::size_t max_total_steps = 1'000'000;  // resolution steps per search
};

struct DerivationStep {
  Atom selected;
  std::size_t clause_index = 0;
  Substitution mgu;
};

// A ground instance of a probabilistic clause used by a derivation.
struct UsedClause {
  std::size_t clause_index = 0;
  Clause instance;
};

struct Derivation {
  Atom query;
  std::vector<DerivationStep> steps;
  // Composition of the step mgus restricted to the query's variables.
  Substitution answer;
  // prob_facts(D): one entry per (clause, ground head), in order of use.
  std::vector<UsedClause> used_prob_clauses;
};

struct SolveResult {
  std::vector<Derivation> derivations;
  bool limit_exceeded = false;
  std::size_t pruned = 0;  // branches whose remaining atoms were all blocked
  std::size_t failed = 0;
  std::size_t total_steps = 0;
};

// Depth-first, clause-order enumeration of the successful derivations of
// `query` under the variant-ancestor selection strategy. Throws
// NonGroundProbClause when a successful derivation leaves a used
// probabilistic clause non-ground.
SolveResult solve(const Atom& query, const Program& program,
                  const SolveLimits& limits = {});

// Product of the probabilities of the distinct used probabilistic clauses.
double proof_probability(const Derivation& d);

// Most probable successful derivation; ties go to the earliest one.
std::optional<Derivation> most_likely_proof(const Atom& query,
                                            const Program& program,
                                            const SolveLimits& limits = {});

}  // namespace plpx

#endif  // PLPX_SLD_HPP
