#ifndef PLPX_GROUNDER_HPP
#define PLPX_GROUNDER_HPP

#include <map>
#include <optional>
#include <set>
#include <span>
#include <vector>

#include "plpx/core.hpp"
#include "plpx/program.hpp"

namespace plpx {

struct GroundFact {
  Atom atom;
  double probability = 0.0;
  // Index into Program::clauses() of the clause that produced the fact.
  std::size_t clause_index = 0;
};

// G(P): the ground probabilistic facts of a program. One entry per ground
// atom, except for unsafe predicates where each producing clause contributes
// its own entry. Entries are ordered by producing clause, then atom.
class GroundFactTable {
 public:
  const std::vector<GroundFact>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::optional<std::size_t> find(const Atom& atom) const;
  std::optional<double> probability(const Atom& atom) const;

  // Adds an entry, keeping the ordering. Returns false when an entry with the
  // same atom and clause already exists.
  bool insert(GroundFact fact);

 private:
  std::vector<GroundFact> entries_;
};

// The constants of the program's clauses and queries. Throws EmptyUniverse
// when there are none but some probabilistic clause is non-ground.
std::set<Term> herbrand_constants(const Program& program);

// Expands non-ground probabilistic facts over the Herbrand universe and
// intensional facts over the answers of their (deterministic) bodies.
// Throws StochasticGrounding, DuplicateFact or NonGroundAfterGrounding.
GroundFactTable ground_probabilistic_facts(const Program& program);

// Least Herbrand model of a set of definite clauses plus ground facts.
// Head variables not bound by the body range over `universe`.
class Model {
 public:
  bool contains(const Atom& ground) const { return atoms_.count(ground); }
  // True if some instance of `atom` is in the model.
  bool entails(const Atom& atom) const;
  // All substitutions making the conjunction true, over its variables.
  std::vector<Substitution> answers(std::span<const BodyAtom> body) const;
  const std::set<Atom>& atoms() const { return atoms_; }

  bool insert(const Atom& ground);

 private:
  void extend(std::span<const BodyAtom> body, std::size_t i,
              const Substitution& theta,
              std::vector<Substitution>& out) const;

  std::set<Atom> atoms_;
  std::map<PredicateId, std::vector<Atom>> by_predicate_;
};

// Probabilistic clauses in `rules` are ignored.
Model least_model(std::span<const Clause> rules, std::span<const Atom> facts,
                  const std::set<Term>& universe);

}  // namespace plpx

#endif  // PLPX_GROUNDER_HPP
