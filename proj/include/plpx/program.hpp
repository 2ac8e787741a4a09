#ifndef PLPX_PROGRAM_HPP
#define PLPX_PROGRAM_HPP

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "plpx/core.hpp"

namespace plpx {

// A probabilistic logic program: clauses in textual order, the partition of
// defined predicates into probabilistic and derived ones, visibility and
// unsafe annotations, and the declared queries.
class Program {
 public:
  // Appends a clause. Its origin tag is set to its position unless the
  // caller already tagged it.
  void add_clause(Clause clause);
  void add_query(Atom goal) { queries_.push_back(std::move(goal)); }
  void declare_visible(PredicateId pred) { visible_.insert(std::move(pred)); }
  void declare_unsafe(PredicateId pred) { unsafe_.insert(std::move(pred)); }

  // Recomputes the predicate partition and the clause index, then checks the
  // load-time invariants. Throws Error(ErrorKind::Load).
  void validate();

  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::vector<Atom>& queries() const { return queries_; }
  const std::set<PredicateId>& prob_predicates() const { return prob_; }
  const std::set<PredicateId>& derived_predicates() const { return derived_; }
  const std::set<PredicateId>& visible() const { return visible_; }
  const std::set<PredicateId>& unsafe() const { return unsafe_; }

  bool is_probabilistic(const PredicateId& p) const { return prob_.count(p); }
  bool is_derived(const PredicateId& p) const { return derived_.count(p); }
  bool is_defined(const PredicateId& p) const {
    return is_probabilistic(p) || is_derived(p);
  }
  bool is_visible(const PredicateId& p) const { return visible_.count(p); }
  bool is_unsafe(const PredicateId& p) const { return unsafe_.count(p); }

  // Indices into clauses() of the clauses whose head has predicate `p`, in
  // textual order. Valid after validate().
  std::span<const std::size_t> clauses_for(const PredicateId& p) const;

  // Every predicate name mentioned anywhere (heads, bodies, queries).
  std::set<std::string> predicate_names() const;

  // True when some clause has a query(...) head, i.e. this is an emitted
  // explanation or union rather than a source program.
  bool has_query_clauses() const;

  // Query heads of query(...) clauses, deduplicated, in first-seen order.
  std::vector<Atom> query_clause_heads() const;

 private:
  std::vector<Clause> clauses_;
  std::vector<Atom> queries_;
  std::set<PredicateId> prob_;
  std::set<PredicateId> derived_;
  std::set<PredicateId> visible_;
  std::set<PredicateId> unsafe_;
  std::map<PredicateId, std::vector<std::size_t>> index_;
  std::uint32_t next_origin_ = 1;
};

}  // namespace plpx

#endif  // PLPX_PROGRAM_HPP
