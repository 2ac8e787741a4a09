#ifndef PLPX_CORE_HPP
#define PLPX_CORE_HPP

// Function-free first-order syntax: terms are constants or variables only,
// so unification never needs an occurs check.

#include <atomic>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace plpx {

// A variable is identified by its source name and a renaming index. Parsed
// variables carry index 0; rename_apart hands out fresh indices.
struct Var {
  std::string name;
  std::uint32_t index = 0;

  auto operator<=>(const Var&) const = default;
};

class Term {
 public:
  static Term variable(std::string name, std::uint32_t index = 0);
  static Term variable(const Var& v) { return variable(v.name, v.index); }
  static Term constant(std::string name);

  bool is_var() const { return kind_ == Kind::Var; }
  bool is_const() const { return kind_ == Kind::Const; }
  const std::string& name() const { return name_; }
  std::uint32_t index() const { return index_; }
  Var as_var() const { return Var{name_, index_}; }

  auto operator<=>(const Term&) const = default;

 private:
  enum class Kind : std::uint8_t { Const, Var };

  Term(Kind kind, std::string name, std::uint32_t index)
      : kind_(kind), name_(std::move(name)), index_(index) {}

  Kind kind_ = Kind::Const;
  std::string name_;
  std::uint32_t index_ = 0;
};

struct PredicateId {
  std::string name;
  std::size_t arity = 0;

  std::string str() const { return name + "/" + std::to_string(arity); }
  auto operator<=>(const PredicateId&) const = default;
};

inline constexpr const char* kQueryPredicate = "query";

struct Atom {
  std::string predicate;
  std::vector<Term> args;
  // Non-empty only for the wrapper atom query(g): holds g's predicate name,
  // while `args` are g's arguments.
  std::string reified;

  PredicateId id() const;
  bool is_query() const { return !reified.empty(); }
  bool is_ground() const;

  auto operator<=>(const Atom&) const = default;
};

// query(goal)
Atom make_query_atom(const Atom& goal);
// goal, for an atom built by make_query_atom.
Atom query_goal(const Atom& query);

struct BodyAtom {
  Atom atom;
  bool marked = false;

  auto operator<=>(const BodyAtom&) const = default;
};

struct Clause {
  std::optional<double> probability;
  Atom head;
  std::vector<BodyAtom> body;
  // Ordinal of the source clause this one stems from, and its line (0 when
  // the clause was built programmatically).
  std::uint32_t origin = 0;
  std::uint32_t line = 0;

  bool is_probabilistic() const { return probability.has_value(); }
  bool is_fact() const { return body.empty(); }
  bool is_ground() const;

  // Origin tags are metadata and do not take part in equality.
  bool operator==(const Clause& other) const {
    return probability == other.probability && head == other.head &&
           body == other.body;
  }
};

class Substitution {
 public:
  Substitution() = default;
  // Parallel bindings, normalized to idempotent form. Throws
  // std::invalid_argument on a cyclic binding set such as {X/Y, Y/X}.
  Substitution(std::initializer_list<std::pair<Var, Term>> bindings);

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const std::map<Var, Term>& bindings() const { return bindings_; }
  const Term* lookup(const Var& v) const;

  Term apply(const Term& t) const;
  Atom apply(const Atom& a) const;
  BodyAtom apply(const BodyAtom& b) const;
  Clause apply(const Clause& c) const;
  std::vector<Atom> apply(const std::vector<Atom>& atoms) const;
  std::vector<Clause> apply(const std::vector<Clause>& clauses) const;

  // Extends with {v/t}; t must already be fully applied (no variable of t is
  // bound here). The result stays idempotent.
  void bind(const Var& v, const Term& t);

  Substitution restricted_to(const std::set<Var>& vars) const;

  bool operator==(const Substitution&) const = default;

 private:
  friend Substitution compose(const Substitution&, const Substitution&);

  std::map<Var, Term> bindings_;
};

// apply(compose(first, second), x) == apply(second, apply(first, x)).
// The result is idempotent when no variable bound by `first` occurs in the
// range of `second`, which is always the case along a resolution chain.
Substitution compose(const Substitution& first, const Substitution& second);

// Most general unifier; variable-variable pairs bind the right-hand variable
// so the left atom keeps its names.
std::optional<Substitution> mgu(const Atom& left, const Atom& right);

bool is_variant(const Atom& a, const Atom& b);

// Fresh-index source for renaming apart. Thread-safe.
class VarSupply {
 public:
  explicit VarSupply(std::uint32_t first = 1) : next_(first) {}
  std::uint32_t next() { return next_.fetch_add(1, std::memory_order_relaxed); }

 private:
  std::atomic<std::uint32_t> next_;
};

Clause rename_apart(const Clause& clause, VarSupply& supply);

// Variables in order of first occurrence.
void collect_vars(const Term& t, std::vector<Var>& out);
void collect_vars(const Atom& a, std::vector<Var>& out);
void collect_vars(const Clause& c, std::vector<Var>& out);
std::set<Var> vars_of(const Atom& a);
std::set<Var> vars_of(const Clause& c);

// Shortest decimal text that reads back to the same double.
std::string probability_text(double p);

// Raw rendering (variables with a non-zero index print as Name#index).
// Use the parser's formatter for user-facing output.
std::string to_string(const Term& t);
std::string to_string(const Atom& a);
std::string to_string(const Clause& c);
std::string to_string(const Substitution& s);

std::ostream& operator<<(std::ostream& os, const Term& t);
std::ostream& operator<<(std::ostream& os, const Atom& a);
std::ostream& operator<<(std::ostream& os, const Clause& c);
std::ostream& operator<<(std::ostream& os, const Substitution& s);

}  // namespace plpx

#endif  // PLPX_CORE_HPP
