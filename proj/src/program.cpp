#include "plpx/program.hpp"

#include <algorithm>

#include "plpx/error.hpp"

namespace plpx {

namespace {

std::string at_line(const Clause& c) {
  return c.line ? " (line " + std::to_string(c.line) + ")" : "";
}

[[noreturn]] void load_error(const std::string& detail) {
  throw Error(ErrorKind::Load, detail);
}

}  // namespace

void Program::add_clause(Clause clause) {
  if (clause.origin == 0) {
    clause.origin = next_origin_;
  }
  next_origin_ = std::max(next_origin_, clause.origin) + 1;
  clauses_.push_back(std::move(clause));
}

void Program::validate() {
  prob_.clear();
  derived_.clear();
  index_.clear();

  std::map<std::string, std::size_t> arity;
  auto check_arity = [&](const std::string& name, std::size_t n,
                         const std::string& where) {
    auto [it, inserted] = arity.emplace(name, n);
    if (!inserted && it->second != n) {
      load_error("arity clash for predicate " + name + ": " +
                 std::to_string(it->second) + " vs " + std::to_string(n) +
                 where);
    }
  };
  auto check_atom = [&](const Atom& a, const std::string& where) {
    if (a.is_query()) {
      check_arity(a.reified, a.args.size(), where);
    } else if (a.predicate == kQueryPredicate) {
      load_error("predicate query is reserved for query declarations" + where);
    } else {
      check_arity(a.predicate, a.args.size(), where);
    }
  };

  for (std::size_t i = 0; i < clauses_.size(); ++i) {
    const Clause& c = clauses_[i];
    const std::string where = at_line(c);
    if (c.probability && !(*c.probability >= 0.0 && *c.probability <= 1.0)) {
      load_error("probability out of range" + where);
    }
    check_atom(c.head, where);
    for (const BodyAtom& b : c.body) {
      if (b.atom.is_query()) {
        load_error("query(...) cannot occur in a clause body" + where);
      }
      check_atom(b.atom, where);
    }
    if (c.head.is_query() && c.probability) {
      load_error("query clauses cannot be probabilistic" + where);
    }
    (c.probability ? prob_ : derived_).insert(c.head.id());
    index_[c.head.id()].push_back(i);
  }
  for (const Atom& q : queries_) {
    check_atom(q, "");
  }

  for (const PredicateId& p : prob_) {
    if (derived_.count(p)) {
      load_error("predicate " + p.str() + " is both probabilistic and derived");
    }
  }
  for (const Clause& c : clauses_) {
    if (!c.probability) {
      continue;
    }
    for (const BodyAtom& b : c.body) {
      if (prob_.count(b.atom.id())) {
        load_error("probabilistic rule body mentions probabilistic predicate " +
                   b.atom.id().str() + at_line(c));
      }
    }
  }
  for (const PredicateId& p : visible_) {
    check_arity(p.name, p.arity, "");
    if (!is_defined(p)) {
      load_error("visible directive names unknown predicate " + p.str());
    }
    if (!is_derived(p)) {
      load_error("visible predicate " + p.str() + " is not a derived predicate");
    }
  }
  for (const PredicateId& p : unsafe_) {
    check_arity(p.name, p.arity, "");
    if (!is_defined(p)) {
      load_error("unsafe directive names unknown predicate " + p.str());
    }
  }
}

std::span<const std::size_t> Program::clauses_for(const PredicateId& p) const {
  auto it = index_.find(p);
  if (it == index_.end()) {
    return {};
  }
  return it->second;
}

std::set<std::string> Program::predicate_names() const {
  std::set<std::string> names;
  auto add = [&](const Atom& a) {
    names.insert(a.is_query() ? a.reified : a.predicate);
  };
  for (const Clause& c : clauses_) {
    add(c.head);
    for (const BodyAtom& b : c.body) {
      add(b.atom);
    }
  }
  for (const Atom& q : queries_) {
    add(q);
  }
  for (const PredicateId& p : visible_) names.insert(p.name);
  for (const PredicateId& p : unsafe_) names.insert(p.name);
  return names;
}

bool Program::has_query_clauses() const {
  return std::any_of(clauses_.begin(), clauses_.end(),
                     [](const Clause& c) { return c.head.is_query(); });
}

std::vector<Atom> Program::query_clause_heads() const {
  std::vector<Atom> heads;
  for (const Clause& c : clauses_) {
    if (c.head.is_query() &&
        std::find(heads.begin(), heads.end(), c.head) == heads.end()) {
      heads.push_back(c.head);
    }
  }
  return heads;
}

}  // namespace plpx
