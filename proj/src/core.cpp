#include "plpx/core.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace plpx {

Term Term::variable(std::string name, std::uint32_t index) {
  return Term(Kind::Var, std::move(name), index);
}

Term Term::constant(std::string name) {
  return Term(Kind::Const, std::move(name), 0);
}

PredicateId Atom::id() const {
  if (is_query()) {
    return {kQueryPredicate, 1};
  }
  return {predicate, args.size()};
}

bool Atom::is_ground() const {
  return std::none_of(args.begin(), args.end(),
                      [](const Term& t) { return t.is_var(); });
}

Atom make_query_atom(const Atom& goal) {
  return Atom{kQueryPredicate, goal.args, goal.predicate};
}

Atom query_goal(const Atom& query) {
  return Atom{query.reified, query.args, {}};
}

bool Clause::is_ground() const {
  if (!head.is_ground()) {
    return false;
  }
  return std::all_of(body.begin(), body.end(),
                     [](const BodyAtom& b) { return b.atom.is_ground(); });
}

// --- Substitution -----------------------------------------------------------

Substitution::Substitution(
    std::initializer_list<std::pair<Var, Term>> bindings) {
  std::map<Var, Term> parallel;
  for (const auto& [v, t] : bindings) {
    if (t.is_var() && t.as_var() == v) {
      continue;
    }
    parallel.insert_or_assign(v, t);
  }
  // Resolve chains such as {X/Y, Y/a}; a chain longer than the number of
  // bindings means a cycle.
  for (auto& [v, t] : parallel) {
    std::size_t steps = 0;
    while (t.is_var()) {
      auto it = parallel.find(t.as_var());
      if (it == parallel.end()) {
        break;
      }
      if (++steps > parallel.size()) {
        throw std::invalid_argument("cyclic substitution");
      }
      t = it->second;
    }
  }
  for (auto& [v, t] : parallel) {
    if (t.is_var() && t.as_var() == v) {
      throw std::invalid_argument("cyclic substitution");
    }
  }
  bindings_ = std::move(parallel);
}

const Term* Substitution::lookup(const Var& v) const {
  auto it = bindings_.find(v);
  return it == bindings_.end() ? nullptr : &it->second;
}

Term Substitution::apply(const Term& t) const {
  if (!t.is_var() || bindings_.empty()) {
    return t;
  }
  const Term* bound = lookup(t.as_var());
  return bound ? *bound : t;
}

Atom Substitution::apply(const Atom& a) const {
  Atom out = a;
  for (Term& t : out.args) {
    t = apply(t);
  }
  return out;
}

BodyAtom Substitution::apply(const BodyAtom& b) const {
  return BodyAtom{apply(b.atom), b.marked};
}

Clause Substitution::apply(const Clause& c) const {
  Clause out = c;
  out.head = apply(c.head);
  for (BodyAtom& b : out.body) {
    b.atom = apply(b.atom);
  }
  return out;
}

std::vector<Atom> Substitution::apply(const std::vector<Atom>& atoms) const {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const Atom& a : atoms) {
    out.push_back(apply(a));
  }
  return out;
}

std::vector<Clause> Substitution::apply(
    const std::vector<Clause>& clauses) const {
  std::vector<Clause> out;
  out.reserve(clauses.size());
  for (const Clause& c : clauses) {
    out.push_back(apply(c));
  }
  return out;
}

void Substitution::bind(const Var& v, const Term& t) {
  if (t.is_var() && t.as_var() == v) {
    return;
  }
  for (auto& [bound, value] : bindings_) {
    if (value.is_var() && value.as_var() == v) {
      value = t;
    }
  }
  bindings_.insert_or_assign(v, t);
}

Substitution Substitution::restricted_to(const std::set<Var>& vars) const {
  Substitution out;
  for (const auto& [v, t] : bindings_) {
    if (vars.count(v)) {
      out.bindings_.emplace(v, t);
    }
  }
  return out;
}

Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [v, t] : first.bindings()) {
    Term image = second.apply(t);
    if (!(image.is_var() && image.as_var() == v)) {
      out.bindings_.emplace(v, std::move(image));
    }
  }
  for (const auto& [v, t] : second.bindings()) {
    if (!first.lookup(v)) {
      out.bindings_.emplace(v, t);
    }
  }
  return out;
}

std::optional<Substitution> mgu(const Atom& left, const Atom& right) {
  if (left.predicate != right.predicate || left.reified != right.reified ||
      left.args.size() != right.args.size()) {
    return std::nullopt;
  }
  Substitution theta;
  for (std::size_t i = 0; i < left.args.size(); ++i) {
    Term l = theta.apply(left.args[i]);
    Term r = theta.apply(right.args[i]);
    if (l == r) {
      continue;
    }
    if (r.is_var()) {
      theta.bind(r.as_var(), l);
    } else if (l.is_var()) {
      theta.bind(l.as_var(), r);
    } else {
      return std::nullopt;
    }
  }
  return theta;
}

bool is_variant(const Atom& a, const Atom& b) {
  if (a.predicate != b.predicate || a.reified != b.reified ||
      a.args.size() != b.args.size()) {
    return false;
  }
  std::map<Var, Var> forward;
  std::map<Var, Var> backward;
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    const Term& s = a.args[i];
    const Term& t = b.args[i];
    if (s.is_var() != t.is_var()) {
      return false;
    }
    if (s.is_const()) {
      if (s != t) {
        return false;
      }
      continue;
    }
    auto [f, f_new] = forward.emplace(s.as_var(), t.as_var());
    auto [g, g_new] = backward.emplace(t.as_var(), s.as_var());
    if (f->second != t.as_var() || g->second != s.as_var()) {
      return false;
    }
  }
  return true;
}

Clause rename_apart(const Clause& clause, VarSupply& supply) {
  std::vector<Var> vars;
  collect_vars(clause, vars);
  if (vars.empty()) {
    return clause;
  }
  std::map<Var, Term> renaming;
  for (const Var& v : vars) {
    renaming.emplace(v, Term::variable(v.name, supply.next()));
  }
  auto rename = [&](Atom& a) {
    for (Term& t : a.args) {
      if (t.is_var()) {
        t = renaming.at(t.as_var());
      }
    }
  };
  Clause out = clause;
  rename(out.head);
  for (BodyAtom& b : out.body) {
    rename(b.atom);
  }
  return out;
}

void collect_vars(const Term& t, std::vector<Var>& out) {
  if (!t.is_var()) {
    return;
  }
  Var v = t.as_var();
  if (std::find(out.begin(), out.end(), v) == out.end()) {
    out.push_back(std::move(v));
  }
}

void collect_vars(const Atom& a, std::vector<Var>& out) {
  for (const Term& t : a.args) {
    collect_vars(t, out);
  }
}

void collect_vars(const Clause& c, std::vector<Var>& out) {
  collect_vars(c.head, out);
  for (const BodyAtom& b : c.body) {
    collect_vars(b.atom, out);
  }
}

std::set<Var> vars_of(const Atom& a) {
  std::vector<Var> v;
  collect_vars(a, v);
  return {v.begin(), v.end()};
}

std::set<Var> vars_of(const Clause& c) {
  std::vector<Var> v;
  collect_vars(c, v);
  return {v.begin(), v.end()};
}

// --- Rendering --------------------------------------------------------------

std::string probability_text(double p) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p);
  return std::string(buf, end);
}

std::string to_string(const Term& t) {
  if (t.is_var() && t.index() != 0) {
    return t.name() + "#" + std::to_string(t.index());
  }
  return t.name();
}

namespace {

std::string args_text(const std::vector<Term>& args) {
  std::string out;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += to_string(args[i]);
  }
  return out;
}

}  // namespace

std::string to_string(const Atom& a) {
  std::string inner = a.is_query() ? a.reified : a.predicate;
  if (!a.args.empty()) {
    inner += "(" + args_text(a.args) + ")";
  }
  if (a.is_query()) {
    return std::string(kQueryPredicate) + "(" + inner + ")";
  }
  return inner;
}

std::string to_string(const Clause& c) {
  std::string out;
  if (c.probability) {
    out += probability_text(*c.probability) + "::";
  }
  out += to_string(c.head);
  for (std::size_t i = 0; i < c.body.size(); ++i) {
    out += i ? ", " : " :- ";
    if (c.body[i].marked) out += "/*#*/";
    out += to_string(c.body[i].atom);
  }
  return out + ".";
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s.bindings()) {
    if (!first) out += ", ";
    first = false;
    out += to_string(Term::variable(v)) + "/" + to_string(t);
  }
  return out + "}";
}

std::ostream& operator<<(std::ostream& os, const Term& t) {
  return os << to_string(t);
}
std::ostream& operator<<(std::ostream& os, const Atom& a) {
  return os << to_string(a);
}
std::ostream& operator<<(std::ostream& os, const Clause& c) {
  return os << to_string(c);
}
std::ostream& operator<<(std::ostream& os, const Substitution& s) {
  return os << to_string(s);
}

}  // namespace plpx
