#ifndef PLPX_PARSER_HPP
#define PLPX_PARSER_HPP

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "plpx/core.hpp"
#include "plpx/program.hpp"

namespace plpx {

// Surface syntax (Prolog style, function-free):
//
//   0.3::influences(bob,carl).          probabilistic fact
//   0.8::stress(X) :- person(X).        probabilistic (intensional) rule
//   smokes(X) :- stress(X).             derived clause
//   query(smokes(carl)).                query declaration
//   query(smokes(carl)) :- stress(bob). query clause (explanation output)
//   :- visible(smokes/1).               annotations
//   :- unsafe(person/1).
//   % line comment, /* block comment */
//
// A body of just `true` is the empty body. The block comment `/*#*/` before a
// body atom marks it; parse_program ignores marks, parse_clause_set keeps them.
//
// Throws Error(ErrorKind::Parse) with line/column on syntax errors and
// Error(ErrorKind::Load) when a load-time invariant is violated.
Program parse_program(std::string_view text);
Program load_program_file(const std::filesystem::path& path);

// Clauses only (no directives or query declarations allowed), marks kept.
std::vector<Clause> parse_clause_set(std::string_view text);

// Canonical text: directives, probabilistic clauses (sorted), derived
// clauses (by head predicate, then text), query clauses, query declarations
// in declaration order. One clause per line.
std::string format_program(const Program& program);
std::string format_clauses(std::span<const Clause> clauses,
                           bool keep_marks = true);

// A single clause with readable variable names (source names, numeric
// suffixes on collision).
std::string format_clause(const Clause& clause, bool keep_marks = true);
std::string format_atom(const Atom& atom);

}  // namespace plpx

#endif  // PLPX_PARSER_HPP
