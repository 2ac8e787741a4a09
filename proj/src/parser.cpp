#include "plpx/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "plpx/error.hpp"

namespace plpx {

namespace {

enum class Tok {
  Name,      // lowercase-initial identifier
  Variable,  // uppercase- or underscore-initial identifier
  Number,
  LParen,
  RParen,
  Comma,
  Dot,
  Neck,    // :-
  Label,   // ::
  Slash,
  Mark,    // /*#*/
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space_and_comments(out);
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", line_, col_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Parse, "line " + std::to_string(line_) +
                                      ", column " + std::to_string(col_) +
                                      ": " + what);
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void advance(std::size_t n = 1) {
    for (std::size_t i = 0; i < n && pos_ < src_.size(); ++i) {
      if (src_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_space_and_comments(std::vector<Token>& out) {
    while (pos_ < src_.size()) {
      char c = peek();
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == '%') {
        while (pos_ < src_.size() && peek() != '\n') advance();
      } else if (c == '/' && peek(1) == '*') {
        if (src_.substr(pos_, 5) == "/*#*/") {
          out.push_back({Tok::Mark, "/*#*/", line_, col_});
          advance(5);
          continue;
        }
        std::size_t end = src_.find("*/", pos_ + 2);
        if (end == std::string_view::npos) {
          fail("unterminated block comment");
        }
        advance(end + 2 - pos_);
      } else {
        return;
      }
    }
  }

  Token next() {
    const std::size_t line = line_;
    const std::size_t col = col_;
    const char c = peek();
    auto simple = [&](Tok kind, std::size_t len) {
      Token t{kind, std::string(src_.substr(pos_, len)), line, col};
      advance(len);
      return t;
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
        advance();
      }
      std::string text(src_.substr(start, pos_ - start));
      bool is_var = std::isupper(static_cast<unsigned char>(c)) || c == '_';
      return {is_var ? Tok::Variable : Tok::Name, std::move(text), line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && std::isdigit(static_cast<unsigned char>(peek(1))))) {
      std::size_t start = pos_;
      while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
        advance();
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
      if ((peek() == 'e' || peek() == 'E') &&
          (std::isdigit(static_cast<unsigned char>(peek(1))) ||
           ((peek(1) == '-' || peek(1) == '+') &&
            std::isdigit(static_cast<unsigned char>(peek(2)))))) {
        advance(2);
        while (std::isdigit(static_cast<unsigned char>(peek()))) advance();
      }
      return {Tok::Number, std::string(src_.substr(start, pos_ - start)), line,
              col};
    }
    switch (c) {
      case '(':
        return simple(Tok::LParen, 1);
      case ')':
        return simple(Tok::RParen, 1);
      case ',':
        return simple(Tok::Comma, 1);
      case '.':
        return simple(Tok::Dot, 1);
      case '/':
        return simple(Tok::Slash, 1);
      case ':':
        if (peek(1) == '-') return simple(Tok::Neck, 2);
        if (peek(1) == ':') return simple(Tok::Label, 2);
        break;
      default:
        break;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

struct Statement {
  enum class Kind { Clause, Query, Visible, Unsafe } kind;
  Clause clause;
  Atom query;
  PredicateId pred;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  bool at_end() const { return cur().kind == Tok::End; }

  Statement statement() {
    anonymous_ = 0;
    if (cur().kind == Tok::Neck) {
      return directive();
    }
    const Token& first = cur();
    Clause clause;
    clause.line = static_cast<std::uint32_t>(first.line);
    if (first.kind == Tok::Number) {
      double p = 0.0;
      auto [ptr, ec] =
          std::from_chars(first.text.data(), first.text.data() + first.text.size(), p);
      if (ec != std::errc() || ptr != first.text.data() + first.text.size()) {
        fail(first, "malformed probability '" + first.text + "'");
      }
      if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorKind::Load, "probability out of range: " + first.text +
                                         " at line " +
                                         std::to_string(first.line));
      }
      ++pos_;
      expect(Tok::Label, "'::' after probability");
      clause.probability = p;
    }
    const bool head_is_query = cur().kind == Tok::Name &&
                               cur().text == kQueryPredicate &&
                               peek(1).kind == Tok::LParen;
    if (head_is_query) {
      ++pos_;
      expect(Tok::LParen, "'('");
      Atom goal = atom();
      expect(Tok::RParen, "')' closing query(...)");
      clause.head = make_query_atom(goal);
    } else {
      clause.head = atom();
    }
    if (cur().kind == Tok::Neck) {
      ++pos_;
      clause.body = body();
    } else if (head_is_query && !clause.probability) {
      expect(Tok::Dot, "'.'");
      Statement s{Statement::Kind::Query, {}, query_goal(clause.head), {}};
      return s;
    }
    expect(Tok::Dot, "'.' at end of clause");
    return Statement{Statement::Kind::Clause, std::move(clause), {}, {}};
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& peek(std::size_t ahead) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }

  [[noreturn]] static void fail(const Token& at, const std::string& what) {
    throw Error(ErrorKind::Parse, "line " + std::to_string(at.line) +
                                      ", column " + std::to_string(at.column) +
                                      ": " + what);
  }

  const Token& expect(Tok kind, const std::string& what) {
    if (cur().kind != kind) {
      fail(cur(), "expected " + what +
                      (cur().kind == Tok::End ? " before end of input"
                                              : ", found '" + cur().text + "'"));
    }
    return toks_[pos_++];
  }

  Statement directive() {
    ++pos_;
    const Token& name = expect(Tok::Name, "directive name");
    Statement s;
    if (name.text == "visible") {
      s.kind = Statement::Kind::Visible;
    } else if (name.text == "unsafe") {
      s.kind = Statement::Kind::Unsafe;
    } else {
      fail(name, "unknown directive '" + name.text + "'");
    }
    expect(Tok::LParen, "'('");
    s.pred.name = expect(Tok::Name, "predicate name").text;
    expect(Tok::Slash, "'/'");
    const Token& arity = expect(Tok::Number, "arity");
    if (arity.text.find_first_not_of("0123456789") != std::string::npos) {
      fail(arity, "arity must be a non-negative integer");
    }
    s.pred.arity = std::stoul(arity.text);
    expect(Tok::RParen, "')'");
    expect(Tok::Dot, "'.'");
    return s;
  }

  Atom atom() {
    const Token& name = expect(Tok::Name, "predicate name");
    Atom a;
    a.predicate = name.text;
    if (cur().kind == Tok::LParen) {
      ++pos_;
      a.args.push_back(term());
      while (cur().kind == Tok::Comma) {
        ++pos_;
        a.args.push_back(term());
      }
      expect(Tok::RParen, "')'");
    }
    return a;
  }

  Term term() {
    const Token& t = cur();
    switch (t.kind) {
      case Tok::Name:
        if (peek(1).kind == Tok::LParen) {
          fail(t, "compound terms are not supported");
        }
        ++pos_;
        return Term::constant(t.text);
      case Tok::Number:
        ++pos_;
        return Term::constant(t.text);
      case Tok::Variable: {
        ++pos_;
        if (t.text == "_") {
          return Term::variable("_" + std::to_string(++anonymous_));
        }
        return Term::variable(t.text);
      }
      default:
        fail(t, "expected a constant or variable");
    }
  }

  std::vector<BodyAtom> body() {
    std::vector<BodyAtom> out;
    while (true) {
      bool marked = false;
      if (cur().kind == Tok::Mark) {
        marked = true;
        ++pos_;
      }
      Atom a = atom();
      if (!(a.predicate == "true" && a.args.empty())) {
        out.push_back(BodyAtom{std::move(a), marked});
      }
      if (cur().kind != Tok::Comma) {
        return out;
      }
      ++pos_;
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  unsigned anonymous_ = 0;
};

// Drops Mark tokens so that marks are treated as plain comments.
std::vector<Token> without_marks(std::vector<Token> toks) {
  std::erase_if(toks, [](const Token& t) { return t.kind == Tok::Mark; });
  return toks;
}

}  // namespace

Program parse_program(std::string_view text) {
  Parser parser(without_marks(Lexer(text).run()));
  Program program;
  while (!parser.at_end()) {
    Statement s = parser.statement();
    switch (s.kind) {
      case Statement::Kind::Clause:
        program.add_clause(std::move(s.clause));
        break;
      case Statement::Kind::Query:
        program.add_query(std::move(s.query));
        break;
      case Statement::Kind::Visible:
        program.declare_visible(std::move(s.pred));
        break;
      case Statement::Kind::Unsafe:
        program.declare_unsafe(std::move(s.pred));
        break;
    }
  }
  program.validate();
  return program;
}

Program load_program_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(ErrorKind::Load, "cannot read " + path.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_program(buf.str());
}

std::vector<Clause> parse_clause_set(std::string_view text) {
  Parser parser(Lexer(text).run());
  std::vector<Clause> out;
  while (!parser.at_end()) {
    Statement s = parser.statement();
    if (s.kind != Statement::Kind::Clause) {
      throw Error(ErrorKind::Parse, "only clauses are allowed in a clause set");
    }
    out.push_back(std::move(s.clause));
  }
  return out;
}

// --- Formatting -------------------------------------------------------------

namespace {

using NameMap = std::map<Var, std::string>;

NameMap display_names(const std::vector<Var>& vars) {
  std::set<std::string> raw;
  for (const Var& v : vars) raw.insert(v.name);
  std::set<std::string> used;
  NameMap names;
  for (const Var& v : vars) {
    std::string name = v.name;
    if (used.count(name)) {
      for (unsigned k = 1;; ++k) {
        name = v.name + std::to_string(k);
        if (!used.count(name) && !raw.count(name)) break;
      }
    }
    used.insert(name);
    names.emplace(v, std::move(name));
  }
  return names;
}

std::string render(const Term& t, const NameMap& names) {
  if (t.is_var()) {
    auto it = names.find(t.as_var());
    return it != names.end() ? it->second : to_string(t);
  }
  return t.name();
}

std::string render(const Atom& a, const NameMap& names) {
  std::string out = a.is_query() ? a.reified : a.predicate;
  if (!a.args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) out += ',';
      out += render(a.args[i], names);
    }
    out += ')';
  }
  if (a.is_query()) {
    out = std::string(kQueryPredicate) + "(" + out + ")";
  }
  return out;
}

std::string render(const Clause& c, bool keep_marks) {
  std::vector<Var> vars;
  collect_vars(c, vars);
  const NameMap names = display_names(vars);
  std::string out;
  if (c.probability) {
    out += probability_text(*c.probability) + "::";
  }
  out += render(c.head, names);
  if (!c.body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i) out += ", ";
      if (keep_marks && c.body[i].marked) out += "/*#*/";
      out += render(c.body[i].atom, names);
    }
  } else if (c.head.is_query()) {
    // `query(g).` would read back as a declaration.
    out += " :- true";
  }
  return out + ".";
}

enum class Section { Probabilistic, Derived, Query };

Section section_of(const Clause& c) {
  if (c.probability) return Section::Probabilistic;
  if (c.head.is_query()) return Section::Query;
  return Section::Derived;
}

void append_clauses(std::string& out, std::span<const Clause> clauses,
                    bool keep_marks) {
  struct Line {
    Section section;
    PredicateId pred;
    std::string text;
  };
  std::vector<Line> lines;
  lines.reserve(clauses.size());
  for (const Clause& c : clauses) {
    Section s = section_of(c);
    // Probabilistic clauses sort purely by text.
    PredicateId pred = s == Section::Derived ? c.head.id() : PredicateId{};
    lines.push_back({s, std::move(pred), render(c, keep_marks)});
  }
  std::sort(lines.begin(), lines.end(), [](const Line& a, const Line& b) {
    return std::tie(a.section, a.pred, a.text) <
           std::tie(b.section, b.pred, b.text);
  });
  for (const Line& l : lines) {
    out += l.text;
    out += '\n';
  }
}

}  // namespace

std::string format_atom(const Atom& atom) {
  std::vector<Var> vars;
  collect_vars(atom, vars);
  return render(atom, display_names(vars));
}

std::string format_clause(const Clause& clause, bool keep_marks) {
  return render(clause, keep_marks);
}

std::string format_clauses(std::span<const Clause> clauses, bool keep_marks) {
  std::string out;
  append_clauses(out, clauses, keep_marks);
  return out;
}

std::string format_program(const Program& program) {
  std::string out;
  for (const PredicateId& p : program.visible()) {
    out += ":- visible(" + p.str() + ").\n";
  }
  for (const PredicateId& p : program.unsafe()) {
    out += ":- unsafe(" + p.str() + ").\n";
  }
  append_clauses(out, program.clauses(), true);
  for (const Atom& q : program.queries()) {
    out += render(make_query_atom(q), display_names([&] {
                    std::vector<Var> v;
                    collect_vars(q, v);
                    return v;
                  }()));
    out += ".\n";
  }
  return out;
}

}  // namespace plpx
