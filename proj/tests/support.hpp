#ifndef PLPX_TESTS_SUPPORT_HPP
#define PLPX_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "plpx/core.hpp"
#include "plpx/parser.hpp"
#include "plpx/program.hpp"
#include "plpx/sld.hpp"

namespace plpx::test {

inline constexpr double kEps = 1e-9;

inline std::filesystem::path corpus_dir() { return PLPX_CORPUS_DIR; }

// The programs every corpus-wide property runs over.
inline std::vector<std::filesystem::path> corpus_files() {
  std::vector<std::filesystem::path> out;
  for (const auto& entry : std::filesystem::directory_iterator(corpus_dir())) {
    if (entry.is_regular_file() && entry.path().extension() == ".pl") {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline Program load(const std::string& name) {
  return load_program_file(corpus_dir() / name);
}

// "p(a,X)" -> Atom. Variables come out with index 0, like parsed clauses.
inline Atom atom(const std::string& text) {
  return parse_clause_set(text + ".").at(0).head;
}

inline Clause clause(const std::string& text) {
  return parse_clause_set(text).at(0);
}

// P(f1 or f2 or ...) where each fi is a conjunction of independent atoms,
// by brute force over the atoms involved.
inline double dnf_probability(const std::vector<std::set<Atom>>& conjunctions,
                              const std::map<Atom, double>& prob) {
  std::vector<Atom> atoms;
  for (const auto& c : conjunctions) {
    for (const Atom& a : c) {
      if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) {
        atoms.push_back(a);
      }
    }
  }
  double total = 0.0;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << atoms.size()); ++m) {
    std::set<Atom> on;
    double w = 1.0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const double p = prob.at(atoms[i]);
      if (m >> i & 1U) {
        on.insert(atoms[i]);
        w *= p;
      } else {
        w *= 1.0 - p;
      }
    }
    const bool holds = std::any_of(
        conjunctions.begin(), conjunctions.end(), [&](const std::set<Atom>& c) {
          return std::includes(on.begin(), on.end(), c.begin(), c.end());
        });
    if (holds) {
      total += w;
    }
  }
  return total;
}

// Ground heads of the probabilistic clauses used by a derivation.
inline std::set<Atom> fact_set(const Derivation& d) {
  std::set<Atom> out;
  for (const UsedClause& u : d.used_prob_clauses) {
    out.insert(u.instance.head);
  }
  return out;
}

// Small random programs: a base deterministic relation, ground probabilistic
// facts (plus at most one intensional one over the base relation), and a
// stack of derived predicates where each only calls lower ones, except for
// an optional linearly recursive closure over a binary probabilistic
// relation.
struct RandomProgram {
  std::string text;
  std::vector<PredicateId> derived;
};

class ProgramGenerator {
 public:
  explicit ProgramGenerator(std::uint32_t seed) : rng_(seed) {}

  RandomProgram next() {
    RandomProgram out;
    std::vector<std::string> lines;
    const std::vector<std::string> consts = pick_constants();

    std::vector<std::string> base_facts;
    for (const std::string& c : consts) {
      if (coin(0.6)) {
        base_facts.push_back("base(" + c + ")");
      }
    }
    if (base_facts.empty()) {
      base_facts.push_back("base(" + consts.front() + ")");
    }
    for (const std::string& f : base_facts) {
      lines.push_back(f + ".");
    }

    // Probabilistic predicates: e0/0, e1/1, e2/2, plus g/1 intensional.
    std::set<std::string> facts;
    const int wanted = uniform(2, 5);
    for (int tries = 0; static_cast<int>(facts.size()) < wanted && tries < 50;
         ++tries) {
      const int arity = uniform(0, 2);
      std::string a = "e" + std::to_string(arity);
      if (arity > 0) {
        a += "(" + pick(consts);
        if (arity > 1) {
          a += "," + pick(consts);
        }
        a += ")";
      }
      facts.insert(a);
    }
    std::set<int> prob_arities;
    for (const std::string& f : facts) {
      lines.push_back(probability() + "::" + f + ".");
      prob_arities.insert(f[1] - '0');
    }
    const bool intensional = lines.size() <= 7 && coin(0.4);
    if (intensional) {
      lines.push_back(probability() + "::g(X) :- base(X).");
    }

    struct Callable {
      std::string name;
      int arity;
    };
    std::vector<Callable> callables{{"base", 1}};
    for (int a : prob_arities) {
      callables.push_back({"e" + std::to_string(a), a});
    }
    if (intensional) {
      callables.push_back({"g", 1});
    }

    // At most six predicates in all.
    const int layers =
        std::min(uniform(1, 3), 6 - static_cast<int>(callables.size()));
    std::set<std::string> seen;
    for (int i = 0; i < layers; ++i) {
      const std::string name = "d" + std::to_string(i);
      const int arity = uniform(0, 2);
      const int clauses = uniform(1, 2);
      bool defined = false;
      for (int k = 0; k < clauses && lines.size() < 10; ++k) {
        std::string c = derived_clause(name, arity, callables, consts);
        if (seen.insert(c).second) {
          lines.push_back(c);
          defined = true;
        }
      }
      if (defined && arity == 2 && prob_arities.count(2) && coin(0.35) &&
          lines.size() < 9) {
        const std::string rec =
            coin(0.5) ? name + "(X,Y) :- e2(X,Z), " + name + "(Z,Y)."
                      : name + "(X,Y) :- " + name + "(Z,Y), e2(X,Z).";
        for (const std::string& c : {name + "(X,Y) :- e2(X,Y).", rec}) {
          if (seen.insert(c).second) {
            lines.push_back(c);
          }
        }
      }
      if (!defined) {
        break;
      }
      out.derived.push_back(PredicateId{name, static_cast<std::size_t>(arity)});
      callables.push_back({name, arity});
    }

    const PredicateId& top = out.derived.empty()
                                 ? PredicateId{"base", 1}
                                 : out.derived.back();
    std::string q = top.name;
    if (top.arity > 0) {
      q += "(";
      for (std::size_t i = 0; i < top.arity; ++i) {
        q += (i ? "," : "") + (coin(0.7) ? pick(consts) : std::string(i ? "B" : "A"));
      }
      q += ")";
    }
    lines.push_back("query(" + q + ").");
    for (const std::string& l : lines) {
      out.text += l + "\n";
    }
    return out;
  }

 private:
  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  const std::string& pick(const std::vector<std::string>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }
  std::string probability() {
    static const char* const kProbs[] = {"0.1", "0.2", "0.25", "0.3", "0.4",
                                         "0.5", "0.6", "0.7", "0.75", "0.8",
                                         "0.9"};
    return kProbs[uniform(0, 10)];
  }
  std::vector<std::string> pick_constants() {
    std::vector<std::string> all{"a", "b", "c"};
    all.resize(static_cast<std::size_t>(uniform(2, 3)));
    return all;
  }

  template <typename Callables>
  std::string derived_clause(const std::string& name, int arity,
                             const Callables& callables,
                             const std::vector<std::string>& consts) {
    static const std::vector<std::string> kVars{"X", "Y", "Z"};
    std::vector<std::string> body;
    std::set<std::string> body_vars;
    const int n = uniform(1, 3);
    for (int i = 0; i < n; ++i) {
      const auto& c = callables[static_cast<std::size_t>(
          uniform(0, static_cast<int>(callables.size()) - 1))];
      std::string a = c.name;
      if (c.arity > 0) {
        a += "(";
        for (int j = 0; j < c.arity; ++j) {
          std::string t = coin(0.7) ? pick(kVars) : pick(consts);
          if (std::isupper(static_cast<unsigned char>(t[0]))) {
            body_vars.insert(t);
          }
          a += (j ? "," : "") + t;
        }
        a += ")";
      }
      body.push_back(a);
    }
    std::string head = name;
    if (arity > 0) {
      const std::vector<std::string> vars(body_vars.begin(), body_vars.end());
      head += "(";
      for (int j = 0; j < arity; ++j) {
        std::string t = !vars.empty() && coin(0.8) ? pick(vars) : pick(consts);
        head += (j ? "," : "") + t;
      }
      head += ")";
    }
    std::string out = head + " :- ";
    for (std::size_t i = 0; i < body.size(); ++i) {
      out += (i ? ", " : "") + body[i];
    }
    return out + ".";
  }

  std::mt19937 rng_;
};

}  // namespace plpx::test

#endif  // PLPX_TESTS_SUPPORT_HPP
