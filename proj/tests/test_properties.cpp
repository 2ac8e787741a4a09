#include <gtest/gtest.h>

#include <iostream>

#include "plpx/error.hpp"
#include "properties.hpp"

using namespace plpx;

namespace {

constexpr int kRandomPrograms = 250;

struct Case {
  std::string name;
  Program program;
};

std::vector<Case> all_cases() {
  std::vector<Case> out;
  for (const auto& path : test::corpus_files()) {
    out.push_back({path.filename().string(), load_program_file(path)});
  }
  test::ProgramGenerator gen(20261016);
  for (int i = 0; i < kRandomPrograms; ++i) {
    const test::RandomProgram r = gen.next();
    const Program p = parse_program(r.text);
    out.push_back({"random " + std::to_string(i) + ":\n" + r.text, p});
    out.push_back({"random " + std::to_string(i) + ", all visible:\n" + r.text,
                   test::with_visible(p, p.derived_predicates())});
  }
  return out;
}

const std::vector<Case>& cases() {
  static const std::vector<Case> c = all_cases();
  return c;
}

void run_everywhere(test::Check check) {
  for (const Case& c : cases()) {
    for (const Atom& q : c.program.queries()) {
      const std::string why = check(c.program, q);
      EXPECT_TRUE(why.empty()) << c.name << "\n" << why;
    }
  }
}

}  // namespace

TEST(Properties, GeneratorProducesValidPrograms) {
  test::ProgramGenerator gen(7);
  int recursive = 0, intensional = 0;
  for (int i = 0; i < kRandomPrograms; ++i) {
    const test::RandomProgram r = gen.next();
    const Program p = parse_program(r.text);
    EXPECT_EQ(p.queries().size(), 1u) << r.text;
    EXPECT_LE(p.prob_predicates().size() + p.derived_predicates().size(), 6u)
        << r.text;
    EXPECT_LE(p.clauses().size(), 10u) << r.text;
    EXPECT_LE(ground_probabilistic_facts(p).entries().size(), 8u) << r.text;
    recursive += r.text.find("(Z,Y)") != std::string::npos;
    intensional += r.text.find("::g(X)") != std::string::npos;
  }
  EXPECT_GT(recursive, 0);
  EXPECT_GT(intensional, 0);
}

TEST(Properties, OneExplanationPerDerivation) {
  run_everywhere(test::check_single_proofs);
}

TEST(Properties, UnionPreservesProbability) { run_everywhere(test::check_union); }

TEST(Properties, VisibilityDoesNotChangeProbabilities) {
  run_everywhere(test::check_visibility);
}

TEST(Properties, OracleMatchesProofs) {
  run_everywhere(test::check_oracle_against_proofs);
}

TEST(Properties, ExplanationsRoundTrip) { run_everywhere(test::check_round_trip); }

TEST(Properties, UnionIsIdempotentOnOneExplanation) {
  for (const Case& c : cases()) {
    for (const Atom& q : c.program.queries()) {
      for (const GeneratedExplanation& g :
           generate_explanations(q, c.program).explanations) {
        EXPECT_EQ(format_program(union_program({g.explanation})),
                  format_program(to_program(g.explanation)))
            << c.name;
      }
    }
  }
}

TEST(Properties, RandomProgramsAreNotTrivial) {
  int with_proofs = 0, with_several = 0, with_renaming = 0;
  for (const Case& c : cases()) {
    if (c.name.rfind("random", 0) != 0) {
      continue;
    }
    const GenerationResult r =
        generate_explanations(c.program.queries().at(0), c.program);
    with_proofs += !r.explanations.empty();
    with_several += r.explanations.size() > 1;
    for (const GeneratedExplanation& g : r.explanations) {
      if (format_program(to_program(g.explanation)).find("_1") !=
          std::string::npos) {
        ++with_renaming;
        break;
      }
    }
  }
  std::cout << with_proofs << " with proofs, " << with_several
            << " with several, " << with_renaming << " with renaming\n";
  EXPECT_GT(with_proofs, kRandomPrograms / 3);
  EXPECT_GT(with_several, kRandomPrograms / 10);
  EXPECT_GT(with_renaming, kRandomPrograms / 10);
}
