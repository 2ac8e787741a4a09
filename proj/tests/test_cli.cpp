#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "plpx/cli.hpp"
#include "plpx/explainer.hpp"
#include "plpx/worlds.hpp"
#include "support.hpp"

using namespace plpx;
using plpx::test::kEps;

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("plpx_cli_" + std::string(::testing::UnitTest::GetInstance()
                                          ->current_test_info()
                                          ->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  Outcome run_on(const fs::path& input, RunConfig cfg = {}) {
    cfg.input_path = input;
    if (cfg.out_dir == "explanations") {
      cfg.out_dir = dir_ / "out";
    }
    std::ostringstream out, err;
    const int code = run(cfg, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path write(const std::string& name, const std::string& text) {
    fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  static std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, SmokersVisibleSession) {
  RunConfig cfg;
  cfg.verify = true;
  Outcome o = run_on(test::corpus_dir() / "smokes_visible.pl", cfg);
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out,
            "0.3::influences(bob,carl).\n"
            "0.8::stress(bob).\n"
            "smokes_1(carl) :- influences(bob,carl), smokes_2(bob).\n"
            "smokes_2(bob) :- stress(bob).\n"
            "query(smokes(carl)) :- smokes_1(carl).\n"
            "\n"
            "% P(E) = 0.24\n"
            "\n"
            "0.1::influences(ann,bob).\n"
            "0.3::influences(bob,carl).\n"
            "0.8::stress(ann).\n"
            "smokes_1(carl) :- influences(bob,carl), smokes_2(bob).\n"
            "smokes_2(bob) :- influences(ann,bob), smokes_3(ann).\n"
            "smokes_3(ann) :- stress(ann).\n"
            "query(smokes(carl)) :- smokes_1(carl).\n"
            "\n"
            "% P(E) = 0.024\n"
            "\n"
            "% verify smokes(carl): 0.2448 = 0.2448 PASS\n"
            "\n"
            "Output files can be found in folder \"" +
                (dir_ / "out").string() + "\".\n");
  EXPECT_TRUE(o.err.empty());
  EXPECT_TRUE(fs::exists(dir_ / "out" / "expl_1_1.pl"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "expl_1_2.pl"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "union_1.pl"));
  EXPECT_FALSE(fs::exists(dir_ / "out" / "expl_1_3.pl"));
  EXPECT_EQ(slurp(dir_ / "out" / "expl_1_1.pl"),
            "0.3::influences(bob,carl).\n"
            "0.8::stress(bob).\n"
            "smokes_1(carl) :- influences(bob,carl), smokes_2(bob).\n"
            "smokes_2(bob) :- stress(bob).\n"
            "query(smokes(carl)) :- smokes_1(carl).\n"
            "% P(E) = 0.24\n");
}

TEST_F(Cli, OracleOnly) {
  RunConfig cfg;
  cfg.oracle_only = true;
  Outcome o = run_on(test::corpus_dir() / "win.pl", cfg);
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.out, "P(win) = 0.552\n");
  EXPECT_FALSE(fs::exists(dir_ / "out"));
}

TEST_F(Cli, OracleOnlyOnEmittedFile) {
  run_on(test::corpus_dir() / "smokes_visible.pl");
  RunConfig cfg;
  cfg.oracle_only = true;
  Outcome o = run_on(dir_ / "out" / "union_1.pl", cfg);
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out, "P(query(smokes(carl))) = 0.2448\n");
}

TEST_F(Cli, ProbabilityOutOfRange) {
  Outcome o = run_on(write("bad.pl", "1.5::a.\nquery(a).\n"));
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(o.err, "error: load: probability out of range: 1.5 at line 1\n");
  EXPECT_TRUE(o.out.empty());
}

TEST_F(Cli, LoadErrors) {
  for (const char* name :
       {"dup_fact.pl", "empty_universe.pl", "syntax.pl", "unknown_query.pl"}) {
    SCOPED_TRACE(name);
    Outcome o = run_on(test::corpus_dir() / "bad" / name);
    EXPECT_EQ(o.code, 1);
    EXPECT_EQ(o.err.rfind("error: ", 0), 0u) << o.err;
    EXPECT_EQ(std::count(o.err.begin(), o.err.end(), '\n'), 1);
  }
  Outcome missing = run_on(dir_ / "missing.pl");
  EXPECT_EQ(missing.code, 1);
  EXPECT_EQ(missing.err.rfind("error: load: cannot read", 0), 0u);
  Outcome no_query = run_on(write("nq.pl", "0.5::a.\n"));
  EXPECT_EQ(no_query.code, 1);
}

TEST_F(Cli, ResourceErrors) {
  RunConfig cfg;
  cfg.verify = true;
  cfg.world_cap = 2;
  Outcome o = run_on(test::corpus_dir() / "win.pl", cfg);
  EXPECT_EQ(o.code, 3);
  EXPECT_EQ(o.err.rfind("error: resource: ", 0), 0u) << o.err;

  RunConfig unsafe;
  unsafe.verify = true;
  Outcome u = run_on(test::corpus_dir() / "unsafe" / "unsafe_intensional.pl", unsafe);
  EXPECT_EQ(u.code, 3);
  EXPECT_EQ(u.err.rfind("error: unsupported: ", 0), 0u) << u.err;
}

TEST_F(Cli, StepLimitIsWarningUnlessVerifying) {
  RunConfig cfg;
  cfg.max_total_steps = 3;
  Outcome o = run_on(test::corpus_dir() / "path_cycle.pl", cfg);
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.err.rfind("warning: resource: ", 0), 0u) << o.err;
  cfg.verify = true;
  Outcome v = run_on(test::corpus_dir() / "path_cycle.pl", cfg);
  EXPECT_EQ(v.code, 3);
  EXPECT_EQ(v.err.rfind("error: resource: ", 0), 0u) << v.err;
}

TEST_F(Cli, SortByProbability) {
  RunConfig cfg;
  cfg.sort = SortOrder::Probability;
  Outcome o = run_on(test::corpus_dir() / "renaming.pl", cfg);
  EXPECT_EQ(o.code, 0);
  const std::string first = slurp(dir_ / "out" / "expl_1_1.pl");
  EXPECT_NE(first.find("% P(E) = 0.4\n"), std::string::npos) << first;
  const std::string last = slurp(dir_ / "out" / "expl_1_4.pl");
  EXPECT_NE(last.find("% P(E) = 0.12\n"), std::string::npos) << last;
}

TEST_F(Cli, MultipleQueries) {
  RunConfig cfg;
  cfg.verify = true;
  Outcome o = run_on(test::corpus_dir() / "alarm.pl", cfg);
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("% calls(john)\n"), std::string::npos);
  EXPECT_NE(o.out.find("% calls(mary)\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "out" / "union_1.pl"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "union_2.pl"));
  EXPECT_TRUE(fs::exists(dir_ / "out" / "expl_2_1.pl"));
}

TEST_F(Cli, NoExplanations) {
  RunConfig cfg;
  cfg.verify = true;
  Outcome o = run_on(write("none.pl", "0.5::a. b :- a, c. c :- d. d :- e. e :- c.\nquery(b).\n"), cfg);
  EXPECT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("% no explanations\n"), std::string::npos);
  EXPECT_NE(o.out.find("0 = 0 PASS"), std::string::npos) << o.out;
}

TEST_F(Cli, Deterministic) {
  RunConfig a;
  a.out_dir = dir_ / "a";
  RunConfig b;
  b.out_dir = dir_ / "a";
  Outcome first = run_on(test::corpus_dir() / "anyone.pl", a);
  Outcome second = run_on(test::corpus_dir() / "anyone.pl", b);
  EXPECT_EQ(first.out, second.out);
}

TEST_F(Cli, EmittedFilesRoundTrip) {
  for (const auto& path : test::corpus_files()) {
    SCOPED_TRACE(path.string());
    fs::remove_all(dir_ / "out");
    Outcome o = run_on(path);
    ASSERT_EQ(o.code, 0) << o.err;
    const Program source = load_program_file(path);
    for (std::size_t qi = 0; qi < source.queries().size(); ++qi) {
      const Atom q = make_query_atom(source.queries()[qi]);
      for (std::size_t k = 1;; ++k) {
        const fs::path f = dir_ / "out" /
                           ("expl_" + std::to_string(qi + 1) + "_" +
                            std::to_string(k) + ".pl");
        if (!fs::exists(f)) {
          break;
        }
        const std::string text = slurp(f);
        const std::size_t at = text.rfind("% P(E) = ");
        ASSERT_NE(at, std::string::npos);
        const double printed = std::stod(text.substr(at + 9));
        const Program alone = load_program_file(f);
        EXPECT_NEAR(success_probability(q, alone), printed, kEps) << f;
      }
    }
  }
}
