#include "plpx/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "plpx/error.hpp"
#include "plpx/explainer.hpp"
#include "plpx/grounder.hpp"
#include "plpx/parser.hpp"

namespace plpx {

namespace {

constexpr double kTolerance = 1e-9;

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::TooManyFacts:
    case ErrorKind::LimitExceeded:
    case ErrorKind::UnsafeUnsupported:
      return kExitResource;
    default:
      return kExitLoad;
  }
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) {
    throw std::runtime_error("cannot write " + path.string());
  }
  f << text;
  if (!f) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

std::vector<Atom> targets(const Program& program) {
  if (program.has_query_clauses()) {
    return program.query_clause_heads();
  }
  return program.queries();
}

int oracle_only(const Program& program, const RunConfig& cfg,
                std::ostream& out) {
  const OracleOptions options{cfg.world_cap, 1};
  for (const Atom& q : targets(program)) {
    out << "P(" << format_atom(q)
        << ") = " << format_probability(success_probability(q, program, options))
        << '\n';
  }
  return kExitOk;
}

int explain(const Program& program, const RunConfig& cfg, std::ostream& out,
            std::ostream& err) {
  if (program.has_query_clauses()) {
    throw Error(ErrorKind::Load,
                "input already contains query/1 clauses; use --oracle-only");
  }
  ground_probabilistic_facts(program);

  const SolveLimits limits{cfg.max_steps, cfg.max_total_steps};
  const OracleOptions options{cfg.world_cap, 1};
  std::filesystem::create_directories(cfg.out_dir);

  bool all_pass = true;
  const std::vector<Atom>& queries = program.queries();
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    const Atom& q = queries[qi];
    GenerationResult gen = generate_explanations(q, program, limits);
    if (gen.limit_exceeded) {
      if (cfg.verify) {
        throw Error(ErrorKind::LimitExceeded,
                    "step limit reached while explaining " + format_atom(q));
      }
      err << "warning: resource: step limit reached while explaining "
          << format_atom(q) << "; explanations may be incomplete\n";
    }
    if (cfg.sort == SortOrder::Probability) {
      std::stable_sort(gen.explanations.begin(), gen.explanations.end(),
                       [](const GeneratedExplanation& a,
                          const GeneratedExplanation& b) {
                         return a.probability > b.probability;
                       });
    }
    if (queries.size() > 1) {
      out << "% " << format_atom(q) << "\n\n";
    }
    if (gen.explanations.empty()) {
      out << "% no explanations\n\n";
    }

    std::vector<Explanation> es;
    for (std::size_t k = 0; k < gen.explanations.size(); ++k) {
      const GeneratedExplanation& g = gen.explanations[k];
      const std::string text = format_program(to_program(g.explanation));
      const std::string prob_line = "% P(E) = " + format_probability(g.probability) + "\n";
      out << text << '\n' << prob_line << '\n';
      write_file(cfg.out_dir / ("expl_" + std::to_string(qi + 1) + "_" +
                                std::to_string(k + 1) + ".pl"),
                 text + prob_line);
      es.push_back(g.explanation);
    }
    const Program merged = union_program(es);
    write_file(cfg.out_dir / ("union_" + std::to_string(qi + 1) + ".pl"),
               format_program(merged));

    if (cfg.verify) {
      const double original = success_probability(q, program, options);
      const double from_union =
          success_probability(make_query_atom(q), merged, options);
      bool pass = std::fabs(original - from_union) <= kTolerance;
      for (std::size_t k = 0; k < gen.explanations.size(); ++k) {
        const GeneratedExplanation& g = gen.explanations[k];
        const double alone = success_probability(
            make_query_atom(q), to_program(g.explanation), options);
        if (std::fabs(alone - g.probability) > kTolerance) {
          out << "% verify " << format_atom(q) << " explanation " << k + 1
              << ": " << format_probability(g.probability)
              << " != " << format_probability(alone) << " FAIL\n";
          pass = false;
        }
      }
      out << "% verify " << format_atom(q) << ": "
          << format_probability(original) << (pass ? " = " : " != ")
          << format_probability(from_union) << (pass ? " PASS" : " FAIL")
          << "\n\n";
      all_pass = all_pass && pass;
    }
  }
  out << "Output files can be found in folder \"" << cfg.out_dir.string()
      << "\".\n";
  return all_pass ? kExitOk : kExitVerify;
}

}  // namespace

std::string format_probability(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", p);
  return buf;
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    const Program program = load_program_file(cfg.input_path);
    if (targets(program).empty()) {
      throw Error(ErrorKind::Load, "no query(...) declarations in " +
                                       cfg.input_path.string());
    }
    if (cfg.oracle_only) {
      return oracle_only(program, cfg, out);
    }
    return explain(program, cfg, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: io: " << e.what() << '\n';
    return kExitLoad;
  }
}

}  // namespace plpx
