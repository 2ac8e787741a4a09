#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "plpx/cli.hpp"

int main(int argc, char** argv) {
  plpx::RunConfig cfg;
  std::string input;
  std::string out_dir = cfg.out_dir.string();
  plpx::SortOrder sort = cfg.sort;

  CLI::App app{"Explanations as programs for probabilistic logic programs"};
  app.add_option("file", input, "Program file")->required();
  app.add_option("--out-dir", out_dir, "Directory for explanation files");
  app.add_option("--max-steps", cfg.max_steps, "Step limit per derivation")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-total-steps", cfg.max_total_steps,
                 "Step limit per query")
      ->check(CLI::PositiveNumber);
  app.add_option("--world-cap", cfg.world_cap,
                 "Largest number of ground probabilistic facts to enumerate")
      ->check(CLI::PositiveNumber);
  app.add_flag("--verify", cfg.verify,
               "Check explanation probabilities against exact inference");
  app.add_flag("--oracle-only", cfg.oracle_only,
               "Only print exact query probabilities");
  const std::map<std::string, plpx::SortOrder> orders{
      {"discovery", plpx::SortOrder::Discovery},
      {"prob", plpx::SortOrder::Probability}};
  app.add_option("--sort", sort, "Explanation order: discovery or prob")
      ->transform(CLI::CheckedTransformer(orders, CLI::ignore_case));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      return app.exit(e);
    }
    std::cerr << "error: usage: " << e.what() << '\n';
    return plpx::kExitLoad;
  }
  cfg.input_path = input;
  cfg.out_dir = out_dir;
  cfg.sort = sort;
  return plpx::run(cfg, std::cout, std::cerr);
}
