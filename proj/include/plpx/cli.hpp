#ifndef PLPX_CLI_HPP
#define PLPX_CLI_HPP

#include <cstddef>
#include <filesystem>
#include <ostream>

#include "plpx/worlds.hpp"

namespace plpx {

enum class SortOrder { Discovery, Probability };

struct RunConfig {
  std::filesystem::path input_path;
  std::filesystem::path out_dir = "explanations";
  std::size_t max_steps = 10'000;
  std::size_t max_total_steps = 1'000'000;
  std::size_t world_cap = kDefaultWorldCap;
  bool verify = false;
  bool oracle_only = false;
  SortOrder sort = SortOrder::Discovery;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitLoad = 1,
  kExitVerify = 2,
  kExitResource = 3,
};

// Runs the tool on one input file. Program output goes to `out`,
// diagnostics (`error: <class>: <detail>`, warnings) to `err`.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

// "%.12g"
std::string format_probability(double p);

}  // namespace plpx

#endif  // PLPX_CLI_HPP
