#ifndef PLPX_WORLDS_HPP
#define PLPX_WORLDS_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "plpx/core.hpp"
#include "plpx/grounder.hpp"
#include "plpx/program.hpp"

namespace plpx {

inline constexpr std::size_t kDefaultWorldCap = 24;

// A total choice over a fact table: chosen[i] tells whether the i-th entry
// of the table is true.
struct TotalChoice {
  std::vector<bool> chosen;

  std::vector<Atom> atoms(const GroundFactTable& t) const;
};

// Builds the choice in which exactly the listed atoms are true. Throws
// std::invalid_argument for atoms outside the table.
TotalChoice choice_of(const GroundFactTable& t, const std::vector<Atom>& atoms);

double world_probability(const TotalChoice& l, const GroundFactTable& t);

// The r-th world in enumeration order. The first table entry is the most
// significant position and the all-true world comes first.
TotalChoice world_at(const GroundFactTable& t, std::uint64_t r);

// Calls `visit` for every world in order. Throws TooManyFacts when the table
// is larger than `cap`.
void enumerate_worlds(
    const GroundFactTable& t,
    const std::function<void(const TotalChoice&, double)>& visit,
    std::size_t cap = kDefaultWorldCap);

// Whether some instance of q follows from the chosen facts together with the
// derived clauses of p.
bool query_true_in_world(const Atom& q, const TotalChoice& l,
                         const GroundFactTable& t, const Program& p);

struct OracleOptions {
  std::size_t world_cap = kDefaultWorldCap;
  unsigned threads = 1;
};

// Exact P(q) by summing over all worlds. Throws UnsafeUnsupported,
// TooManyFacts and grounding errors.
double success_probability(const Atom& q, const Program& p,
                           const OracleOptions& options = {});

}  // namespace plpx

#endif  // PLPX_WORLDS_HPP
