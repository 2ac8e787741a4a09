#include "plpx/worlds.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "plpx/error.hpp"

namespace plpx {

namespace {

constexpr std::uint64_t kBlock = 1024;

void check_cap(const GroundFactTable& t, std::size_t cap) {
  if (t.size() > cap) {
    throw Error(ErrorKind::TooManyFacts,
                std::to_string(t.size()) +
                    " ground probabilistic facts exceed the world cap of " +
                    std::to_string(cap));
  }
}

double pairwise_sum(std::vector<double> v) {
  if (v.empty()) {
    return 0.0;
  }
  while (v.size() > 1) {
    std::vector<double> next((v.size() + 1) / 2);
    for (std::size_t i = 0; i < next.size(); ++i) {
      next[i] = 2 * i + 1 < v.size() ? v[2 * i] + v[2 * i + 1] : v[2 * i];
    }
    v = std::move(next);
  }
  return v.front();
}

}  // namespace

std::vector<Atom> TotalChoice::atoms(const GroundFactTable& t) const {
  std::vector<Atom> out;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    if (chosen[i]) {
      out.push_back(t.entries()[i].atom);
    }
  }
  return out;
}

TotalChoice choice_of(const GroundFactTable& t, const std::vector<Atom>& atoms) {
  TotalChoice l{std::vector<bool>(t.size(), false)};
  for (const Atom& a : atoms) {
    bool found = false;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (t.entries()[i].atom == a) {
        l.chosen[i] = true;
        found = true;
      }
    }
    if (!found) {
      throw std::invalid_argument("not a ground probabilistic fact: " +
                                  to_string(a));
    }
  }
  return l;
}

double world_probability(const TotalChoice& l, const GroundFactTable& t) {
  double p = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double pi = t.entries()[i].probability;
    p *= l.chosen[i] ? pi : 1.0 - pi;
  }
  return p;
}

TotalChoice world_at(const GroundFactTable& t, std::uint64_t r) {
  const std::size_t n = t.size();
  TotalChoice l{std::vector<bool>(n)};
  for (std::size_t j = 0; j < n; ++j) {
    l.chosen[j] = ((r >> (n - 1 - j)) & 1U) == 0;
  }
  return l;
}

void enumerate_worlds(
    const GroundFactTable& t,
    const std::function<void(const TotalChoice&, double)>& visit,
    std::size_t cap) {
  check_cap(t, cap);
  const std::uint64_t count = std::uint64_t{1} << t.size();
  for (std::uint64_t r = 0; r < count; ++r) {
    TotalChoice l = world_at(t, r);
    visit(l, world_probability(l, t));
  }
}

bool query_true_in_world(const Atom& q, const TotalChoice& l,
                         const GroundFactTable& t, const Program& p) {
  const std::vector<Atom> facts = l.atoms(t);
  return least_model(p.clauses(), facts, herbrand_constants(p)).entails(q);
}

double success_probability(const Atom& q, const Program& p,
                           const OracleOptions& options) {
  if (!p.unsafe().empty()) {
    throw Error(ErrorKind::UnsafeUnsupported,
                "the oracle does not support programs with unsafe predicates");
  }
  const GroundFactTable table = ground_probabilistic_facts(p);
  check_cap(table, options.world_cap);
  const std::set<Term> universe = herbrand_constants(p);

  const std::uint64_t count = std::uint64_t{1} << table.size();
  const std::uint64_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<double> block_sums(blocks, 0.0);

  auto work = [&](std::uint64_t first_block, std::uint64_t stride) {
    for (std::uint64_t b = first_block; b < blocks; b += stride) {
      double sum = 0.0;
      const std::uint64_t end = std::min(count, (b + 1) * kBlock);
      for (std::uint64_t r = b * kBlock; r < end; ++r) {
        const TotalChoice l = world_at(table, r);
        const std::vector<Atom> facts = l.atoms(table);
        if (least_model(p.clauses(), facts, universe).entails(q)) {
          sum += world_probability(l, table);
        }
      }
      block_sums[b] = sum;
    }
  };

  const unsigned workers = static_cast<unsigned>(
      std::max<std::uint64_t>(1, std::min<std::uint64_t>(options.threads, blocks)));
  if (workers == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work, w, workers);
    }
    for (std::thread& th : pool) {
      th.join();
    }
  }
  return pairwise_sum(std::move(block_sums));
}

}  // namespace plpx
