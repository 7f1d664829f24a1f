#pragma once

// Seeded property suites shared by the CLI and the acceptance run, with the
// random graphing generators they draw from.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ig/execution.hpp"

namespace ig {

struct RandomPair {
  GraphingRep f, g;
  CutSpec cut;
};

/// Two graphings on whole-symbol supports V+C and C+W, edges between grid
/// cells. Deterministic pairs use weight 1 and disjoint sources; otherwise the
/// weights leaving a cell sum to at most 1.
RandomPair random_pair(std::mt19937_64& rng, bool deterministic);

/// Refinement of g: some source atoms are halved along a coordinate or
/// into child cylinders, pieces land in separate edges or stay together, and
/// the edge order is shuffled.
GraphingRep random_split(std::mt19937_64& rng, const GraphingRep& g);

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::size_t skipped = 0;  // cases that ran out of configuration budget; neither pass nor fail
  std::vector<std::string> counterexamples;  // one text blob per failure, capped
  bool passed() const { return failures == 0 && cases > 0; }
};

SuiteResult det_closure_suite(std::uint64_t seed, std::size_t count);
SuiteResult subprob_closure_suite(std::uint64_t seed, std::size_t count);
SuiteResult refinement_suite(std::uint64_t seed, std::size_t count);
/// Every word up to maxLen plus `randomCount` longer ones, each reduced by a
/// random sequence of rewrites and compared with reduce().
SuiteResult theta_confluence_suite(std::uint64_t seed, std::size_t maxLen = 8, std::size_t randomCount = 10000);
/// `machines` corpus automata, `words` words each, `reps` representations,
/// against T-, T+ and T_prob[1/2].
SuiteResult uniformity_suite(std::uint64_t seed, std::size_t machines = 10, std::size_t words = 5,
                             std::size_t reps = 5);

std::vector<std::string> suite_names();
/// count: cases for the closure and refinement suites, random words for
/// theta-confluence, machines for uniformity (0 picks the default).
/// Throws ValidationError for unknown names.
SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::size_t count = 0);

}  // namespace ig
