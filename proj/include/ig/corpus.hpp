#pragma once

// Named automata used by the tests, the CLI and the acceptance run: a few
// hand-written machines plus seeded random ones built from gadgets that keep
// every run well formed (heads rewound and stack emptied before halting).

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ig/automata.hpp"

namespace ig {

struct NamedAutomaton {
  std::string name;
  Automaton automaton;
};

std::vector<NamedAutomaton> handwritten_corpus();

struct RandomAutomatonSpec {
  std::uint32_t heads = 1;
  bool pushdown = false;
  std::uint32_t workStates = 2;
  bool deterministic = false;
  /// Work states are never revisited after a push, bounding the stack height.
  bool layeredPushes = false;
};

Automaton random_automaton(std::mt19937_64& rng, const RandomAutomatonSpec& spec);

/// Hand-written machines followed by `randomCount` random ones.
std::vector<NamedAutomaton> corpus(std::uint64_t seed = 1, std::size_t randomCount = 36);

/// Throws ValidationError for unknown names.
Automaton corpus_automaton(const std::string& name);

}  // namespace ig
