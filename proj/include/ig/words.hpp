#pragma once

// Word graphs and their positional ("banged") graphing representations.
// A word w = *a1...ak has positions 0..k with position 0 holding the marker
// '*'. A representation stores the reading position on coordinate 1: the
// position i occupies the subinterval [iota(i)/(m+1), (iota(i)+1)/(m+1)].

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ig/graphing.hpp"

namespace ig {

struct WordGraphEdge {
  char kind;  // 'r' (towards the next position) or 'l'
  std::uint32_t index;
  Symbol srcSym;
  std::uint32_t srcPos;
  Symbol dstSym;
  std::uint32_t dstPos;
};

struct WordGraph {
  std::string word;  // letters a1..ak, without the marker
  std::vector<WordGraphEdge> edges;

  std::uint32_t positions() const { return static_cast<std::uint32_t>(word.size() + 1); }
  /// Letter at a position; position 0 is '*'.
  char letter(std::uint32_t pos) const { return pos == 0 ? '*' : word[pos - 1]; }
};

/// Throws ValidationError if w is not over {0,1}.
WordGraph word_graph(std::string_view w);

struct WordRepresentation {
  WordGraph graph;
  std::vector<std::uint32_t> injection;  // position -> interval index
  std::uint32_t grid = 1;                // m + 1 subintervals
  GraphingRep graphing;

  /// Interval index holding the marker position.
  std::uint32_t marker_cell() const { return injection.front(); }
};

/// Positional graphing for an injection {0..k} -> {0..m}; `m` is inferred as
/// max(injection) when zero. Throws ValidationError if not injective.
GraphingRep bang_representation(const WordGraph& g, std::span<const std::uint32_t> injection, std::uint32_t m = 0);

WordRepresentation make_representation(const WordGraph& g, std::vector<std::uint32_t> injection, std::uint32_t m);
WordRepresentation canonical_representation(std::string_view w);

/// Representations for the injections {0..k} -> {0..m}, lexicographic order
/// (the identity first). `limit` > 0 truncates the list. Throws ValidationError if m < k.
std::vector<WordRepresentation> rep_family(std::string_view w, std::uint32_t m, std::size_t limit = 0);

/// Number of injections {0..k} -> {0..m}.
std::uint64_t rep_family_size(std::size_t k, std::uint32_t m);

/// Support of every word graphing: the six letter symbols, full box.
Region word_support();

/// [[sym]] restricted to the marker cube on the first `heads` coordinates,
/// with the given cylinder.
Region marker_region(const WordRepresentation& rep, unsigned heads, Symbol sym, const std::string& cylinder = "*");

}  // namespace ig
