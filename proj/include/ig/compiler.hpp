#pragma once

// Translation of automata into graphings. The dialect records the automaton
// state q, the arrangement sigma of head positions on the box coordinates
// (head h sits on coordinate sigma(h); the word acts on coordinate 0), the
// read vector s seen at the last step and the last popped letter u.

#include <cstdint>
#include <string>
#include <vector>

#include "ig/automata.hpp"
#include "ig/execution.hpp"
#include "ig/words.hpp"

namespace ig {

struct DialectState {
  std::uint32_t state = 0;
  std::vector<std::uint32_t> sigma;  // head -> coordinate
  std::string read;
  char popped = '*';
  friend bool operator==(const DialectState&, const DialectState&) = default;
};

/// Mixed-radix numbering of Q x S_k x {*,0,1}^k x {*,0,1}; index 0 is
/// (init, id, *...*, *).
class DialectCodec {
 public:
  DialectCodec() = default;
  explicit DialectCodec(const Automaton& a);
  std::uint32_t size() const { return size_; }
  std::uint32_t encode(const DialectState& d) const;
  DialectState decode(std::uint32_t index) const;
  std::string describe(std::uint32_t index) const;

 private:
  std::uint32_t heads_ = 1;
  std::vector<std::uint32_t> stateRank_, rankState_;
  std::vector<std::vector<std::uint32_t>> perms_;
  std::vector<std::string> names_;
  std::uint32_t size_ = 0;
};

struct CompiledMachine {
  GraphingRep graphing;  // edge provenance: transition index, kHaltAccept or kHaltReject
  DialectCodec codec;
  std::uint32_t heads = 1;
  bool pushdown = false;
};

CompiledMachine compile(const Automaton& a);

/// Keeps the edges whose input state is reachable from state 0 in the
/// dialect transition graph.
CompiledMachine prune_unreachable(const CompiledMachine& m);

/// [[a]] on the marker cube of every head, stack V(*).
Region accept_region(const CompiledMachine& m, const WordRepresentation& w);

/// accept_path_sum of the machine against a word representation.
PathSum run(const CompiledMachine& m, const WordRepresentation& w, const ExecOptions& opts = {});

std::pair<ThickGraph, ThickGraph> finite_view(const CompiledMachine& m, const WordRepresentation& w);

struct FinitePath {
  std::vector<std::int64_t> provenance;  // machine edges only
  std::size_t length = 0;                // all edges
  Rational prob;
  ThetaWord theta;
};

/// Alternating paths of the finite view from the accept node on `start`
/// (machine state 0, stack "*") with at most `maxEdges` edges; every prefix
/// ending with a machine edge counts. Guards are checked on the explicit stack.
std::vector<FinitePath> finite_view_paths(const ThickGraph& machine, const ThickGraph& word, const Cube& start,
                                          std::size_t maxEdges);

/// Marker cube of a representation for a machine with `heads` heads.
Cube marker_cube(const WordRepresentation& w, std::uint32_t heads);

}  // namespace ig
