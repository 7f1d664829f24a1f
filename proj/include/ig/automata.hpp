#pragma once

// Two-way multihead (pushdown) probabilistic automata over {0,1}, reading
// the circular word *w. Direction In moves a head to the next position
// (+1 mod k+1), Out to the previous one; the text format writes them "+"/"-".
// Every head starts on the marker and the stack starts as "*". A run may only
// enter accept/reject with every head on the marker and the stack back to "*".

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ig/microcosm.hpp"

namespace ig {

enum class Direction : std::uint8_t { In, Out };

inline int step_of(Direction d) { return d == Direction::In ? 1 : -1; }

struct HeadMove {
  std::uint32_t head = 0;
  Direction dir = Direction::In;
  friend bool operator==(const HeadMove&, const HeadMove&) = default;
};

struct Transition {
  std::string read;                // one letter of "*01" per head
  std::uint32_t state = 0;
  std::optional<char> popped;      // last popped letter; nullopt matches any
  std::vector<HeadMove> moves;     // valid automata move exactly one head
  std::optional<StackOp> op;
  std::uint32_t next = 0;
  Rational prob{1};
};

struct Automaton {
  std::uint32_t heads = 1;
  bool pushdown = false;
  std::vector<std::string> states;
  std::uint32_t init = 0, accept = 1, reject = 2;
  std::vector<Transition> transitions;

  std::uint32_t state_index(const std::string& name) const;  // throws ValidationError
};

/// Human-readable violations; empty iff the automaton is well formed.
std::vector<std::string> validate(const Automaton& a);
/// Throws ValidationError listing the violations.
void require_valid(const Automaton& a);

struct OracleResult {
  Rational accept{0};
  Rational reject{0};
  bool exact = true;  // false when some run exceeded the stack depth
};

/// Exact acceptance/rejection probabilities by solving the absorption
/// system of the configuration chain. Stack contents above the bottom marker
/// longer than `stackDepth` are cut off (exact = false). Throws
/// AutomatonError on pops of an empty stack or malformed halting.
OracleResult oracle(const Automaton& a, const std::string& w, std::uint32_t stackDepth = 16);

/// Provenance tags of the compiled halting edges.
inline constexpr std::int64_t kHaltAccept = -2;
inline constexpr std::int64_t kHaltReject = -3;

struct Trace {
  std::vector<std::size_t> steps;  // transition indices
  Rational prob;
  std::optional<bool> accepted;    // set when the last step halts
};

/// Computation traces of length 1..maxLen from the initial configuration:
/// every prefix of every run, or only the runs ending in accept/reject.
std::vector<Trace> trace_enumerate(const Automaton& a, const std::string& w, std::size_t maxLen,
                                   bool haltedOnly = false);

/// Text format:
///   automaton
///   heads <k>
///   stack yes|no
///   states <name>...
///   init <name> / accept <name> / reject <name>
///   trans <state> <read> <popped|-> <head><+|->[,...] <id|pop|push*|push0|push1> <next> <p/q>
/// '#' starts a comment line.
void write_automaton(std::ostream& out, const Automaton& a);
Automaton read_automaton(std::istream& in);
std::string to_text(const Automaton& a);
Automaton automaton_from_text(const std::string& text);

}  // namespace ig
