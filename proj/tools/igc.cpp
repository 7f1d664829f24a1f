// igc: compile automata to graphings, run them against words, check the
// test laws and the property suites.
// Exit codes: 0 success, 1 property failure or disagreement, 2 input error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ig/compiler.hpp"
#include "ig/errors.hpp"
#include "ig/measurement.hpp"
#include "ig/properties.hpp"

using namespace ig;

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Either an automaton (with its compiled graphing) or a bare graphing.
struct Input {
  std::optional<Automaton> automaton;
  std::optional<CompiledMachine> compiled;
  GraphingRep graphing;
  std::uint32_t heads = 1;
};

std::string first_keyword(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    auto e = line.find_first_of(" \t\r", b);
    return line.substr(b, e == std::string::npos ? std::string::npos : e - b);
  }
  return "";
}

Input load(const std::string& path) {
  std::string text = read_file(path);
  Input in;
  std::string kw = first_keyword(text);
  if (kw == "automaton") {
    Automaton a = automaton_from_text(text);
    require_valid(a);
    in.compiled = compile(a);
    in.graphing = in.compiled->graphing;
    in.heads = a.heads;
    in.automaton = std::move(a);
  } else if (kw == "graphing") {
    in.graphing = from_text(text);
    validate(in.graphing);
    std::vector<const GraphingRep*> gs{&in.graphing};
    in.heads = std::max(1u, coords_of(gs));
  } else {
    throw InputError(path + ": expected an 'automaton' or 'graphing' file");
  }
  return in;
}

void check_word(const std::string& w) {
  for (char c : w)
    if (c != '0' && c != '1') throw InputError("word '" + w + "' is not over {0,1}");
}

// Identity injection on a grid of `grid` cells (0: |w| + 1).
WordRepresentation representation(const std::string& w, std::uint32_t grid) {
  check_word(w);
  if (grid == 0) return canonical_representation(w);
  if (grid < w.size() + 1) throw InputError("--grid must be at least |w|+1 = " + std::to_string(w.size() + 1));
  WordGraph g = word_graph(w);
  std::vector<std::uint32_t> id(g.positions());
  for (std::uint32_t i = 0; i < id.size(); ++i) id[i] = i;
  return make_representation(g, std::move(id), grid - 1);
}

PathSum path_sum(const Input& in, const WordRepresentation& rep, const ExecOptions& opts) {
  if (in.compiled) return run(*in.compiled, rep, opts);
  ExecOptions o = opts;
  o.grid = rep.grid;
  o.coords = std::max(o.coords, in.heads);
  return accept_path_sum(in.graphing, rep.graphing, marker_region(rep, in.heads, Symbol::Accept, "*"), o);
}

std::string microcosm_class(const GraphingRep& g) {
  unsigned k = 1;
  bool stack = false;
  for (const auto& e : g.edges) {
    k = std::max(k, head_bound(e.realizer));
    stack = stack || !in_microcosm(e.realizer, Microcosm::MInf);
  }
  return (stack ? "n" : "m") + std::to_string(k);
}

std::string show_word(const std::string& w) { return w.empty() ? "e" : w; }

std::vector<std::string> words_upto(std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i)
    if (out[i].size() < n)
      for (char c : {'0', '1'}) out.push_back(out[i] + c);
  return out;
}

std::vector<std::string> split_words(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      out.push_back(cur == "e" ? "" : cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  return out;
}

// ---------------------------------------------------------------- commands

int cmd_compile(const std::string& path, const std::string& outPath, bool prune) {
  Input in = load(path);
  if (!in.compiled) throw InputError(path + ": compile expects an automaton");
  CompiledMachine m = prune ? prune_unreachable(*in.compiled) : *in.compiled;
  std::ostringstream text;
  write_graphing(text, m.graphing, true);
  std::ostringstream summary;
  summary << "dialect " << m.graphing.dialect << "\n";
  summary << "edges " << m.graphing.edges.size() << "\n";
  summary << "microcosm " << microcosm_class(m.graphing) << "\n";
  if (outPath.empty()) {
    std::cout << text.str();
    std::cerr << summary.str();
  } else {
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw InputError("cannot write " + outPath);
    out << text.str();
    std::cout << summary.str();
  }
  return 0;
}

int cmd_accept(const std::string& path, const std::string& word, const ExecOptions& opts, std::uint32_t grid) {
  Input in = load(path);
  WordRepresentation rep = representation(word, grid);
  PathSum s = path_sum(in, rep, opts);
  std::cout << "word " << show_word(word) << "\n";
  std::cout << "grid " << rep.grid << "\n";
  std::cout << "stack-depth " << opts.stackDepth << "\n";
  bool agree = true;
  if (in.automaton) {
    OracleResult o = oracle(*in.automaton, word, opts.stackDepth);
    std::cout << "oracle accept " << to_string(o.accept) << " reject " << to_string(o.reject) << " exact "
              << (o.exact ? "yes" : "no") << "\n";
    agree = o.accept == s.stackRestored && o.exact == s.exact;
  }
  std::cout << "path-sum accept " << to_string(s.stackRestored) << " exact " << (s.exact ? "yes" : "no") << "\n";
  std::cout << "path-sum all-classes " << to_string(s.lowerBound) << "\n";
  for (const auto& [t, p] : s.total) std::cout << "class " << to_string(t) << " " << to_string(p) << "\n";
  if (!s.exact) std::cout << "warning: stack depth exhausted, values are lower bounds\n";
  if (in.automaton) std::cout << "verdict " << (agree ? "agree" : "disagree") << "\n";
  return agree ? 0 : 1;
}

int cmd_membership(const std::string& path, const std::vector<std::string>& words, const std::string& testText,
                   const ExecOptions& opts, std::size_t reps, std::uint64_t seed) {
  Input in = load(path);
  Test t;
  try {
    t = parse_test(testText);
  } catch (const ValidationError& e) {
    throw InputError(e.what());
  }
  for (const auto& w : words) check_word(w);
  std::cout << "test " << to_string(t) << "\n";
  std::cout << "word verdict oracle uniform\n";
  bool ok = true;
  for (const auto& w : words) {
    auto r = orthogonal_to_test(in.graphing, canonical_representation(w), t, opts);
    std::string oracleCol = "-";
    if (in.automaton) {
      OracleResult o = oracle(*in.automaton, w, opts.stackDepth);
      bool expected = t.kind == TestKind::DetPos   ? o.accept > 0
                      : t.kind == TestKind::DetNeg ? o.reject == 0
                                                   : o.accept > t.epsilon;
      oracleCol = expected ? "1" : "0";
      ok = ok && expected == r.orthogonal;
    }
    std::string uniformCol = "-";
    if (reps > 1) {
      bool u = check_uniformity(in.graphing, w, t, reps, seed, opts).uniform;
      uniformCol = u ? "yes" : "no";
      ok = ok && u;
    }
    std::cout << show_word(w) << " " << (r.orthogonal ? 1 : 0) << " " << oracleCol << " " << uniformCol
              << (r.exact ? "" : " inexact") << "\n";
  }
  std::cout << "result " << (ok ? "agree" : "disagree") << "\n";
  return ok ? 0 : 1;
}

int cmd_properties(const std::string& suite, std::uint64_t seed, std::size_t count, const std::string& outDir) {
  SuiteResult r;
  try {
    r = run_suite(suite, seed, count);
  } catch (const ValidationError& e) {
    throw InputError(e.what());
  }
  std::cout << "suite " << r.name << " seed " << seed << "\n";
  std::cout << "cases " << r.cases << "\n";
  std::cout << "failures " << r.failures << "\n";
  std::cout << "skipped " << r.skipped << "\n";
  if (!r.counterexamples.empty()) {
    std::filesystem::create_directories(outDir);
    for (std::size_t i = 0; i < r.counterexamples.size(); ++i) {
      auto file = std::filesystem::path(outDir) / (r.name + "-" + std::to_string(i + 1) + ".txt");
      std::ofstream(file, std::ios::binary) << r.counterexamples[i];
      std::cout << "counterexample " << file.string() << "\n";
    }
  }
  std::cout << (r.passed() ? "PASS" : "FAIL") << "\n";
  return r.passed() ? 0 : 1;
}

int cmd_equiv(const std::string& a, const std::string& b) {
  GraphingRep f = load(a).graphing, g = load(b).graphing;
  bool fg = is_refinement(f, g), gf = is_refinement(g, f), eq = equivalent(f, g);
  std::cout << "refines " << (fg ? "yes" : "no") << "\n";
  std::cout << "refined-by " << (gf ? "yes" : "no") << "\n";
  std::cout << (eq ? "equivalent" : "not equivalent") << "\n";
  return eq ? 0 : 1;
}

int cmd_dump(const std::string& path, const std::string& word, std::uint32_t grid) {
  Input in = load(path);
  WordRepresentation rep = representation(word, grid);
  ThickGraph mg = discretize(in.graphing, rep.grid, in.heads);
  ThickGraph wg = discretize(rep.graphing, rep.grid, in.heads);
  std::cout << "# machine\n";
  dump(std::cout, mg);
  std::cout << "# word " << show_word(word) << "\n";
  dump(std::cout, wg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graphings for probabilistic multihead automata"};
  app.require_subcommand(1);

  std::uint32_t stackDepth = 16, grid = 0;
  std::size_t reps = 5, count = 0;
  std::uint64_t seed = 1;
  std::string file, file2, word, out, testText = "pos", words, suite, outDir = "counterexamples";
  std::size_t maxLen = 0;
  bool prune = false;
  auto depthFlag = [&](CLI::App* c) {
    c->add_option("--stack-depth", stackDepth, "stack budget above the initial stack")
        ->default_val(16)
        ->check(CLI::Range(1u, 1u << 20));
  };
  auto gridFlag = [&](CLI::App* c) {
    c->add_option("--grid", grid, "cells of the word representation (default |w|+1)");
  };

  auto* compileCmd = app.add_subcommand("compile", "compile an automaton to a graphing");
  compileCmd->add_option("automaton", file)->required();
  compileCmd->add_option("-o,--output", out, "graphing file (default stdout, summary on stderr)");
  compileCmd->add_flag("--prune", prune, "drop edges from unreachable dialect states");

  auto* acceptCmd = app.add_subcommand("accept", "acceptance probability by path sums, against the oracle");
  acceptCmd->add_option("file", file, "automaton or graphing")->required();
  acceptCmd->add_option("word", word, "word over {0,1}; 'e' for the empty word")->required();
  depthFlag(acceptCmd);
  gridFlag(acceptCmd);

  auto* memberCmd = app.add_subcommand("membership", "verdicts of a test on words, with the oracle column");
  memberCmd->add_option("file", file, "automaton or graphing")->required();
  auto* wordsOpt = memberCmd->add_option("--words", words, "comma separated words ('e' for empty)");
  memberCmd->add_option("--max-len", maxLen, "all words up to this length")->excludes(wordsOpt);
  memberCmd->add_option("--test", testText, "neg, pos or prob:<eps>")->default_val("pos");
  memberCmd->add_option("--reps", reps, "representations for the uniformity column (<= 1 skips it)")->default_val(5);
  memberCmd->add_option("--seed", seed, "seed for the representations")->default_val(1);
  depthFlag(memberCmd);

  auto* propCmd = app.add_subcommand("properties", "run a seeded property suite");
  propCmd->add_option("suite", suite, "det-closure, subprob-closure, uniformity, theta-confluence, refinement")
      ->required();
  propCmd->add_option("--seed", seed)->default_val(1);
  propCmd->add_option("--count", count, "cases (0: suite default)")->default_val(0);
  propCmd->add_option("--out-dir", outDir, "where failing counterexamples are written")->default_val("counterexamples");

  auto* equivCmd = app.add_subcommand("equiv", "graphing equivalence");
  equivCmd->add_option("first", file)->required();
  equivCmd->add_option("second", file2)->required();

  auto* dumpCmd = app.add_subcommand("dump", "thick-graph view of a machine and a word");
  dumpCmd->add_option("file", file, "automaton or graphing")->required();
  dumpCmd->add_option("word", word)->required();
  gridFlag(dumpCmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ExecOptions opts;
  opts.stackDepth = stackDepth;
  if (word == "e") word.clear();
  try {
    if (*compileCmd) return cmd_compile(file, out, prune);
    if (*acceptCmd) return cmd_accept(file, word, opts, grid);
    if (*memberCmd) {
      std::vector<std::string> list = wordsOpt->count() ? split_words(words) : words_upto(maxLen);
      return cmd_membership(file, list, testText, opts, reps, seed);
    }
    if (*propCmd) return cmd_properties(suite, seed, count, outDir);
    if (*equivCmd) return cmd_equiv(file, file2);
    if (*dumpCmd) return cmd_dump(file, word, grid);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
