#include "ig/words.hpp"

#include <algorithm>
#include <functional>

#include "ig/errors.hpp"

namespace ig {

WordGraph word_graph(std::string_view w) {
  for (char c : w)
    if (c != '0' && c != '1') throw ValidationError("words are over {0,1}, got '" + std::string(w) + "'");
  WordGraph g;
  g.word = std::string(w);
  const std::uint32_t n = g.positions();
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t next = (i + 1) % n;
    g.edges.push_back({'r', i, letter_symbol(g.letter(i), Polarity::Out), i, letter_symbol(g.letter(next), Polarity::In), next});
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t prev = (i + n - 1) % n;
    g.edges.push_back({'l', i, letter_symbol(g.letter(i), Polarity::In), i, letter_symbol(g.letter(prev), Polarity::Out), prev});
  }
  return g;
}

Region word_support() {
  Region r;
  for (int s = 0; s < 6; ++s) r.atoms.push_back(Atom{static_cast<Symbol>(s), Box{}, Cylinder{}, 0});
  return r;
}

GraphingRep bang_representation(const WordGraph& g, std::span<const std::uint32_t> injection, std::uint32_t m) {
  if (injection.size() != g.positions()) throw ValidationError("injection must cover every word position");
  std::vector<std::uint32_t> sorted(injection.begin(), injection.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) throw ValidationError("injection is not injective");
  if (m == 0) m = sorted.back();
  if (sorted.back() > m) throw ValidationError("injection leaves {0..m}");
  const Rational width(1, m + 1);

  GraphingRep out;
  out.support = word_support();
  out.dialect = 1;
  for (const auto& e : g.edges) {
    Edge edge;
    std::uint32_t from = injection[e.srcPos], to = injection[e.dstPos];
    Interval iv{width * from, width * (from + 1)};
    edge.source = Region{Atom{e.srcSym, Box::along(0, iv), Cylinder{}, 0}};
    edge.realizer = compose(Realizer::translation(psi(e.dstSym) - psi(e.srcSym)),
                            Realizer::box_shift(0, width * (Rational(to) - Rational(from))));
    edge.weight = Weight{1, false};
    edge.provenance = (e.kind == 'r' ? 0 : 1) + 2 * static_cast<std::int64_t>(e.index);
    out.edges.push_back(std::move(edge));
  }
  return out;
}

WordRepresentation make_representation(const WordGraph& g, std::vector<std::uint32_t> injection, std::uint32_t m) {
  WordRepresentation rep;
  rep.graphing = bang_representation(g, injection, m);
  rep.graph = g;
  rep.injection = std::move(injection);
  rep.grid = m + 1;
  return rep;
}

WordRepresentation canonical_representation(std::string_view w) {
  WordGraph g = word_graph(w);
  std::vector<std::uint32_t> id(g.positions());
  for (std::uint32_t i = 0; i < id.size(); ++i) id[i] = i;
  return make_representation(g, std::move(id), g.positions() - 1);
}

std::uint64_t rep_family_size(std::size_t k, std::uint32_t m) {
  if (m < k) return 0;
  std::uint64_t n = 1;
  for (std::size_t i = 0; i <= k; ++i) n *= (m + 1 - i);
  return n;
}

std::vector<WordRepresentation> rep_family(std::string_view w, std::uint32_t m, std::size_t limit) {
  WordGraph g = word_graph(w);
  if (m < w.size()) throw ValidationError("m must be at least the word length");
  std::vector<WordRepresentation> out;
  std::vector<std::uint32_t> current;
  std::vector<char> used(m + 1, 0);
  std::function<bool()> rec = [&]() -> bool {
    if (current.size() == g.positions()) {
      out.push_back(make_representation(g, current, m));
      return limit == 0 || out.size() < limit;
    }
    for (std::uint32_t v = 0; v <= m; ++v) {
      if (used[v]) continue;
      used[v] = 1;
      current.push_back(v);
      bool more = rec();
      current.pop_back();
      used[v] = 0;
      if (!more) return false;
    }
    return true;
  };
  rec();
  return out;
}

Region marker_region(const WordRepresentation& rep, unsigned heads, Symbol sym, const std::string& cylinder) {
  const Rational width(1, rep.grid);
  Box box;
  Interval iv{width * rep.marker_cell(), width * (rep.marker_cell() + 1)};
  for (unsigned h = 0; h < heads; ++h) box.set(h, iv);
  return Region{Atom{sym, box.canonical(), Cylinder{cylinder}, 0}};
}

}  // namespace ig
