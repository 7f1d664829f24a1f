#include "ig/graphing.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <tuple>

#include "ig/errors.hpp"

namespace ig {

std::string to_string(const Weight& w) { return to_string(w.p) + (w.flag ? ".1" : ""); }

Region stated_source(const Edge& e) {
  Region r = e.source;
  for (auto& a : r.atoms) a.state = e.inState;
  return r;
}

void validate(const GraphingRep& g) {
  validate(g.support);
  for (std::size_t k = 0; k < g.edges.size(); ++k) {
    const Edge& e = g.edges[k];
    std::string where = "edge " + std::to_string(k) + ": ";
    if (e.inState >= g.dialect || e.outState >= g.dialect) throw ValidationError(where + "state outside the dialect");
    if (e.weight.p < 0 || e.weight.p > 1) throw ValidationError(where + "weight outside [0,1]");
    validate(e.source);
    if (!ae_equal(intersect(e.source, g.support), e.source)) throw ValidationError(where + "source leaves the support");
    Region target = apply(e.realizer, e.source);
    if (!ae_equal(intersect(target, g.support), target)) throw ValidationError(where + "target leaves the support");
  }
}

namespace {

using Bucket = std::pair<std::uint32_t, Symbol>;

struct Piece {
  std::size_t edge;
  const Atom* atom;
};

std::map<Bucket, std::vector<Piece>> bucket_sources(const GraphingRep& g) {
  std::map<Bucket, std::vector<Piece>> out;
  for (std::size_t k = 0; k < g.edges.size(); ++k)
    for (const auto& a : g.edges[k].source.atoms) out[{g.edges[k].inState, a.sym}].push_back({k, &a});
  return out;
}

Atom with_state(Atom a, std::uint32_t s) {
  a.state = s;
  return a;
}

using Label = std::tuple<Realizer, Weight, std::uint32_t>;

bool label_less(const Label& a, const Label& b) {
  if (std::get<0>(a) < std::get<0>(b)) return true;
  if (std::get<0>(b) < std::get<0>(a)) return false;
  if (std::get<1>(a) < std::get<1>(b)) return true;
  if (std::get<1>(b) < std::get<1>(a)) return false;
  return std::get<2>(a) < std::get<2>(b);
}

}  // namespace

bool is_deterministic(const GraphingRep& g) {
  for (const auto& e : g.edges)
    if (e.weight.p != 1) return false;
  for (const auto& [bucket, pieces] : bucket_sources(g)) {
    for (std::size_t i = 0; i < pieces.size(); ++i)
      for (std::size_t j = i + 1; j < pieces.size(); ++j)
        if (pieces[i].edge != pieces[j].edge && intersect(*pieces[i].atom, *pieces[j].atom)) return false;
  }
  return true;
}

bool is_subprobabilistic(const GraphingRep& g) {
  for (const auto& e : g.edges)
    if (e.weight.p < 0 || e.weight.p > 1) return false;
  for (const auto& [bucket, pieces] : bucket_sources(g)) {
    std::vector<Atom> atoms;
    std::vector<std::size_t> owner;
    for (const auto& pc : pieces) {
      atoms.push_back(with_state(*pc.atom, bucket.first));
      owner.push_back(pc.edge);
    }
    for (const auto& c : covered_partition(atoms, owner)) {
      Rational total(0);
      for (std::size_t k : c.owners) total += g.edges[k].weight.p;
      if (total > 1) return false;
    }
  }
  return true;
}

bool equivalent(const GraphingRep& f, const GraphingRep& g) {
  if (f.dialect != g.dialect) return false;
  // The label multisets agree at a point iff every label is carried by as many
  // edges on both sides there, so each label is partitioned on its own.
  struct Group {
    std::vector<Atom> atoms;
    std::vector<std::size_t> owner;  // f edges as is, g edges shifted past f
  };
  auto less = [](const std::pair<Bucket, Label>& a, const std::pair<Bucket, Label>& b) {
    if (a.first != b.first) return a.first < b.first;
    return label_less(a.second, b.second);
  };
  std::map<std::pair<Bucket, Label>, Group, decltype(less)> groups(less);
  const std::size_t nf = f.edges.size();
  for (const GraphingRep* h : {&f, &g})
    for (std::size_t k = 0; k < h->edges.size(); ++k) {
      const Edge& e = h->edges[k];
      Label l{e.realizer, e.weight, e.outState};
      for (const auto& a : e.source.atoms) {
        Group& gr = groups[{{e.inState, a.sym}, l}];
        gr.atoms.push_back(with_state(a, e.inState));
        gr.owner.push_back(h == &f ? k : nf + k);
      }
    }
  for (const auto& [key, gr] : groups)
    for (const auto& c : covered_partition(gr.atoms, gr.owner)) {
      auto fromF = std::count_if(c.owners.begin(), c.owners.end(), [&](std::size_t o) { return o < nf; });
      if (2 * static_cast<std::size_t>(fromF) != c.owners.size()) return false;
    }
  return true;
}

bool is_refinement(const GraphingRep& f, const GraphingRep& g) {
  if (f.dialect != g.dialect) return false;
  const std::size_t nf = f.edges.size(), ng = g.edges.size();

  // candidates[i]: g-edges with the same label whose source contains f-edge i's source
  std::vector<std::vector<std::size_t>> candidates(nf);
  for (std::size_t i = 0; i < nf; ++i) {
    const Edge& fe = f.edges[i];
    Region fs = stated_source(fe);
    bool null = measure(fs) == 0;
    for (std::size_t j = 0; j < ng; ++j) {
      const Edge& ge = g.edges[j];
      if (fe.inState != ge.inState || fe.outState != ge.outState || !(fe.weight == ge.weight) ||
          !(fe.realizer == ge.realizer))
        continue;
      if (null || ae_equal(intersect(fs, stated_source(ge)), fs)) candidates[i].push_back(j);
    }
    if (candidates[i].empty()) return false;
  }

  std::vector<std::vector<std::size_t>> groups(ng);
  std::function<bool(std::size_t)> assign = [&](std::size_t i) -> bool {
    if (i == nf) {
      for (std::size_t j = 0; j < ng; ++j) {
        Region uni;
        for (std::size_t k : groups[j])
          for (const auto& a : stated_source(f.edges[k]).atoms) uni.atoms.push_back(a);
        if (!ae_equal(uni, stated_source(g.edges[j]))) return false;
      }
      return true;
    }
    Region fi = stated_source(f.edges[i]);
    for (std::size_t j : candidates[i]) {
      bool clash = false;
      for (std::size_t k : groups[j])
        if (measure(intersect(fi, stated_source(f.edges[k]))) > 0) {
          clash = true;
          break;
        }
      if (clash) continue;
      groups[j].push_back(i);
      if (assign(i + 1)) return true;
      groups[j].pop_back();
    }
    return false;
  };
  return assign(0);
}

// ---------------------------------------------------------------- text

void write_graphing(std::ostream& out, const GraphingRep& g, bool withProvenance) {
  out << "graphing\n";
  out << "dialect " << g.dialect << "\n";
  out << "support " << to_string(g.support) << "\n";
  for (const auto& e : g.edges) {
    if (withProvenance && e.provenance >= 0) out << "# from transition " << e.provenance << "\n";
    out << "edge " << e.inState << " " << e.outState << " " << to_string(e.weight.p) << " " << (e.weight.flag ? 1 : 0)
        << " | " << to_string(e.realizer) << " | " << to_string(e.source) << "\n";
  }
}

GraphingRep read_graphing(std::istream& in) {
  GraphingRep g;
  std::string line;
  int lineNo = 0;
  bool header = false, haveSupport = false;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    try {
      std::istringstream ls(line);
      std::string kw;
      ls >> kw;
      if (!header) {
        if (kw != "graphing") throw ValidationError("expected 'graphing' header");
        header = true;
      } else if (kw == "dialect") {
        long long n = -1;
        if (!(ls >> n) || n < 1) throw ValidationError("dialect size must be a positive integer");
        g.dialect = static_cast<std::uint32_t>(n);
      } else if (kw == "support") {
        g.support = parse_region(line.substr(line.find("support") + 7));
        haveSupport = true;
      } else if (kw == "edge") {
        auto bar1 = line.find('|');
        auto bar2 = bar1 == std::string::npos ? bar1 : line.find('|', bar1 + 1);
        if (bar2 == std::string::npos) throw ValidationError("edge needs '| realizer | region'");
        std::istringstream head(line.substr(4, bar1 - 4));
        Edge e;
        long long in_ = -1, out_ = -1;
        std::string p;
        int flag = -1;
        if (!(head >> in_ >> out_ >> p >> flag) || in_ < 0 || out_ < 0 || (flag != 0 && flag != 1))
          throw ValidationError("edge header is '<in> <out> <p> <flag>'");
        e.inState = static_cast<std::uint32_t>(in_);
        e.outState = static_cast<std::uint32_t>(out_);
        e.weight = Weight{parse_rational(p), flag == 1};
        if (e.weight.p < 0 || e.weight.p > 1) throw ValidationError("weight outside [0,1]");
        std::string real = line.substr(bar1 + 1, bar2 - bar1 - 1);
        real.erase(0, real.find_first_not_of(' '));
        real.erase(real.find_last_not_of(' ') + 1);
        e.realizer = parse_realizer(real);
        e.source = parse_region(line.substr(bar2 + 1));
        g.edges.push_back(std::move(e));
      } else {
        throw ValidationError("unknown keyword '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& err) {
      throw ParseError(lineNo, err.what());
    }
  }
  if (!header) throw ParseError(lineNo, "missing 'graphing' header");
  if (!haveSupport) throw ParseError(lineNo, "missing support line");
  for (const auto& e : g.edges)
    if (e.inState >= g.dialect || e.outState >= g.dialect) throw ParseError(lineNo, "edge state outside the dialect");
  return g;
}

std::string to_text(const GraphingRep& g) {
  std::ostringstream out;
  write_graphing(out, g);
  return out.str();
}

GraphingRep from_text(const std::string& text) {
  std::istringstream in(text);
  return read_graphing(in);
}

}  // namespace ig
