#include "ig/measure_space.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <sstream>

#include "ig/errors.hpp"

namespace ig {

namespace {

constexpr std::array<std::string_view, kSymbolCount> kNames = {"*i", "*o", "0i", "0o",
                                                               "1i", "1o", "a",  "r"};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

Rational pow3_inv(std::size_t n) {
  mpz_class d;
  mpz_ui_pow_ui(d.get_mpz_t(), 3, static_cast<unsigned long>(n));
  return Rational(mpz_class(1), d);
}

}  // namespace

std::optional<Symbol> symbol_at(int psiIndex) {
  if (psiIndex < 0 || psiIndex >= kSymbolCount) return std::nullopt;
  return static_cast<Symbol>(psiIndex);
}

Symbol letter_symbol(char letter, Polarity p) {
  int base = 0;
  switch (letter) {
    case '*': base = 0; break;
    case '0': base = 2; break;
    case '1': base = 4; break;
    default: throw ValidationError(std::string("invalid letter '") + letter + "'");
  }
  return static_cast<Symbol>(base + (p == Polarity::Out ? 1 : 0));
}

bool is_letter_symbol(Symbol s) { return psi(s) < 6; }

char symbol_letter(Symbol s) { return "**0011"[psi(s)]; }

Polarity symbol_polarity(Symbol s) { return psi(s) % 2 == 0 ? Polarity::In : Polarity::Out; }

std::string_view symbol_name(Symbol s) { return kNames[psi(s)]; }

Symbol parse_symbol(std::string_view name) {
  for (int i = 0; i < kSymbolCount; ++i)
    if (kNames[i] == name) return static_cast<Symbol>(i);
  throw ValidationError("unknown symbol '" + std::string(name) + "'");
}

// ---------------------------------------------------------------- Box

Box::Box(std::vector<Interval> intervals) : iv_(std::move(intervals)) {
  for (auto& iv : iv_) {
    iv.lo.canonicalize();
    iv.hi.canonicalize();
  }
}

Box Box::along(std::size_t coord, Interval iv) {
  Box b;
  b.set(coord, std::move(iv));
  return b;
}

Interval Box::coord(std::size_t i) const { return i < iv_.size() ? iv_[i] : Interval{}; }

void Box::set(std::size_t i, Interval iv) {
  if (iv_.size() <= i) iv_.resize(i + 1);
  iv.lo.canonicalize();
  iv.hi.canonicalize();
  iv_[i] = std::move(iv);
}

Rational Box::measure() const {
  Rational m(1);
  for (const auto& iv : iv_) m *= iv.length();
  return m;
}

Box Box::canonical() const {
  std::vector<Interval> out = iv_;
  while (!out.empty() && out.back() == Interval{}) out.pop_back();
  return Box(std::move(out));
}

bool operator==(const Box& a, const Box& b) {
  std::size_t n = std::max(a.dims(), b.dims());
  for (std::size_t i = 0; i < n; ++i)
    if (!(a.coord(i) == b.coord(i))) return false;
  return true;
}

// ---------------------------------------------------------------- Cylinder

Rational Cylinder::measure() const { return pow3_inv(prefix.size()); }

bool Cylinder::contains(const Cylinder& other) const {
  return other.prefix.size() >= prefix.size() && other.prefix.compare(0, prefix.size(), prefix) == 0;
}

// ---------------------------------------------------------------- Atom

bool operator==(const Atom& a, const Atom& b) {
  return a.sym == b.sym && a.state == b.state && a.box == b.box && a.cyl == b.cyl;
}

std::strong_ordering compare(const Atom& a, const Atom& b) {
  if (auto c = a.sym <=> b.sym; c != 0) return c;
  if (auto c = a.state <=> b.state; c != 0) return c;
  std::size_t n = std::max(a.box.dims(), b.box.dims());
  for (std::size_t i = 0; i < n; ++i) {
    Interval x = a.box.coord(i), y = b.box.coord(i);
    if (int c = cmp(x.lo, y.lo); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (int c = cmp(x.hi, y.hi); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.cyl.prefix <=> b.cyl.prefix;
}

void validate(const Atom& a) {
  if (psi(a.sym) < 0 || psi(a.sym) >= kSymbolCount) throw ValidationError("symbol out of range");
  for (std::size_t i = 0; i < a.box.dims(); ++i) {
    const Interval& iv = a.box.intervals()[i];
    if (iv.lo < 0 || iv.hi > 1 || iv.lo > iv.hi)
      throw ValidationError("interval " + to_string(iv) + " on coordinate " + std::to_string(i + 1) +
                            " is not inside [0,1]");
  }
  for (char c : a.cyl.prefix)
    if (c != '*' && c != '0' && c != '1') throw ValidationError("cylinder letter must be one of *,0,1");
}

void validate(const Region& r) {
  for (const auto& a : r.atoms) validate(a);
}

Rational measure(const Region& r) {
  Rational m(0);
  for (const auto& a : r.atoms) m += a.measure();
  return m;
}

std::optional<Atom> intersect(const Atom& a, const Atom& b) {
  if (a.sym != b.sym || a.state != b.state) return std::nullopt;
  const Cylinder* longer;
  if (a.cyl.contains(b.cyl)) {
    longer = &b.cyl;
  } else if (b.cyl.contains(a.cyl)) {
    longer = &a.cyl;
  } else {
    return std::nullopt;
  }
  Atom out{a.sym, Box{}, *longer, a.state};
  std::size_t n = std::max(a.box.dims(), b.box.dims());
  for (std::size_t i = 0; i < n; ++i) {
    Interval x = a.box.coord(i), y = b.box.coord(i);
    Interval z{x.lo > y.lo ? x.lo : y.lo, x.hi < y.hi ? x.hi : y.hi};
    if (z.lo >= z.hi) return std::nullopt;
    out.box.set(i, z);
  }
  out.box = out.box.canonical();
  return out;
}

Region intersect(const Region& r1, const Region& r2) {
  Region out;
  for (const auto& a : r1.atoms)
    for (const auto& b : r2.atoms)
      if (auto c = intersect(a, b)) out.atoms.push_back(std::move(*c));
  return out;
}

bool contains(const Atom& outer, const Atom& inner) {
  if (outer.sym != inner.sym || outer.state != inner.state) return false;
  if (!outer.cyl.contains(inner.cyl)) return false;
  std::size_t n = std::max(outer.box.dims(), inner.box.dims());
  for (std::size_t i = 0; i < n; ++i) {
    Interval o = outer.box.coord(i), x = inner.box.coord(i);
    if (x.lo >= x.hi) continue;  // null inner set
    if (x.lo < o.lo || x.hi > o.hi) return false;
  }
  return true;
}

namespace {

void cylinder_leaves(const std::string& node, const std::set<std::string>& prefixes,
                     std::vector<std::string>& out) {
  bool split = false;
  for (auto it = prefixes.lower_bound(node); it != prefixes.end(); ++it) {
    if (it->compare(0, node.size(), node) != 0) break;
    if (it->size() > node.size()) {
      split = true;
      break;
    }
  }
  if (!split) {
    out.push_back(node);
    return;
  }
  for (char c : {'*', '0', '1'}) cylinder_leaves(node + c, prefixes, out);
}

}  // namespace

std::vector<CoveredCell> covered_partition(std::span<const Atom> atoms, std::span<const std::size_t> owner) {
  std::map<std::pair<Symbol, std::uint32_t>, std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < atoms.size(); ++k)
    if (atoms[k].measure() > 0) groups[{atoms[k].sym, atoms[k].state}].push_back(k);

  std::vector<CoveredCell> cells;
  for (const auto& [key, members] : groups) {
    std::size_t dims = 0;
    std::set<std::string> prefixes;
    for (std::size_t k : members) {
      dims = std::max(dims, atoms[k].box.dims());
      prefixes.insert(atoms[k].cyl.prefix);
    }
    std::vector<std::vector<Rational>> cuts(dims);
    for (std::size_t i = 0; i < dims; ++i) {
      std::vector<Rational> pts{Rational(0), Rational(1)};
      for (std::size_t k : members) {
        pts.push_back(atoms[k].box.coord(i).lo);
        pts.push_back(atoms[k].box.coord(i).hi);
      }
      std::sort(pts.begin(), pts.end());
      pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
      cuts[i] = std::move(pts);
    }
    // depth-first order is lexicographic, so the leaves under a prefix are contiguous
    std::vector<std::string> leaves;
    cylinder_leaves("", prefixes, leaves);

    // cell (idx, leaf) lives at (sum idx[i] * stride[i]) * leaves + leaf
    std::vector<std::size_t> stride(dims + 1, 1);
    for (std::size_t i = 0; i < dims; ++i) stride[i + 1] = stride[i] * (cuts[i].size() - 1);
    std::vector<std::vector<std::size_t>> cover(stride[dims] * leaves.size());

    for (std::size_t k : members) {
      const Atom& a = atoms[k];
      auto first = std::lower_bound(leaves.begin(), leaves.end(), a.cyl.prefix);
      auto last = first;
      while (last != leaves.end() && last->compare(0, a.cyl.prefix.size(), a.cyl.prefix) == 0) ++last;
      std::vector<std::size_t> lo(dims), hi(dims);
      for (std::size_t i = 0; i < dims; ++i) {
        Interval iv = a.box.coord(i);
        lo[i] = std::lower_bound(cuts[i].begin(), cuts[i].end(), iv.lo) - cuts[i].begin();
        hi[i] = std::lower_bound(cuts[i].begin(), cuts[i].end(), iv.hi) - cuts[i].begin();
      }
      std::vector<std::size_t> idx = lo;
      while (true) {
        std::size_t base = 0;
        for (std::size_t i = 0; i < dims; ++i) base += idx[i] * stride[i];
        for (auto it = first; it != last; ++it) cover[base * leaves.size() + (it - leaves.begin())].push_back(owner[k]);
        std::size_t d = 0;
        while (d < dims) {
          if (++idx[d] < hi[d]) break;
          idx[d] = lo[d];
          ++d;
        }
        if (d == dims) break;
      }
    }

    std::vector<std::size_t> idx(dims, 0);
    for (std::size_t b = 0; b < stride[dims]; ++b) {
      Box box;
      for (std::size_t i = 0; i < dims; ++i) box.set(i, Interval{cuts[i][idx[i]], cuts[i][idx[i] + 1]});
      box = box.canonical();
      for (std::size_t l = 0; l < leaves.size(); ++l) {
        auto& own = cover[b * leaves.size() + l];
        if (own.empty()) continue;
        std::sort(own.begin(), own.end());
        own.erase(std::unique(own.begin(), own.end()), own.end());
        cells.push_back({Atom{key.first, box, Cylinder{leaves[l]}, key.second}, std::move(own)});
      }
      for (std::size_t d = 0; d < dims; ++d) {
        if (++idx[d] + 1 < cuts[d].size()) break;
        idx[d] = 0;
      }
    }
  }
  return cells;
}

std::vector<Atom> common_partition(std::span<const Atom> atoms) {
  std::vector<std::size_t> owner(atoms.size(), 0);
  std::vector<Atom> out;
  for (auto& c : covered_partition(atoms, owner)) out.push_back(std::move(c.cell));
  return out;
}

bool ae_equal(const Region& r1, const Region& r2) {
  std::vector<Atom> all = r1.atoms;
  all.insert(all.end(), r2.atoms.begin(), r2.atoms.end());
  std::vector<std::size_t> owner(all.size(), 1);
  std::fill(owner.begin(), owner.begin() + r1.atoms.size(), 0);
  for (const auto& c : covered_partition(all, owner))
    if (c.owners.size() != 2) return false;
  return true;
}

bool pairwise_disjoint(const Region& r) {
  for (std::size_t i = 0; i < r.atoms.size(); ++i)
    for (std::size_t j = i + 1; j < r.atoms.size(); ++j)
      if (intersect(r.atoms[i], r.atoms[j])) return false;
  return true;
}

Region canonical(const Region& r) {
  Region out;
  for (const auto& a : r.atoms) {
    Atom c = a;
    c.box = c.box.canonical();
    out.atoms.push_back(std::move(c));
  }
  std::sort(out.atoms.begin(), out.atoms.end(),
            [](const Atom& a, const Atom& b) { return compare(a, b) < 0; });
  return out;
}

// ---------------------------------------------------------------- text

std::string to_string(const Interval& iv) { return "[" + to_string(iv.lo) + "," + to_string(iv.hi) + "]"; }

std::string to_string(const Box& b) {
  Box c = b.canonical();
  if (c.dims() == 0) return "full";
  std::string out;
  for (std::size_t i = 0; i < c.dims(); ++i) {
    if (i) out += "x";
    out += to_string(c.intervals()[i]);
  }
  return out;
}

std::string to_string(const Atom& a) {
  std::string out = std::string(symbol_name(a.sym)) + " " + to_string(a.box) + " V(" + a.cyl.prefix + ")";
  if (a.state != 0) out += "@" + std::to_string(a.state);
  return out;
}

std::string to_string(const Region& r) {
  if (r.atoms.empty()) return "empty";
  Region c = canonical(r);
  std::string out;
  for (std::size_t i = 0; i < c.atoms.size(); ++i) {
    if (i) out += " + ";
    out += to_string(c.atoms[i]);
  }
  return out;
}

Atom parse_atom(std::string_view text) {
  text = trim(text);
  std::istringstream in{std::string(text)};
  std::string sym, box, cyl;
  if (!(in >> sym >> box >> cyl)) throw ValidationError("atom needs '<symbol> <box> V(<prefix>)': " + std::string(text));
  std::string rest;
  if (in >> rest) throw ValidationError("trailing text in atom: " + rest);

  Atom a;
  a.sym = parse_symbol(sym);
  if (box != "full") {
    std::size_t pos = 0, coord = 0;
    while (pos < box.size()) {
      if (box[pos] != '[') throw ValidationError("box must look like [lo,hi]x[lo,hi]: " + box);
      auto comma = box.find(',', pos);
      auto close = box.find(']', pos);
      if (comma == std::string::npos || close == std::string::npos || comma > close)
        throw ValidationError("box must look like [lo,hi]x[lo,hi]: " + box);
      Interval iv{parse_rational(box.substr(pos + 1, comma - pos - 1)),
                  parse_rational(box.substr(comma + 1, close - comma - 1))};
      a.box.set(coord++, iv);
      pos = close + 1;
      if (pos < box.size()) {
        if (box[pos] != 'x') throw ValidationError("coordinates are separated by 'x': " + box);
        ++pos;
      }
    }
  }
  auto at = cyl.find('@');
  std::string cylPart = cyl.substr(0, at);
  if (cylPart.size() < 3 || cylPart.rfind("V(", 0) != 0 || cylPart.back() != ')')
    throw ValidationError("cylinder must look like V(prefix): " + cyl);
  a.cyl.prefix = cylPart.substr(2, cylPart.size() - 3);
  if (at != std::string::npos) a.state = static_cast<std::uint32_t>(std::stoul(cyl.substr(at + 1)));
  validate(a);
  a.box = a.box.canonical();
  return a;
}

Region parse_region(std::string_view text) {
  text = trim(text);
  Region r;
  if (text == "empty") return r;
  while (!text.empty()) {
    auto plus = text.find(" + ");
    r.atoms.push_back(parse_atom(text.substr(0, plus)));
    if (plus == std::string_view::npos) break;
    text.remove_prefix(plus + 3);
  }
  return r;
}

}  // namespace ig
