#include "ig/microcosm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ig/errors.hpp"

namespace ig {

char pushed_letter(StackOp op) {
  switch (op) {
    case StackOp::PushStar: return '*';
    case StackOp::Push0: return '0';
    case StackOp::Push1: return '1';
    case StackOp::Pop: break;
  }
  throw ValidationError("pop pushes nothing");
}

StackOp push_of(char letter) {
  switch (letter) {
    case '*': return StackOp::PushStar;
    case '0': return StackOp::Push0;
    case '1': return StackOp::Push1;
    default: throw ValidationError(std::string("cannot push '") + letter + "'");
  }
}

std::string_view op_name(StackOp op) {
  switch (op) {
    case StackOp::Pop: return "pop";
    case StackOp::PushStar: return "push*";
    case StackOp::Push0: return "push0";
    case StackOp::Push1: return "push1";
  }
  return "?";
}

std::vector<StackOp> normalize_ops(std::vector<StackOp> ops) {
  std::vector<StackOp> out;
  for (StackOp op : ops) {
    if (op == StackOp::Pop && !out.empty() && out.back() != StackOp::Pop) {
      out.pop_back();
    } else {
      out.push_back(op);
    }
  }
  return out;
}

Realizer Realizer::translation(int shift) {
  Realizer r;
  r.shift_ = shift;
  return r;
}

Realizer Realizer::permutation(std::vector<std::uint32_t> perm) {
  std::vector<std::uint32_t> sorted = perm;
  std::sort(sorted.begin(), sorted.end());
  for (std::uint32_t i = 0; i < sorted.size(); ++i)
    if (sorted[i] != i) throw ValidationError("not a permutation of the coordinates");
  Realizer r;
  r.perm_ = std::move(perm);
  r.normalize();
  return r;
}

Realizer Realizer::transposition(std::uint32_t a, std::uint32_t b) {
  std::vector<std::uint32_t> p(std::max(a, b) + 1);
  std::iota(p.begin(), p.end(), 0u);
  std::swap(p[a], p[b]);
  return permutation(std::move(p));
}

Realizer Realizer::box_shift(std::uint32_t coord, Rational amount) {
  Realizer r;
  amount.canonicalize();
  r.boxShift_[coord] = std::move(amount);
  r.normalize();
  return r;
}

Realizer Realizer::stack(std::vector<StackOp> ops) {
  Realizer r;
  r.ops_ = normalize_ops(std::move(ops));
  return r;
}

Realizer Realizer::with_shift(int s) const {
  Realizer r = *this;
  r.shift_ = s;
  return r;
}

Realizer Realizer::with_ops(std::vector<StackOp> ops) const {
  Realizer r = *this;
  r.ops_ = normalize_ops(std::move(ops));
  return r;
}

void Realizer::normalize() {
  while (!perm_.empty() && perm_.back() == perm_.size() - 1) perm_.pop_back();
  for (auto it = boxShift_.begin(); it != boxShift_.end();) {
    if (it->second == 0) {
      it = boxShift_.erase(it);
    } else {
      ++it;
    }
  }
}

std::size_t Realizer::support() const {
  std::size_t n = perm_.size();
  if (!boxShift_.empty()) n = std::max<std::size_t>(n, boxShift_.rbegin()->first + 1);
  return n;
}

Realizer Realizer::inverse_permutation() const {
  std::vector<std::uint32_t> inv(perm_.size());
  for (std::uint32_t i = 0; i < perm_.size(); ++i) inv[perm_[i]] = i;
  return permutation(std::move(inv));
}

bool operator<(const Realizer& a, const Realizer& b) {
  if (a.shift_ != b.shift_) return a.shift_ < b.shift_;
  if (a.perm_ != b.perm_) return a.perm_ < b.perm_;
  if (a.boxShift_ != b.boxShift_) {
    return std::lexicographical_compare(
        a.boxShift_.begin(), a.boxShift_.end(), b.boxShift_.begin(), b.boxShift_.end(),
        [](const auto& x, const auto& y) { return x.first != y.first ? x.first < y.first : x.second < y.second; });
  }
  return a.ops_ < b.ops_;
}

Realizer compose(const Realizer& first, const Realizer& then) {
  Realizer r;
  r.shift_ = first.shift_ + then.shift_;
  std::size_t n = std::max(first.perm_.size(), then.perm_.size());
  r.perm_.resize(n);
  for (std::uint32_t c = 0; c < n; ++c) r.perm_[c] = then.image(first.image(c));
  for (const auto& [c, t] : first.boxShift_) r.boxShift_[then.image(c)] += t;
  for (const auto& [c, t] : then.boxShift_) r.boxShift_[c] += t;
  std::vector<StackOp> ops = first.ops_;
  ops.insert(ops.end(), then.ops_.begin(), then.ops_.end());
  r.ops_ = normalize_ops(std::move(ops));
  r.normalize();
  return r;
}

namespace {

// Stack ops on a single cylinder; a pop on the empty prefix fans out.
void apply_ops(const std::vector<StackOp>& ops, Atom a, std::vector<Atom>& out) {
  for (std::size_t k = 0; k < ops.size(); ++k) {
    StackOp op = ops[k];
    if (op == StackOp::Pop) {
      // An empty prefix splits into V(*), V(0), V(1); each pops back to the
      // full cylinder, so the three images coincide.
      if (!a.cyl.prefix.empty()) a.cyl.prefix.erase(0, 1);
    } else {
      a.cyl.prefix.insert(a.cyl.prefix.begin(), pushed_letter(op));
    }
  }
  out.push_back(std::move(a));
}

}  // namespace

Region apply(const Realizer& f, const Atom& a) {
  auto sym = symbol_at(psi(a.sym) + f.shift());
  if (!sym) throw InvalidTargetError("translation by " + std::to_string(f.shift()) + " leaves the symbol intervals");
  Atom img{*sym, Box{}, a.cyl, a.state};
  std::size_t dims = std::max(a.box.dims(), f.support());
  for (std::uint32_t c = 0; c < dims; ++c) img.box.set(f.image(c), a.box.coord(c));
  for (const auto& [c, t] : f.box_shifts()) {
    Interval iv = img.box.coord(c);
    iv.lo += t;
    iv.hi += t;
    if (iv.lo < 0 || iv.hi > 1)
      throw InvalidTargetError("box translation moves coordinate " + std::to_string(c + 1) + " outside [0,1]");
    img.box.set(c, iv);
  }
  img.box = img.box.canonical();
  std::vector<Atom> out;
  apply_ops(f.stack_ops(), std::move(img), out);
  return Region(std::move(out));
}

Region apply(const Realizer& f, const Region& r) {
  Region out;
  for (const auto& a : r.atoms) {
    for (auto& img : apply(f, a).atoms) {
      if (std::find(out.atoms.begin(), out.atoms.end(), img) == out.atoms.end()) out.atoms.push_back(std::move(img));
    }
  }
  return out;
}

bool in_microcosm(const Realizer& f, Microcosm which, unsigned i) {
  if (!f.box_shifts().empty()) return false;
  bool stackAllowed = which == Microcosm::N || which == Microcosm::NInf;
  if (!stackAllowed && !f.stack_ops().empty()) return false;
  if (which == Microcosm::M || which == Microcosm::N) return f.perm().size() <= std::max(i, 1u);
  return true;
}

unsigned head_bound(const Realizer& f) { return std::max<unsigned>(1, static_cast<unsigned>(f.perm().size())); }

std::string to_string(const Realizer& f) {
  std::ostringstream out;
  out << "{shift=" << f.shift() << ";perm=";
  std::vector<bool> seen(f.perm().size(), false);
  bool any = false;
  for (std::uint32_t c = 0; c < f.perm().size(); ++c) {
    if (seen[c] || f.image(c) == c) continue;
    any = true;
    out << "(";
    std::uint32_t x = c;
    bool first = true;
    while (!seen[x]) {
      seen[x] = true;
      out << (first ? "" : " ") << x + 1;
      first = false;
      x = f.image(x);
    }
    out << ")";
  }
  if (!any) out << "()";
  out << ";bshift=";
  bool firstShift = true;
  for (const auto& [c, t] : f.box_shifts()) {
    out << (firstShift ? "" : ",") << c + 1 << ":" << to_string(t);
    firstShift = false;
  }
  out << ";ops=";
  for (std::size_t k = 0; k < f.stack_ops().size(); ++k) out << (k ? "," : "") << op_name(f.stack_ops()[k]);
  out << "}";
  return out.str();
}

Realizer parse_realizer(std::string_view text) {
  auto fail = [&](const std::string& why) {
    return ValidationError("realizer " + std::string(text) + ": " + why);
  };
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') throw fail("must be enclosed in braces");
  std::string body(text.substr(1, text.size() - 2));

  int shift = 0;
  std::vector<std::uint32_t> perm;
  Realizer shifts;
  std::vector<StackOp> ops;
  std::stringstream fields(body);
  std::string field;
  while (std::getline(fields, field, ';')) {
    auto eq = field.find('=');
    if (eq == std::string::npos) throw fail("field without '='");
    std::string key = field.substr(0, eq), value = field.substr(eq + 1);
    try {
      if (key == "shift") {
        shift = std::stoi(value);
      } else if (key == "perm") {
        std::size_t pos = 0;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> maps;
        while (pos < value.size()) {
          if (value[pos] != '(') throw fail("cycles look like (1 2)(3 4)");
          auto close = value.find(')', pos);
          if (close == std::string::npos) throw fail("unclosed cycle");
          std::istringstream cyc(value.substr(pos + 1, close - pos - 1));
          std::vector<std::uint32_t> elems;
          std::uint32_t x;
          while (cyc >> x) {
            if (x == 0) throw fail("coordinates are 1-based");
            elems.push_back(x - 1);
          }
          for (std::size_t k = 0; k < elems.size(); ++k) maps.emplace_back(elems[k], elems[(k + 1) % elems.size()]);
          pos = close + 1;
        }
        std::uint32_t n = 0;
        for (auto [a, b] : maps) n = std::max({n, a + 1, b + 1});
        perm.resize(n);
        std::iota(perm.begin(), perm.end(), 0u);
        for (auto [a, b] : maps) perm[a] = b;
      } else if (key == "bshift") {
        std::stringstream entries(value);
        std::string entry;
        while (std::getline(entries, entry, ',')) {
          auto colon = entry.find(':');
          if (colon == std::string::npos) throw fail("box shifts look like coord:amount");
          auto c = static_cast<std::uint32_t>(std::stoul(entry.substr(0, colon)));
          if (c == 0) throw fail("coordinates are 1-based");
          shifts = compose(shifts, Realizer::box_shift(c - 1, parse_rational(entry.substr(colon + 1))));
        }
      } else if (key == "ops") {
        std::stringstream entries(value);
        std::string entry;
        while (std::getline(entries, entry, ',')) {
          if (entry == "pop") ops.push_back(StackOp::Pop);
          else if (entry == "push*") ops.push_back(StackOp::PushStar);
          else if (entry == "push0") ops.push_back(StackOp::Push0);
          else if (entry == "push1") ops.push_back(StackOp::Push1);
          else throw fail("unknown stack op '" + entry + "'");
        }
      } else {
        throw fail("unknown field '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw fail("bad number in field '" + key + "'");
    }
  }
  // Box shifts are keyed by output coordinates, so the permutation comes first.
  Realizer out = perm.empty() ? Realizer() : Realizer::permutation(std::move(perm));
  out = compose(out, shifts);
  return compose(out, Realizer::translation(shift).with_ops(std::move(ops)));
}

}  // namespace ig
