#include "ig/linear_solve.hpp"

#include <algorithm>

#include "ig/errors.hpp"

namespace ig {

namespace {

void axpy(SparseVector& y, const Rational& a, const SparseVector& x) {
  for (const auto& [c, v] : x) {
    auto [it, inserted] = y.try_emplace(c, 0);
    it->second += a * v;
    if (it->second == 0) y.erase(it);
  }
}

// Tarjan's algorithm, iterative; components come out in reverse topological order.
std::vector<std::vector<std::size_t>> components(const FixpointSystem& sys, const std::vector<char>& live) {
  const std::size_t n = sys.size();
  constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, kUnvisited), low(n, 0);
  std::vector<char> onStack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> out;
  std::size_t counter = 0;

  struct Frame {
    std::size_t v;
    std::size_t next;
  };
  for (std::size_t root = 0; root < n; ++root) {
    if (!live[root] || index[root] != kUnvisited) continue;
    std::vector<Frame> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    onStack[root] = 1;
    while (!frames.empty()) {
      Frame& fr = frames.back();
      const auto& row = sys.coeffs[fr.v];
      if (fr.next < row.size()) {
        std::size_t u = row[fr.next++].first;
        if (!live[u]) continue;
        if (index[u] == kUnvisited) {
          index[u] = low[u] = counter++;
          stack.push_back(u);
          onStack[u] = 1;
          frames.push_back({u, 0});
        } else if (onStack[u]) {
          low[fr.v] = std::min(low[fr.v], index[u]);
        }
        continue;
      }
      std::size_t v = fr.v;
      frames.pop_back();
      if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      if (low[v] == index[v]) {
        std::vector<std::size_t> comp;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          onStack[w] = 0;
          comp.push_back(w);
        } while (w != v);
        // Variables are numbered in discovery order; keeping that order
        // inside a component keeps elimination close to banded.
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
      }
    }
  }
  return out;
}

// Variables that can reach a non-zero right-hand side.
std::vector<char> live_variables(const FixpointSystem& sys) {
  const std::size_t n = sys.size();
  std::vector<std::vector<std::size_t>> preds(n);
  for (std::size_t v = 0; v < n; ++v)
    for (const auto& [u, a] : sys.coeffs[v])
      if (a != 0) preds[u].push_back(v);
  std::vector<char> live(n, 0);
  std::vector<std::size_t> work;
  for (std::size_t v = 0; v < n; ++v)
    if (!sys.rhs[v].empty()) {
      live[v] = 1;
      work.push_back(v);
    }
  while (!work.empty()) {
    std::size_t u = work.back();
    work.pop_back();
    for (std::size_t v : preds[u])
      if (!live[v]) {
        live[v] = 1;
        work.push_back(v);
      }
  }

  return live;
}

}  // namespace

std::vector<SparseVector> solve_fixpoint(const FixpointSystem& sys) {
  const std::size_t n = sys.size();
  std::vector<SparseVector> x(n);

  const std::vector<char> live = live_variables(sys);

  std::vector<std::size_t> local(n, static_cast<std::size_t>(-1));
  for (const auto& comp : components(sys, live)) {
    if (comp.size() == 1) {
      std::size_t v = comp[0];
      Rational self(0);
      SparseVector acc = sys.rhs[v];
      for (const auto& [u, a] : sys.coeffs[v]) {
        if (!live[u] || a == 0) continue;
        if (u == v) {
          self += a;
        } else {
          axpy(acc, a, x[u]);
        }
      }
      if (self != 0) {
        if (self >= 1) throw ClosureViolation("path weight mass diverges on a self-loop");
        Rational scale = 1 / (1 - self);
        for (auto& [c, val] : acc) val *= scale;
      }
      x[v] = std::move(acc);
      continue;
    }

    // rows of (I - A_SS) x_S = b_S + A_S,rest x_rest in local indices
    const std::size_t s = comp.size();
    for (std::size_t i = 0; i < s; ++i) local[comp[i]] = i;
    std::vector<SparseVector> rows(s), rhs(s);
    for (std::size_t i = 0; i < s; ++i) {
      std::size_t v = comp[i];
      rows[i][i] = 1;
      rhs[i] = sys.rhs[v];
      for (const auto& [u, a] : sys.coeffs[v]) {
        if (!live[u] || a == 0) continue;
        if (local[u] < s && comp[local[u]] == u) {
          auto [it, ins] = rows[i].try_emplace(local[u], 0);
          it->second -= a;
          if (it->second == 0) rows[i].erase(it);
        } else {
          axpy(rhs[i], a, x[u]);
        }
      }
    }
    // forward elimination into upper-triangular rows
    for (std::size_t i = 0; i < s; ++i) {
      while (true) {
        auto it = rows[i].begin();
        if (it == rows[i].end() || it->first >= i) break;
        std::size_t c = it->first;
        Rational factor = -it->second / rows[c].at(c);
        axpy(rows[i], factor, rows[c]);
        axpy(rhs[i], factor, rhs[c]);
      }
      auto piv = rows[i].find(i);
      if (piv == rows[i].end() || piv->second <= 0)
        throw ClosureViolation("path weight mass diverges inside a strongly connected component");
    }
    for (std::size_t i = s; i-- > 0;) {
      SparseVector acc = rhs[i];
      for (const auto& [c, a] : rows[i]) {
        if (c == i) continue;
        axpy(acc, -a, x[comp[c]]);
      }
      Rational inv = 1 / rows[i].at(i);
      for (auto& [col, val] : acc) {
        val *= inv;
        if (val < 0) throw ClosureViolation("path weight mass diverges (negative solution)");
      }
      x[comp[i]] = std::move(acc);
    }
    for (std::size_t v : comp) local[v] = static_cast<std::size_t>(-1);
  }
  return x;
}

SparseVector solve_from(const FixpointSystem& sys, std::size_t start) {
  const std::size_t n = sys.size();
  std::vector<char> live = live_variables(sys);
  SparseVector result;
  if (start >= n || !live[start]) return result;
  // only what the start reaches matters
  std::vector<char> mask(n, 0);
  std::vector<std::size_t> work{start};
  mask[start] = 1;
  while (!work.empty()) {
    std::size_t v = work.back();
    work.pop_back();
    for (const auto& [u, a] : sys.coeffs[v])
      if (live[u] && a != 0 && !mask[u]) {
        mask[u] = 1;
        work.push_back(u);
      }
  }

  std::vector<Rational> inflow(n, Rational(0));
  inflow[start] = 1;
  auto comps = components(sys, mask);
  std::vector<std::size_t> local(n, static_cast<std::size_t>(-1));
  // sources first
  for (auto ci = comps.rbegin(); ci != comps.rend(); ++ci) {
    const auto& comp = *ci;
    const std::size_t s = comp.size();
    std::vector<Rational> z(s);
    if (s == 1) {
      std::size_t v = comp[0];
      Rational self(0);
      for (const auto& [u, a] : sys.coeffs[v])
        if (u == v) self += a;
      if (self >= 1) throw ClosureViolation("path weight mass diverges on a self-loop");
      z[0] = inflow[v] / (1 - self);
    } else {
      // z_S (I - A_SS) = inflow_S, solved as the transposed system
      for (std::size_t i = 0; i < s; ++i) local[comp[i]] = i;
      std::vector<SparseVector> rows(s);
      std::vector<Rational> rhs(s);
      for (std::size_t i = 0; i < s; ++i) {
        rows[i][i] += 1;
        rhs[i] = inflow[comp[i]];
      }
      for (std::size_t i = 0; i < s; ++i)
        for (const auto& [u, a] : sys.coeffs[comp[i]]) {
          if (!mask[u] || a == 0 || local[u] >= s || comp[local[u]] != u) continue;
          auto [it, ins] = rows[local[u]].try_emplace(i, 0);
          it->second -= a;
          if (it->second == 0) rows[local[u]].erase(it);
        }
      for (std::size_t i = 0; i < s; ++i) {
        while (true) {
          auto it = rows[i].begin();
          if (it == rows[i].end() || it->first >= i) break;
          std::size_t c = it->first;
          Rational factor = -it->second;  // pivot rows are normalised to 1
          axpy(rows[i], factor, rows[c]);
          rhs[i] += factor * rhs[c];
        }
        auto piv = rows[i].find(i);
        if (piv == rows[i].end() || piv->second <= 0)
          throw ClosureViolation("path weight mass diverges inside a strongly connected component");
        Rational inv = 1 / piv->second;
        for (auto& [c, val] : rows[i]) val *= inv;
        rhs[i] *= inv;
      }
      for (std::size_t i = s; i-- > 0;) {
        Rational acc = rhs[i];
        for (const auto& [c, a] : rows[i])
          if (c != i) acc -= a * z[c];
        if (acc < 0) throw ClosureViolation("path weight mass diverges (negative solution)");
        z[i] = acc;
      }
    }
    for (std::size_t i = 0; i < s; ++i) local[comp[i]] = i;
    for (std::size_t i = 0; i < s; ++i) {
      std::size_t v = comp[i];
      if (z[i] == 0) continue;
      axpy(result, z[i], sys.rhs[v]);
      for (const auto& [u, a] : sys.coeffs[v])
        if (mask[u] && a != 0 && !(local[u] < s && comp[local[u]] == u)) inflow[u] += z[i] * a;
    }
    for (std::size_t v : comp) local[v] = static_cast<std::size_t>(-1);
  }
  return result;
}

}  // namespace ig
