// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#include "kernels.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "error.hpp"

namespace relwb {

namespace {

// Small multiword bitset used for clique and item sets.
struct Bits {
  std::vector<uint64_t> w;
  Bits() = default;
  explicit Bits(int n) : w(static_cast<size_t>((n + 63) / 64), 0) {}
  void set(int i) { w[static_cast<size_t>(i) / 64] |= 1ull << (i % 64); }
  void reset(int i) { w[static_cast<size_t>(i) / 64] &= ~(1ull << (i % 64)); }
  bool test(int i) const { return w[static_cast<size_t>(i) / 64] >> (i % 64) & 1; }
  bool none() const {
    for (uint64_t x : w)
      if (x) return false;
    return true;
  }
  int count() const {
    int c = 0;
    for (uint64_t x : w) c += std::popcount(x);
    return c;
  }
  bool intersects(const Bits& o) const {
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i] & o.w[i]) return true;
    return false;
  }
  bool contains_all(const Bits& o) const {
    for (size_t i = 0; i < w.size(); ++i)
      if (o.w[i] & ~w[i]) return false;
    return true;
  }
  Bits operator&(const Bits& o) const {
    Bits r = *this;
    for (size_t i = 0; i < w.size(); ++i) r.w[i] &= o.w[i];
    return r;
  }
  Bits andnot(const Bits& o) const {
    Bits r = *this;
    for (size_t i = 0; i < w.size(); ++i) r.w[i] &= ~o.w[i];
    return r;
  }
  void operator|=(const Bits& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  }
  template <typename F>
  void for_each(F f) const {
    for (size_t k = 0; k < w.size(); ++k) {
      uint64_t x = w[k];
      while (x) {
        f(static_cast<int>(k) * 64 + std::countr_zero(x));
        x &= x - 1;
      }
    }
  }
};

std::vector<std::vector<int>> maximal_cliques(int n, const std::vector<Bits>& adj) {
  std::vector<std::vector<int>> out;
  std::vector<int> r;
  std::function<void(Bits, Bits)> bk = [&](Bits p, Bits x) {
    if (p.none() && x.none()) {
      std::vector<int> c = r;
      std::sort(c.begin(), c.end());
      out.push_back(std::move(c));
      return;
    }
    int pivot = -1, best = -1;
    auto consider = [&](int u) {
      const int deg = (p & adj[static_cast<size_t>(u)]).count();
      if (deg > best) {
        best = deg;
        pivot = u;
      }
    };
    p.for_each(consider);
    x.for_each(consider);
    Bits cand = p.andnot(adj[static_cast<size_t>(pivot)]);
    cand.for_each([&](int v) {
      r.push_back(v);
      bk(p & adj[static_cast<size_t>(v)], x & adj[static_cast<size_t>(v)]);
      r.pop_back();
      p.reset(v);
      x.set(v);
    });
  };
  Bits p(n);
  for (int v = 0; v < n; ++v) p.set(v);
  bk(p, Bits(n));
  return out;
}

// Exact minimum set cover: selects clique indices covering every item, or
// nullopt when some item cannot be covered at all. Deterministic: the first
// optimum in ascending branch order wins.
std::optional<std::vector<int>> exact_min_cover(int num_items, int num_cliques,
                                                const std::vector<Bits>& item_covers,
                                                const std::vector<Bits>& clique_items) {
  if (num_items == 0) return std::vector<int>{};
  for (int i = 0; i < num_items; ++i)
    if (item_covers[static_cast<size_t>(i)].none()) return std::nullopt;

  int best = num_cliques + 1;
  std::vector<int> best_sel, sel;
  Bits covered(num_items);
  std::function<void()> dfs = [&]() {
    std::vector<int> uncovered;
    for (int i = 0; i < num_items; ++i)
      if (!covered.test(i)) uncovered.push_back(i);
    if (uncovered.empty()) {
      if (static_cast<int>(sel.size()) < best) {
        best = static_cast<int>(sel.size());
        best_sel = sel;
      }
      return;
    }
    // Lower bound: a greedy set of uncovered items no two of which share a
    // covering clique; each needs its own clique.
    std::vector<int> indep;
    for (int i : uncovered) {
      bool ok = true;
      for (int j : indep)
        if (item_covers[static_cast<size_t>(i)].intersects(item_covers[static_cast<size_t>(j)])) {
          ok = false;
          break;
        }
      if (ok) indep.push_back(i);
    }
    if (static_cast<int>(sel.size() + indep.size()) >= best) return;

    int pick = uncovered.front();
    for (int i : uncovered)
      if (item_covers[static_cast<size_t>(i)].count() <
          item_covers[static_cast<size_t>(pick)].count())
        pick = i;
    item_covers[static_cast<size_t>(pick)].for_each([&](int c) {
      const Bits saved = covered;
      sel.push_back(c);
      covered |= clique_items[static_cast<size_t>(c)];
      dfs();
      sel.pop_back();
      covered = saved;
    });
  };
  dfs();
  if (best > num_cliques) return std::nullopt;
  return best_sel;
}

struct CoverInstance {
  std::vector<std::vector<int>> cliques;          // maximal cliques, vertex lists
  std::optional<std::vector<int>> selection;      // indices into cliques
};

// Builds the cover instance: items are the given edges plus the given
// vertices, candidate sets are the maximal cliques of (n, adj).
CoverInstance solve_cover(int n, const std::vector<Bits>& adj,
                          const std::vector<std::pair<int, int>>& edge_items,
                          const std::vector<int>& vertex_items) {
  CoverInstance inst;
  inst.cliques = maximal_cliques(n, adj);
  const int nc = static_cast<int>(inst.cliques.size());
  const int ni = static_cast<int>(edge_items.size() + vertex_items.size());
  std::vector<Bits> in_clique(static_cast<size_t>(nc), Bits(n));
  for (int c = 0; c < nc; ++c)
    for (int v : inst.cliques[static_cast<size_t>(c)]) in_clique[static_cast<size_t>(c)].set(v);

  std::vector<Bits> item_covers(static_cast<size_t>(ni), Bits(nc));
  std::vector<Bits> clique_items(static_cast<size_t>(nc), Bits(ni));
  for (int i = 0; i < ni; ++i) {
    for (int c = 0; c < nc; ++c) {
      bool covers;
      if (i < static_cast<int>(edge_items.size())) {
        const auto& e = edge_items[static_cast<size_t>(i)];
        covers = in_clique[static_cast<size_t>(c)].test(e.first) &&
                 in_clique[static_cast<size_t>(c)].test(e.second);
      } else {
        covers = in_clique[static_cast<size_t>(c)].test(
            vertex_items[static_cast<size_t>(i - edge_items.size())]);
      }
      if (covers) {
        item_covers[static_cast<size_t>(i)].set(c);
        clique_items[static_cast<size_t>(c)].set(i);
      }
    }
  }
  inst.selection = exact_min_cover(ni, nc, item_covers, clique_items);
  return inst;
}

std::vector<std::vector<int>> selected_cliques(const CoverInstance& inst) {
  std::vector<std::vector<int>> out;
  for (int c : *inst.selection) out.push_back(inst.cliques[static_cast<size_t>(c)]);
  std::sort(out.begin(), out.end());
  return out;
}

void check_graph(const Graph& g) {
  if (g.n < 0) fail(ErrorCode::Argument, "graph size must be nonnegative");
  for (const auto& e : g.edges)
    if (e.first < 0 || e.first >= g.n || e.second < 0 || e.second >= g.n)
      fail(ErrorCode::Argument, "graph edge endpoint out of range");
  for (int v : g.loops)
    if (v < 0 || v >= g.n) fail(ErrorCode::Argument, "graph loop vertex out of range");
}

// Deduplicated undirected edges u < v, self-edges dropped.
std::vector<std::pair<int, int>> simple_edges(const Graph& g) {
  std::vector<std::pair<int, int>> es;
  for (const auto& e : g.edges) {
    if (e.first == e.second) continue;
    es.emplace_back(std::min(e.first, e.second), std::max(e.first, e.second));
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  return es;
}

}  // namespace

CliqueCover min_clique_edge_cover(const Graph& g) {
  check_graph(g);
  const std::vector<std::pair<int, int>> es = simple_edges(g);
  CliqueCover cover;
  if (es.empty()) return cover;
  std::vector<Bits> adj(static_cast<size_t>(g.n), Bits(g.n));
  for (const auto& e : es) {
    adj[static_cast<size_t>(e.first)].set(e.second);
    adj[static_cast<size_t>(e.second)].set(e.first);
  }
  CoverInstance inst = solve_cover(g.n, adj, es, {});
  if (!inst.selection)
    fail(ErrorCode::Internal, "edge cover infeasible on a simple graph");
  cover.cliques = selected_cliques(inst);
  cover.size = static_cast<int>(cover.cliques.size());
  return cover;
}

KernelDecision is_kernel(const Relation& r) {
  const int n = r.base_size();
  KernelDecision d;
  d.witness = Relation::empty(n);
  if (r != converse(r)) return d;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (r.test(x, y) && (!r.test(x, x) || !r.test(y, y))) return d;

  std::vector<int> loop_vertices;
  for (int x = 0; x < n; ++x)
    if (r.test(x, x)) loop_vertices.push_back(x);
  std::vector<std::pair<int, int>> edges;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (r.test(x, y)) edges.emplace_back(x, y);

  std::vector<Bits> adj(static_cast<size_t>(n), Bits(n));
  for (const auto& e : edges) {
    adj[static_cast<size_t>(e.first)].set(e.second);
    adj[static_cast<size_t>(e.second)].set(e.first);
  }
  // Restrict the clique graph to loop vertices (all edge endpoints are loop
  // vertices by local reflexivity; isolated loop vertices become singleton
  // cliques).
  std::vector<Bits> loop_adj(static_cast<size_t>(n), Bits(n));
  std::vector<char> has_loop(static_cast<size_t>(n), 0);
  for (int v : loop_vertices) has_loop[static_cast<size_t>(v)] = 1;
  for (int x = 0; x < n; ++x) {
    if (!has_loop[static_cast<size_t>(x)]) continue;
    adj[static_cast<size_t>(x)].for_each([&](int y) {
      if (has_loop[static_cast<size_t>(y)]) loop_adj[static_cast<size_t>(x)].set(y);
    });
  }
  // Non-loop vertices would appear as spurious singleton cliques of the
  // whole-base graph; enumerate over an induced graph instead by remapping.
  std::vector<int> fwd(static_cast<size_t>(n), -1);
  const int ln = static_cast<int>(loop_vertices.size());
  for (int i = 0; i < ln; ++i) fwd[static_cast<size_t>(loop_vertices[i])] = i;
  std::vector<Bits> ind(static_cast<size_t>(ln), Bits(ln));
  for (int i = 0; i < ln; ++i)
    loop_adj[static_cast<size_t>(loop_vertices[i])].for_each(
        [&](int y) { ind[static_cast<size_t>(i)].set(fwd[static_cast<size_t>(y)]); });
  std::vector<std::pair<int, int>> edge_items;
  for (const auto& e : edges)
    edge_items.emplace_back(fwd[static_cast<size_t>(e.first)], fwd[static_cast<size_t>(e.second)]);
  std::vector<int> vertex_items(static_cast<size_t>(ln));
  for (int i = 0; i < ln; ++i) vertex_items[static_cast<size_t>(i)] = i;

  CoverInstance inst = solve_cover(ln, ind, edge_items, vertex_items);
  if (!inst.selection) fail(ErrorCode::Internal, "cover infeasible on a reflexive instance");
  if (static_cast<int>(inst.selection->size()) > n) return d;

  std::vector<std::vector<int>> cover = selected_cliques(inst);
  d.yes = true;
  for (size_t t = 0; t < cover.size(); ++t)
    for (int i : cover[t]) d.witness.set(loop_vertices[static_cast<size_t>(i)], static_cast<int>(t));
  return d;
}

bool kernel_witness_check(const Relation& r, const Relation& s) {
  if (r.base_size() != s.base_size())
    fail(ErrorCode::Dimension, "relation and witness live over different bases");
  return kernel_left(s) == r;
}

KernelConditionReport lemma_condition_check(const Relation& r) {
  const int n = r.base_size();
  KernelConditionReport rep;
  rep.symmetric = (r == converse(r));
  rep.locally_reflexive = true;
  for (int x = 0; x < n && rep.locally_reflexive; ++x)
    for (int y = 0; y < n; ++y)
      if (r.test(x, y) && (!r.test(x, x) || !r.test(y, y))) {
        rep.locally_reflexive = false;
        break;
      }

  // Edge cover ignores loops: symmetrised off-diagonal pairs over the whole
  // base.
  std::vector<std::pair<int, int>> edges;
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y)
      if (r.test(x, y) || r.test(y, x)) edges.emplace_back(x, y);
  {
    std::vector<Bits> adj(static_cast<size_t>(n), Bits(n));
    for (const auto& e : edges) {
      adj[static_cast<size_t>(e.first)].set(e.second);
      adj[static_cast<size_t>(e.second)].set(e.first);
    }
    if (edges.empty()) {
      rep.edge_cover_size = 0;
    } else {
      CoverInstance inst = solve_cover(n, adj, edges, {});
      rep.edge_cover_size = inst.selection ? static_cast<int>(inst.selection->size()) : n + 1;
    }
  }

  // Domain cover: edges plus loop vertices, cliques restricted to mutually
  // related loop vertices.
  {
    std::vector<int> loop_vertices;
    for (int x = 0; x < n; ++x)
      if (r.test(x, x)) loop_vertices.push_back(x);
    std::vector<int> fwd(static_cast<size_t>(n), -1);
    const int ln = static_cast<int>(loop_vertices.size());
    for (int i = 0; i < ln; ++i) fwd[static_cast<size_t>(loop_vertices[i])] = i;
    bool feasible = true;
    std::vector<std::pair<int, int>> edge_items;
    for (const auto& e : edges) {
      if (fwd[static_cast<size_t>(e.first)] < 0 || fwd[static_cast<size_t>(e.second)] < 0 ||
          !r.test(e.first, e.second) || !r.test(e.second, e.first)) {
        feasible = false;
        break;
      }
      edge_items.emplace_back(fwd[static_cast<size_t>(e.first)],
                              fwd[static_cast<size_t>(e.second)]);
    }
    if (!feasible) {
      rep.domain_cover_size = n + 1;
    } else {
      std::vector<Bits> ind(static_cast<size_t>(ln), Bits(ln));
      for (const auto& e : edge_items) {
        ind[static_cast<size_t>(e.first)].set(e.second);
        ind[static_cast<size_t>(e.second)].set(e.first);
      }
      std::vector<int> vertex_items(static_cast<size_t>(ln));
      for (int i = 0; i < ln; ++i) vertex_items[static_cast<size_t>(i)] = i;
      CoverInstance inst = solve_cover(ln, ind, edge_items, vertex_items);
      rep.domain_cover_size = inst.selection ? static_cast<int>(inst.selection->size()) : n + 1;
    }
  }

  rep.stated_condition_met =
      rep.symmetric && rep.locally_reflexive && rep.edge_cover_size <= n;
  rep.is_kernel_result = is_kernel(r).yes;
  return rep;
}

Relation cec_reduce(const Graph& g, int k) {
  check_graph(g);
  if (!g.loops.empty()) fail(ErrorCode::Argument, "input graph must be loop-free");
  const std::vector<std::pair<int, int>> es = simple_edges(g);
  if (k < 1 || k > static_cast<int>(es.size())) fail(ErrorCode::Argument, "k out of range");
  const int n = g.n;

  int total;
  std::vector<std::pair<int, int>> new_edges;
  int first_new = n;
  if (k >= n) {
    const int t = k - n + 1;
    total = n + t;
    for (int u = 0; u < t; ++u)
      for (int v = u + 1; v < t; ++v) new_edges.emplace_back(first_new + u, first_new + v);
  } else {
    const int b = n - k + 2;
    total = n + 2 + b;
    for (int u = 0; u < 2; ++u)
      for (int v = 0; v < b; ++v) new_edges.emplace_back(first_new + u, first_new + 2 + v);
  }

  Relation r = Relation::empty(total);
  std::vector<char> touched(static_cast<size_t>(n), 0);
  for (const auto& e : es) {
    r.set(e.first, e.second);
    r.set(e.second, e.first);
    touched[static_cast<size_t>(e.first)] = 1;
    touched[static_cast<size_t>(e.second)] = 1;
  }
  for (int v = 0; v < n; ++v)
    if (touched[static_cast<size_t>(v)]) r.set(v, v);
  for (const auto& e : new_edges) {
    r.set(e.first, e.second);
    r.set(e.second, e.first);
  }
  for (int v = first_new; v < total; ++v) r.set(v, v);
  return r;
}

}  // namespace relwb
