// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <functional>
#include <random>
#include <vector>

#include "doctest.h"
#include "error.hpp"
#include "kernels.hpp"
#include "relation.hpp"

using namespace relwb;

namespace {

Graph make_graph(int n, std::vector<std::pair<int, int>> edges,
                 std::vector<int> loops = {}) {
  Graph g;
  g.n = n;
  g.edges = std::move(edges);
  g.loops = std::move(loops);
  return g;
}

bool is_clique(const Graph& g, const std::vector<int>& verts) {
  for (size_t i = 0; i < verts.size(); ++i)
    for (size_t j = i + 1; j < verts.size(); ++j) {
      bool adjacent = false;
      for (const auto& [u, v] : g.edges)
        if ((u == verts[i] && v == verts[j]) || (u == verts[j] && v == verts[i]))
          adjacent = true;
      if (!adjacent) return false;
    }
  return true;
}

// Exact minimum clique edge cover by brute force: every vertex subset that
// induces a clique is a candidate, covers are tried in increasing size.
int cec_oracle(const Graph& g) {
  std::vector<std::pair<int, int>> edges;
  for (const auto& [u, v] : g.edges) {
    if (u == v) continue;
    const int a = std::min(u, v), b = std::max(u, v);
    if (std::find(edges.begin(), edges.end(), std::make_pair(a, b)) == edges.end())
      edges.push_back({a, b});
  }
  if (edges.empty()) return 0;
  std::vector<std::vector<int>> cliques;
  std::vector<uint32_t> masks;
  for (uint32_t sub = 1; sub < (1u << g.n); ++sub) {
    std::vector<int> verts;
    for (int v = 0; v < g.n; ++v)
      if (sub & (1u << v)) verts.push_back(v);
    if (verts.size() >= 2 && is_clique(g, verts)) {
      uint32_t covered = 0;
      for (size_t e = 0; e < edges.size(); ++e)
        if ((sub & (1u << edges[e].first)) && (sub & (1u << edges[e].second)))
          covered |= 1u << e;
      cliques.push_back(verts);
      masks.push_back(covered);
    }
  }
  const uint32_t all = (1u << edges.size()) - 1;
  for (size_t k = 1; k <= edges.size(); ++k) {
    std::vector<size_t> pick(k, 0);
    std::function<bool(size_t, size_t, uint32_t)> go = [&](size_t depth, size_t from,
                                                           uint32_t got) {
      if (got == all) return true;
      if (depth == k) return false;
      for (size_t c = from; c < cliques.size(); ++c)
        if (go(depth + 1, c + 1, got | masks[c])) return true;
      return false;
    };
    if (go(0, 0, 0)) return static_cast<int>(k);
  }
  return static_cast<int>(edges.size());
}

// Is r the left kernel of any relation on the same base? Enumerates every
// candidate witness; only usable for tiny bases.
bool kernel_oracle(const Relation& r) {
  const int n = r.base_size();
  REQUIRE(n * n <= 16);
  for (uint64_t mask = 0; mask < (uint64_t{1} << (n * n)); ++mask)
    if (kernel_left(Relation::from_mask(n, mask)) == r) return true;
  return false;
}

}  // namespace

TEST_CASE("maximal cliques of small graphs") {
  const Graph triangle = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
  const CliqueCover tri = min_clique_edge_cover(triangle);
  CHECK(tri.size == 1);
  REQUIRE(tri.cliques.size() == 1);
  CHECK(tri.cliques[0] == std::vector<int>{0, 1, 2});

  const Graph c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(min_clique_edge_cover(c4).size == 4);

  const Graph k23 = make_graph(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}});
  CHECK(min_clique_edge_cover(k23).size == 6);

  const Graph empty = make_graph(4, {});
  CHECK(min_clique_edge_cover(empty).size == 0);

  // Loops and duplicate edges are ignored.
  const Graph messy = make_graph(3, {{0, 1}, {1, 0}, {0, 1}}, {0, 2});
  CHECK(min_clique_edge_cover(messy).size == 1);
}

TEST_CASE("clique edge cover agrees with brute force on random graphs") {
  std::mt19937 rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);  // up to 6 vertices
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng() % 2) edges.push_back({u, v});
    const Graph g = make_graph(n, edges);
    const CliqueCover cover = min_clique_edge_cover(g);
    CHECK(cover.size == cec_oracle(g));
    // The returned cover really covers every edge with cliques.
    for (const auto& [u, v] : edges) {
      bool covered = false;
      for (const auto& c : cover.cliques) {
        const bool has_u = std::find(c.begin(), c.end(), u) != c.end();
        const bool has_v = std::find(c.begin(), c.end(), v) != c.end();
        if (has_u && has_v) covered = true;
      }
      CHECK(covered);
    }
    for (const auto& c : cover.cliques) CHECK(is_clique(g, c));
  }
}

TEST_CASE("kernel decisions on canonical relations") {
  CHECK(is_kernel(Relation::identity(3)).yes);
  CHECK(is_kernel(Relation::identity(3)).witness == Relation::identity(3));
  CHECK(is_kernel(Relation::universal(4)).yes);
  CHECK(is_kernel(Relation::empty(3)).yes);
  CHECK_FALSE(is_kernel(Relation::from_pairs(3, {{0, 1}})).yes);          // not symmetric
  CHECK_FALSE(is_kernel(Relation::from_pairs(3, {{0, 1}, {1, 0}})).yes);  // no loops
  CHECK_FALSE(is_kernel(Relation::diversity(3)).yes);
}

TEST_CASE("kernel decision matches the exhaustive oracle on base 3") {
  for (uint64_t mask = 0; mask < 512; ++mask) {
    const Relation r = Relation::from_mask(3, mask);
    const KernelDecision d = is_kernel(r);
    CHECK(d.yes == kernel_oracle(r));
    if (d.yes) CHECK(kernel_left(d.witness) == r);
  }
}

TEST_CASE("kernel witnesses check out and mismatches are reported") {
  const Relation r = Relation::identity(2);
  CHECK(kernel_witness_check(r, Relation::identity(2)));
  CHECK_FALSE(kernel_witness_check(r, Relation::universal(2)));
  CHECK_THROWS_AS((void)kernel_witness_check(r, Relation::identity(3)), Error);
}

TEST_CASE("the covering condition can hold while the kernel decision says no") {
  // Complete bipartite K_{2,3} with loops everywhere plus an isolated loop:
  // six cliques cover the edges (budget is exactly n = 6), but columns must
  // also cover the six loop vertices, which needs seven cliques.
  Relation r(6);
  for (int u : {0, 1})
    for (int v : {2, 3, 4}) {
      r.set(u, v);
      r.set(v, u);
    }
  for (int v = 0; v < 6; ++v) r.set(v, v);
  const KernelConditionReport rep = lemma_condition_check(r);
  CHECK(rep.symmetric);
  CHECK(rep.locally_reflexive);
  CHECK(rep.edge_cover_size == 6);
  CHECK(rep.stated_condition_met);
  CHECK(rep.domain_cover_size == 7);
  CHECK_FALSE(rep.is_kernel_result);
  CHECK_FALSE(is_kernel(r).yes);
}

TEST_CASE("condition report on easy instances") {
  const KernelConditionReport id3 = lemma_condition_check(Relation::identity(3));
  CHECK(id3.symmetric);
  CHECK(id3.locally_reflexive);
  CHECK(id3.edge_cover_size == 0);
  CHECK(id3.domain_cover_size == 3);
  CHECK(id3.stated_condition_met);
  CHECK(id3.is_kernel_result);

  const KernelConditionReport asym = lemma_condition_check(Relation::from_pairs(2, {{0, 1}}));
  CHECK_FALSE(asym.symmetric);
  CHECK_FALSE(asym.stated_condition_met);
  CHECK_FALSE(asym.is_kernel_result);
}

TEST_CASE("reduction from clique edge cover to the kernel problem") {
  const Graph c4 = make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  SUBCASE("budget at least the vertex count appends a fresh clique") {
    const Relation r = cec_reduce(c4, 4);
    CHECK(r.base_size() == 5);
    CHECK(r.test(0, 1));
    CHECK(r.test(1, 0));
    CHECK(r.test(0, 0));  // loops at touched original vertices
    CHECK(r.test(4, 4));  // loop at the new vertex
    CHECK_FALSE(r.test(0, 4));
  }
  SUBCASE("small budgets go through the bipartite gadget") {
    const Relation r = cec_reduce(c4, 2);
    CHECK(r.base_size() == 2 * 4 - 2 + 4);
    CHECK(r.test(0, 1));
    CHECK(r.test(4, 4));
  }
  SUBCASE("bad inputs are rejected") {
    CHECK_THROWS_AS((void)cec_reduce(c4, 0), Error);
    CHECK_THROWS_AS((void)cec_reduce(c4, 5), Error);
    const Graph loopy = make_graph(2, {{0, 1}}, {0});
    CHECK_THROWS_AS((void)cec_reduce(loopy, 1), Error);
    const Graph bad = make_graph(2, {{0, 5}});
    CHECK_THROWS_AS((void)cec_reduce(bad, 1), Error);
  }
}

TEST_CASE("the reduction is sound on sample graphs") {
  const std::vector<Graph> samples = {
      make_graph(3, {{0, 1}, {1, 2}, {0, 2}}),
      make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}),
      make_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}),
      make_graph(5, {{0, 2}, {0, 3}, {0, 4}, {1, 2}, {1, 3}, {1, 4}}),
      make_graph(4, {{0, 1}}),
  };
  for (const Graph& g : samples) {
    const int cec = cec_oracle(g);
    const int m = static_cast<int>(g.edges.size());
    for (int k = 1; k <= m; ++k) {
      const bool expect = cec <= k;
      CHECK(is_kernel(cec_reduce(g, k)).yes == expect);
    }
  }
}
