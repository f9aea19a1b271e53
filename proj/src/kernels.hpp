// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
//
// The kernel decision problem: given a relation r, is there an s with
// K_L(s) = r? Decided exactly by searching for an assignment of cliques to
// base points; includes the clique-edge-cover machinery and the reduction
// from clique edge cover instances.
#ifndef RELWB_KERNELS_HPP
#define RELWB_KERNELS_HPP

#include <utility>
#include <vector>

#include "relation.hpp"

namespace relwb {

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> loops;
};

struct CliqueCover {
  int size = 0;
  std::vector<std::vector<int>> cliques;  // each sorted, list sorted lexicographically
};

// Minimum number of cliques covering every edge of g; loops are ignored.
// Exact branch-and-bound over maximal cliques.
CliqueCover min_clique_edge_cover(const Graph& g);

struct KernelDecision {
  bool yes = false;
  Relation witness = Relation::empty(1);  // some s with K_L(s) = r, when yes
};

// r = K_L(s) for some s iff r is symmetric, locally reflexive, and its edges
// plus its loop vertices admit a cover by at most |X| cliques; each cover
// clique then becomes one column of the witness.
KernelDecision is_kernel(const Relation& r);

// True exactly when K_L(s) = r.
bool kernel_witness_check(const Relation& r, const Relation& s);

struct KernelConditionReport {
  bool symmetric = false;
  bool locally_reflexive = false;
  int edge_cover_size = 0;        // cliques needed for the edges alone
  int domain_cover_size = 0;      // cliques needed for edges plus loop vertices;
                                  // |X|+1 when no such cover exists at all
  bool stated_condition_met = false;  // symmetric, locally reflexive, edge cover <= |X|
  bool is_kernel_result = false;
};

// Evaluates the classical sufficient-looking condition (edge cover only) next
// to the exact decision, so instances where they disagree are visible.
KernelConditionReport lemma_condition_check(const Relation& r);

// Reduction from "does g admit a clique edge cover of size <= k" to the
// kernel problem: appends a disjoint gadget and places loops on every
// non-isolated original vertex. Input must be loop-free; requires
// 1 <= k <= |E|.
Relation cec_reduce(const Graph& g, int k);

}  // namespace relwb

#endif  // RELWB_KERNELS_HPP
