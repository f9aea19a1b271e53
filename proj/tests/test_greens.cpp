// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#include <memory>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "doctest.h"
#include "error.hpp"
#include "greens.hpp"
#include "pgroup.hpp"
#include "relation.hpp"
#include "structure.hpp"

using namespace relwb;

namespace {

FiniteStructure table_structure(std::vector<std::string> names, std::vector<int32_t> table) {
  FiniteStructure s;
  s.carrier = std::move(names);
  s.signature.ops = {Op::Compose};
  s.op_tables[";"] = std::move(table);
  s.validate();
  return s;
}

}  // namespace

TEST_CASE("left and right zero semigroups split in opposite ways") {
  // x;y = x: everything is one L-class, R-classes are singletons.
  const FiniteStructure lz = table_structure({"a", "b"}, {0, 0, 1, 1});
  const GreensClassification cl = greens_classify(lz);
  CHECK(cl.num_L == 1);
  CHECK(cl.num_R == 2);
  CHECK(cl.num_H == 2);
  CHECK(cl.L == std::vector<int>{0, 0});
  CHECK(cl.R == std::vector<int>{0, 1});

  // x;y = y: the mirror image.
  const FiniteStructure rz = table_structure({"a", "b"}, {0, 1, 0, 1});
  const GreensClassification cr = greens_classify(rz);
  CHECK(cr.num_L == 2);
  CHECK(cr.num_R == 1);
  CHECK(cr.num_H == 2);
}

TEST_CASE("groups form a single H-class") {
  const Group z3 = make_cyclic(3);
  FiniteStructure s;
  s.carrier = z3.elements;
  s.signature.ops = {Op::Compose};
  s.op_tables[";"].assign(z3.product.begin(), z3.product.end());
  const GreensClassification cl = greens_classify(s);
  CHECK(cl.num_L == 1);
  CHECK(cl.num_R == 1);
  CHECK(cl.num_H == 1);
}

TEST_CASE("class ids follow first appearance") {
  // Row-constant table: x;y = f(x) with f(a)=a, f(b)=b, f(c)=a.
  const FiniteStructure s =
      table_structure({"a", "b", "c"}, {0, 0, 0, 1, 1, 1, 0, 0, 0});
  const GreensClassification cl = greens_classify(s);
  // a and b reach each other from the left (w;y = f(w)); c is reached by
  // nothing except itself.
  CHECK(cl.L == std::vector<int>{0, 0, 1});
  CHECK(cl.num_L == 2);
  // y;w = f(y) pins the R-order: a < c one-sidedly, so all three split.
  CHECK(cl.R == std::vector<int>{0, 1, 2});
  CHECK(cl.num_R == 3);
  CHECK(cl.num_H == 3);
}

TEST_CASE("non-associative tables are rejected with the offending triple") {
  FiniteStructure s;
  s.carrier = {"a", "b"};
  s.signature.ops = {Op::Compose};
  s.op_tables[";"] = {1, 0, 0, 0};  // (a;a);a = b;a = a, a;(a;a) = a;b = 0? -> check
  s.validate();
  bool threw = false;
  try {
    (void)greens_classify(s);
  } catch (const Error& e) {
    threw = true;
    CHECK(e.code() == ErrorCode::Precondition);
    CHECK(std::string(e.what()).find("associative") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("matrix-unit semigroup over a group has block classes") {
  const Group z3 = make_cyclic(3);
  auto b3 = build_b3(z3);
  const GreensClassification cl = greens_classify(*b3);
  // 28 elements: zero alone, then L by column, R by row, H the nine blocks.
  CHECK(cl.m == 28);
  CHECK(cl.num_L == 4);
  CHECK(cl.num_R == 4);
  CHECK(cl.num_H == 10);
  std::vector<int> h_sizes(static_cast<size_t>(cl.num_H), 0);
  for (int i = 0; i < cl.m; ++i) ++h_sizes[static_cast<size_t>(cl.H[static_cast<size_t>(i)])];
  CHECK(h_sizes[static_cast<size_t>(cl.H[0])] == 1);  // the zero element
  int blocks_of_three = 0;
  for (int size : h_sizes)
    if (size == 3) ++blocks_of_three;
  CHECK(blocks_of_three == 9);
  // g_{i,j} and h_{i,j} share an H-class; different positions never do.
  CHECK(cl.H[b3->index_of("0_01")] == cl.H[b3->index_of("2_01")]);
  CHECK(cl.H[b3->index_of("0_01")] != cl.H[b3->index_of("0_10")]);
  CHECK(cl.H[b3->index_of("0_01")] != cl.H[b3->index_of("0_02")]);
}

TEST_CASE("matrix-unit structure over a partial group separates labels by H-class") {
  SquarePartialGroup p;
  p.elements = {"e", "a"};
  p.sqrt = {1, 1};
  p.identity = 0;
  p.product = {0, 1, 1, 0};
  auto e0 = build_e0(p);
  const GreensClassification cl = greens_classify(*e0);
  const int ae = cl.H[e0->index_of("e_01")];
  const int aa = cl.H[e0->index_of("a_01")];
  CHECK(ae != aa);
}

TEST_CASE("relation semigroup tables and Green's relations on injective partial maps") {
  const FiniteStructure s2 = rel_semigroup_structure(2);
  CHECK(s2.size() == 16);
  CHECK(s2.carrier[0] == "r0");
  // The table is semantic composition of base-2 relations by mask.
  for (uint64_t a = 0; a < 16; ++a)
    for (uint64_t b = 0; b < 16; ++b) {
      const Relation ra = Relation::from_mask(2, a), rb = Relation::from_mask(2, b);
      CHECK(s2.op_value(OpSymbol(Op::Compose), static_cast<int>(a), static_cast<int>(b)) ==
            static_cast<int>(compose(ra, rb).to_mask()));
    }
  const GreensClassification cl = greens_classify(s2);
  for (uint64_t a = 0; a < 16; ++a) {
    const Relation ra = Relation::from_mask(2, a);
    if (!is_injective_pmap(ra)) continue;
    for (uint64_t b = 0; b < 16; ++b) {
      const Relation rb = Relation::from_mask(2, b);
      if (!is_injective_pmap(rb)) continue;
      const bool same_dom = dom(ra) == dom(rb);
      const bool same_ran = ran(ra) == ran(rb);
      CHECK((cl.R[a] == cl.R[b]) == same_dom);
      CHECK((cl.L[a] == cl.L[b]) == same_ran);
    }
  }
  CHECK_THROWS_AS((void)rel_semigroup_structure(0), Error);
  CHECK_THROWS_AS((void)rel_semigroup_structure(4), Error);
}
