// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "constructions.hpp"
#include "doctest.h"
#include "error.hpp"
#include "pgroup.hpp"
#include "relation.hpp"
#include "structure.hpp"

using namespace relwb;

namespace {

SquarePartialGroup trivial_pgroup(const std::string& name = "e") {
  SquarePartialGroup p;
  p.elements = {name};
  p.sqrt = {1};
  p.identity = 0;
  p.product = {0};
  return p;
}

SquarePartialGroup z2_pgroup() {
  SquarePartialGroup p;
  p.elements = {"e", "a"};
  p.sqrt = {1, 1};
  p.identity = 0;
  p.product = {0, 1, 1, 0};
  return p;
}

// Label alphabet per step, straight from the defining convention: step 0 is
// {e}, step 1 the square roots, step 2 everything.
std::vector<int> step_labels(const SquarePartialGroup& p, int step) {
  std::vector<int> out;
  if (step == 0) {
    out.push_back(p.identity);
  } else if (step == 1) {
    for (int i = 0; i < p.size(); ++i)
      if (p.sqrt[static_cast<size_t>(i)]) out.push_back(i);
  } else {
    for (int i = 0; i < p.size(); ++i) out.push_back(i);
  }
  return out;
}

// Independent count of valid formal-sum grids: choose a set of counted cells
// hitting each row and column at most once, multiply the label choices, and
// let every remaining cell (including the lower triangle) be Zero or One.
uint64_t count_grids_oracle(const SquarePartialGroup& p, bool barred_subsets) {
  struct Pos {
    int i, j;
  };
  const Pos upper[6] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  uint64_t total = 0;
  for (int pick = 0; pick < 64; ++pick) {
    int rows = 0, cols = 0;
    uint64_t ways = 1;
    bool ok = true;
    int counted = 0;
    for (int t = 0; t < 6; ++t) {
      if (!(pick & (1 << t))) continue;
      const Pos pos = upper[t];
      if ((rows & (1 << pos.i)) || (cols & (1 << pos.j))) {
        ok = false;
        break;
      }
      rows |= 1 << pos.i;
      cols |= 1 << pos.j;
      const size_t labels = step_labels(p, pos.j - pos.i).size();
      const uint64_t barred =
          barred_subsets ? (labels >= 63 ? 0 : (uint64_t{1} << labels) - 1) : labels;
      ways *= static_cast<uint64_t>(labels) + barred;
      ++counted;
    }
    if (!ok) continue;
    total += ways << (9 - counted);  // Zero/One for the other 6-counted+3 cells
  }
  return total;
}

CellVal plain(int label) {
  CellVal v;
  v.kind = CellVal::Kind::Plain;
  v.label = static_cast<uint16_t>(label);
  return v;
}

CellVal barred(uint16_t mask) {
  CellVal v;
  v.kind = CellVal::Kind::Barred;
  v.label = mask;
  return v;
}

// Semantic meaning of a grid over base 3n, given an embedding of P into G.
Relation paint_oracle(const Grid& g, const Group& gr, const std::vector<int>& phi) {
  const int n = gr.size();
  Relation out(3 * n);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const CellVal& c = g.at(i, j);
      if (c.kind == CellVal::Kind::Zero) continue;
      if (c.kind == CellVal::Kind::One) {
        for (int h = 0; h < n; ++h)
          for (int k = 0; k < n; ++k) out.set(i * n + h, j * n + k);
      } else if (c.kind == CellVal::Kind::Plain) {
        const int img = phi[c.label];
        for (int h = 0; h < n; ++h) out.set(i * n + h, j * n + gr.prod(h, img));
      } else {
        for (int h = 0; h < n; ++h) {
          for (int k = 0; k < n; ++k) out.set(i * n + h, j * n + k);
          for (int m = 0; m < static_cast<int>(phi.size()); ++m)
            if (c.label & (1u << m)) out.unset(i * n + h, j * n + gr.prod(h, phi[m]));
        }
      }
    }
  return out;
}

Relation block_diagonal(const Relation& r, int block) {
  Relation out(r.base_size());
  for (int p = 0; p < r.base_size(); ++p)
    for (int q = 0; q < r.base_size(); ++q)
      if (r.test(p, q) && p / block == q / block) out.set(p, q);
  return out;
}

}  // namespace

TEST_CASE("matrix-unit structure over the trivial partial group") {
  auto s = build_e0(trivial_pgroup());
  s->validate();
  CHECK(s->carrier == std::vector<std::string>{"0", "e_00", "e_01", "e_02", "e_11", "e_12",
                                               "e_22"});
  const OpSymbol comp(Op::Compose), meet_sym(Op::Meet);
  CHECK(s->op_value(comp, s->index_of("e_01"), s->index_of("e_12")) == s->index_of("e_02"));
  CHECK(s->op_value(comp, s->index_of("e_01"), s->index_of("e_01")) == 0);
  CHECK(s->op_value(meet_sym, s->index_of("e_01"), s->index_of("e_01")) ==
        s->index_of("e_01"));
  CHECK(s->op_value(meet_sym, s->index_of("e_01"), s->index_of("e_02")) == 0);
  CHECK(s->op_value(OpSymbol(Op::Dom), s->index_of("e_12")) == s->index_of("e_11"));
  CHECK(s->op_value(OpSymbol(Op::KernelRight), s->index_of("e_12")) == s->index_of("e_22"));
}

TEST_CASE("matrix-unit structure labels positions by sqrt powers") {
  auto s = build_e0(z2_pgroup());
  CHECK(s->size() == 10);
  CHECK(s->index_of("a_01") >= 0);
  CHECK(s->index_of("a_02") >= 0);
  CHECK(s->index_of("a_00") == -1);  // diagonal carries only the identity label
  const OpSymbol comp(Op::Compose);
  CHECK(s->op_value(comp, s->index_of("a_01"), s->index_of("a_12")) == s->index_of("e_02"));
  CHECK(s->op_value(comp, s->index_of("e_01"), s->index_of("a_12")) == s->index_of("a_02"));
}

TEST_CASE("matrix-unit structure rejects oversized partial groups") {
  SquarePartialGroup big;
  const int m = 33;
  big.identity = 0;
  big.sqrt.assign(m, 0);
  big.sqrt[0] = 1;
  big.product.assign(static_cast<size_t>(m) * m, -1);
  for (int i = 0; i < m; ++i) {
    big.elements.push_back("g" + std::to_string(i));
    big.product[static_cast<size_t>(i)] = i;        // e * g_i
    big.product[static_cast<size_t>(i) * m] = i;    // g_i * e
  }
  CHECK(pgroup_validate(big).ok);
  CHECK_THROWS_AS((void)build_e0(big), Error);
}

TEST_CASE("formal-sum carrier sizes match the independent count") {
  struct Case {
    SquarePartialGroup p;
    EFamily::Variant variant;
    uint64_t frozen;
  };
  const Case cases[] = {
      {trivial_pgroup(), EFamily::Variant::E1, 7680},
      {trivial_pgroup(), EFamily::Variant::E2, 7680},
      {z2_pgroup(), EFamily::Variant::E1, 12288},
      {z2_pgroup(), EFamily::Variant::E2, 14976},
  };
  for (const Case& c : cases) {
    const EFamily fam(c.p, c.variant);
    const uint64_t expect =
        count_grids_oracle(c.p, c.variant == EFamily::Variant::E2);
    CHECK(static_cast<uint64_t>(fam.size()) == expect);
    CHECK(expect == c.frozen);
  }
}

TEST_CASE("formal-sum grids are indexed consistently") {
  const EFamily fam(z2_pgroup(), EFamily::Variant::E1);
  CHECK(fam.index_of(fam.zero_grid()) == 0);
  CHECK(fam.name_of(0) == "0");
  for (int idx : {0, 1, 57, 4000, fam.size() - 1})
    CHECK(fam.index_of(fam.grid(idx)) == idx);
  Grid invalid;
  invalid.at(0, 0) = plain(1);  // label a is not allowed on the diagonal
  CHECK(fam.index_of(invalid) == -1);
  CHECK(fam.index_of(fam.id_grid()) >= 0);
  CHECK(fam.index_of(fam.one_grid()) >= 0);
  CHECK(fam.index_of(fam.diversity_grid()) >= 0);
}

TEST_CASE("formal-sum structure exposes tables and fallbacks") {
  const EBuild b = build_e1(trivial_pgroup());
  CHECK(b.structure->size() == 7680);
  CHECK(b.structure->has_op_table(OpSymbol(Op::Dom)));
  CHECK_FALSE(b.structure->has_op_table(OpSymbol(Op::Compose)));
  CHECK(b.structure->op_value(OpSymbol(Op::Zero)) == 0);
  // Fallback composition and order work through op_value/rel_value.
  const int id_idx = b.family->index_of(b.family->id_grid());
  CHECK(b.structure->op_value(OpSymbol(Op::Compose), id_idx, id_idx) == id_idx);
  CHECK(b.structure->rel_value(RelSym::Leq, 0, id_idx));
  CHECK_FALSE(b.structure->rel_value(RelSym::Leq, id_idx, 0));

  const EBuild b2 = build_e2(z2_pgroup());
  CHECK(b2.structure->size() == 14976);
  CHECK(b2.structure->has_op_table(OpSymbol(Op::Antidom)));
  CHECK(b2.structure->signature.rels.empty());
}

TEST_CASE("formal-sum name guards") {
  CHECK_THROWS_AS((void)build_e1(trivial_pgroup("1")), Error);
  CHECK_THROWS_AS((void)build_e1(trivial_pgroup("x+y")), Error);
  SquarePartialGroup nine;
  nine.identity = 0;
  for (int i = 0; i < 9; ++i) nine.elements.push_back("g" + std::to_string(i));
  nine.sqrt.assign(9, 0);
  nine.sqrt[0] = 1;
  nine.product.assign(81, -1);
  for (int i = 0; i < 9; ++i) {
    nine.product[static_cast<size_t>(i)] = i;
    nine.product[static_cast<size_t>(i) * 9] = i;
  }
  CHECK_THROWS_AS((void)build_e1(nine), Error);  // carrier would explode
}

TEST_CASE("formal-sum grid operations match their painted meaning") {
  // P = Z2 embedded in Z3 x Z2 as the second factor; the complement of the
  // image generates the whole group, which makes every rule below exact.
  const SquarePartialGroup p = z2_pgroup();
  const Group g = direct_product(make_cyclic(3), make_cyclic(2));
  const std::vector<int> phi = {0, 1};

  for (EFamily::Variant variant : {EFamily::Variant::E1, EFamily::Variant::E2}) {
    const EFamily fam(p, variant);
    std::mt19937 rng(variant == EFamily::Variant::E1 ? 101 : 202);
    auto pick = [&] { return static_cast<int>(rng() % static_cast<uint32_t>(fam.size())); };
    for (int trial = 0; trial < 150; ++trial) {
      const Grid& x = fam.grid(pick());
      const Grid& y = fam.grid(pick());
      const Relation px = paint_oracle(x, g, phi);
      const Relation py = paint_oracle(y, g, phi);

      const Grid comp = fam.compose(x, y);
      CHECK(fam.index_of(comp) >= 0);
      CHECK(paint_oracle(comp, g, phi) == compose(px, py));

      const Grid oj = fam.orth_join(x, y);
      CHECK(fam.index_of(oj) >= 0);
      CHECK(paint_oracle(oj, g, phi) == orthogonal_join(px, py));

      CHECK(paint_oracle(fam.dom_grid(x), g, phi) == dom(px));
      CHECK(paint_oracle(fam.ran_grid(x), g, phi) == ran(px));
      CHECK(paint_oracle(fam.antidom_grid(x), g, phi) == antidom(px));
      CHECK(paint_oracle(fam.antiran_grid(x), g, phi) == antiran(px));
      // The kernels are per-term rules: each block row (column) collapses to
      // its diagonal cell, so cross-row intersections in off-diagonal blocks
      // are dropped. On the diagonal blocks they agree with the painting.
      CHECK(paint_oracle(fam.kernel_left_grid(x), g, phi) ==
            block_diagonal(kernel_left(px), g.size()));
      CHECK(paint_oracle(fam.kernel_right_grid(x), g, phi) ==
            block_diagonal(kernel_right(px), g.size()));

      if (variant == EFamily::Variant::E1) {
        const Grid neg = fam.complement(x);
        CHECK(fam.index_of(neg) >= 0);
        CHECK(paint_oracle(neg, g, phi) == complement(px));
        CHECK(fam.leq(x, x));
        if (fam.leq(x, y)) CHECK(px.subset_of(py));
      }
    }
  }
}

TEST_CASE("formal-sum constants paint to their concrete counterparts") {
  const EFamily fam(z2_pgroup(), EFamily::Variant::E1);
  const Group g = direct_product(make_cyclic(3), make_cyclic(2));
  const std::vector<int> phi = {0, 1};
  CHECK(paint_oracle(fam.zero_grid(), g, phi) == Relation::empty(18));
  CHECK(paint_oracle(fam.one_grid(), g, phi) == Relation::universal(18));
  CHECK(paint_oracle(fam.id_grid(), g, phi) == Relation::identity(18));
  CHECK(paint_oracle(fam.diversity_grid(), g, phi) == Relation::diversity(18));
}

TEST_CASE("worked formal-sum example collapses to a single matrix unit") {
  const EFamily fam(z2_pgroup(), EFamily::Variant::E1);
  Grid x;
  x.at(0, 1) = barred(1u << 1);  // everything but a at (0,1)
  x.at(2, 2) = plain(0);
  REQUIRE(fam.index_of(x) >= 0);
  Grid y;
  y.at(1, 1) = barred(1u << 0);
  y.at(2, 2) = plain(0);
  REQUIRE(fam.index_of(y) >= 0);
  const Grid lhs = fam.compose(fam.dom_grid(x), fam.kernel_left_grid(y));
  Grid expect;
  expect.at(2, 2) = plain(0);
  CHECK(lhs == expect);
}

TEST_CASE("strict variant-2 composition zeroes the compat clauses") {
  const EFamily strict(z2_pgroup(), EFamily::Variant::E2, true);
  const EFamily lax(z2_pgroup(), EFamily::Variant::E2, false);
  CHECK(strict.strict_compat());
  Grid x;
  x.at(0, 1) = plain(1);
  Grid y;
  y.at(1, 2) = barred(1u << 0);
  const Grid sz = strict.compose(x, y);
  CHECK(sz == strict.zero_grid());
  const Grid lz = lax.compose(x, y);
  Grid expect;
  expect.at(0, 2) = barred(1u << 1);  // a * [all but e] = all but a
  CHECK(lz == expect);
}

TEST_CASE("group-labelled matrix units") {
  const Group z3 = make_cyclic(3);
  auto b3 = build_b3(z3);
  b3->validate();
  CHECK(b3->size() == 28);
  const OpSymbol comp(Op::Compose), cv(Op::Converse);
  CHECK(b3->op_value(comp, b3->index_of("1_01"), b3->index_of("1_12")) ==
        b3->index_of("2_02"));
  CHECK(b3->op_value(comp, b3->index_of("1_01"), b3->index_of("1_02")) == 0);
  CHECK(b3->op_value(cv, b3->index_of("1_01")) == b3->index_of("2_10"));
  CHECK(b3->op_value(OpSymbol(Op::Dom), b3->index_of("1_02")) == b3->index_of("0_00"));
  CHECK(b3->op_value(OpSymbol(Op::KernelLeft), b3->index_of("1_02")) ==
        b3->index_of("0_00"));

  Group big = make_cyclic(65);
  CHECK_THROWS_AS((void)build_b3(big), Error);
}

TEST_CASE("standard representation of the matrix units verifies") {
  for (const Group& g : {make_cyclic(3), make_cyclic(4)}) {
    const RepresentationCandidate cand = build_theta(g);
    CHECK(cand.base == 3 * g.size());
    CHECK(verify_representation(cand).ok);
  }
}

TEST_CASE("formal-sum representation from a group embedding") {
  SUBCASE("trivial partial group inside Z3") {
    const ThetaPlusResult res =
        build_theta_plus(trivial_pgroup(), make_cyclic(3), {0});
    CHECK_FALSE(res.replaced);
    CHECK(res.candidate.base == 9);
    CHECK(res.candidate.structure->size() == 7680);
    CHECK(res.candidate.structure->signature.ops.size() == 2);
    CHECK(verify_representation(res.candidate).ok);
  }
  SUBCASE("identity embedding of Z2 forces the replacement group") {
    const ThetaPlusResult res = build_theta_plus(z2_pgroup(), make_cyclic(2), {0, 1});
    CHECK(res.replaced);
    CHECK(res.group.size() == 6);
    CHECK(res.candidate.base == 18);
    CHECK(res.embedding == std::vector<int>{0, 1});
    res.group.validate();
  }
  SUBCASE("bad embeddings are rejected") {
    CHECK_THROWS_AS((void)build_theta_plus(z2_pgroup(), make_cyclic(3), {0, 1}), Error);
    CHECK_THROWS_AS((void)build_theta_plus(z2_pgroup(), make_cyclic(2), {1, 0}), Error);
    CHECK_THROWS_AS((void)build_theta_plus(z2_pgroup(), make_cyclic(2), {0}), Error);
    CHECK_THROWS_AS((void)build_theta_plus(z2_pgroup(), make_cyclic(4), {0, 0}), Error);
  }
}

TEST_CASE("theta-plus assignment is injective and paints grids faithfully") {
  const ThetaPlusResult res = build_theta_plus(z2_pgroup(), make_cyclic(2), {0, 1});
  const EFamily fam(z2_pgroup(), EFamily::Variant::E1);
  REQUIRE(res.candidate.assignment.size() == static_cast<size_t>(fam.size()));
  std::mt19937 rng(33);
  for (int trial = 0; trial < 200; ++trial) {
    const int idx = static_cast<int>(rng() % static_cast<uint32_t>(fam.size()));
    CHECK(res.candidate.assignment[static_cast<size_t>(idx)] ==
          paint_oracle(fam.grid(idx), res.group, res.embedding));
  }
  std::vector<Relation> sample;
  for (int idx = 0; idx < 500; ++idx)
    sample.push_back(res.candidate.assignment[static_cast<size_t>(idx)]);
  for (size_t i = 0; i < sample.size(); ++i)
    for (size_t j = i + 1; j < sample.size(); ++j) CHECK(sample[i] != sample[j]);
}
