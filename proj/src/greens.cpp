// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#include "greens.hpp"

#include "error.hpp"

namespace relwb {

GreensClassification greens_classify(const FiniteStructure& s) {
  OpSymbol comp(Op::Compose);
  if (!s.signature.has_op(comp))
    fail(ErrorCode::Unsupported, "classification needs a ';' operation");
  int m = s.size();
  std::vector<int32_t> t;
  auto it = s.op_tables.find(op_token(comp));
  if (it != s.op_tables.end()) {
    t = it->second;
  } else {
    if (m > 4096)
      fail(ErrorCode::Unsupported, "carrier too large to classify without a ';' table");
    t.resize(static_cast<size_t>(m) * static_cast<size_t>(m));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b)
        t[static_cast<size_t>(a) * m + b] = s.op_value(comp, a, b);
  }

  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      int ab = t[static_cast<size_t>(a) * m + b];
      const int32_t* row_ab = &t[static_cast<size_t>(ab) * m];
      const int32_t* row_b = &t[static_cast<size_t>(b) * m];
      for (int c = 0; c < m; ++c)
        if (row_ab[c] != t[static_cast<size_t>(a) * m + row_b[c]])
          fail(ErrorCode::Precondition,
               "table is not associative at ('" + s.name(a) + "','" + s.name(b) + "','" +
                   s.name(c) + "')");
    }

  GreensClassification g;
  g.m = m;
  g.leq_L.assign(static_cast<size_t>(m) * m, 0);
  g.leq_R.assign(static_cast<size_t>(m) * m, 0);
  for (int b = 0; b < m; ++b) {
    g.leq_L[static_cast<size_t>(b) * m + b] = 1;
    g.leq_R[static_cast<size_t>(b) * m + b] = 1;
    for (int x = 0; x < m; ++x) {
      g.leq_L[static_cast<size_t>(t[static_cast<size_t>(x) * m + b]) * m + b] = 1;
      g.leq_R[static_cast<size_t>(t[static_cast<size_t>(b) * m + x]) * m + b] = 1;
    }
  }

  g.L.assign(static_cast<size_t>(m), -1);
  g.R.assign(static_cast<size_t>(m), -1);
  g.H.assign(static_cast<size_t>(m), -1);
  auto classify = [m](const std::vector<uint8_t>& leq, std::vector<int>& cls) {
    int next = 0;
    for (int a = 0; a < m; ++a) {
      if (cls[static_cast<size_t>(a)] >= 0) continue;
      int id = next++;
      for (int b = a; b < m; ++b)
        if (cls[static_cast<size_t>(b)] < 0 && leq[static_cast<size_t>(a) * m + b] &&
            leq[static_cast<size_t>(b) * m + a])
          cls[static_cast<size_t>(b)] = id;
    }
    return next;
  };
  g.num_L = classify(g.leq_L, g.L);
  g.num_R = classify(g.leq_R, g.R);
  {
    int next = 0;
    for (int a = 0; a < m; ++a) {
      if (g.H[static_cast<size_t>(a)] >= 0) continue;
      int id = next++;
      for (int b = a; b < m; ++b)
        if (g.H[static_cast<size_t>(b)] < 0 && g.L[static_cast<size_t>(a)] == g.L[static_cast<size_t>(b)] &&
            g.R[static_cast<size_t>(a)] == g.R[static_cast<size_t>(b)])
          g.H[static_cast<size_t>(b)] = id;
    }
    g.num_H = next;
  }
  return g;
}

FiniteStructure rel_semigroup_structure(int n) {
  if (n < 1 || n > 3) fail(ErrorCode::Argument, "base size must be between 1 and 3");
  int bits = n * n;
  int m = 1 << bits;
  FiniteStructure s;
  s.carrier.reserve(static_cast<size_t>(m));
  for (int mask = 0; mask < m; ++mask) s.carrier.push_back("r" + std::to_string(mask));
  s.signature.ops.push_back(OpSymbol(Op::Compose));
  std::vector<Relation> rels;
  rels.reserve(static_cast<size_t>(m));
  for (int mask = 0; mask < m; ++mask)
    rels.push_back(Relation::from_mask(n, static_cast<uint64_t>(mask)));
  std::vector<int32_t> table(static_cast<size_t>(m) * static_cast<size_t>(m));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      table[static_cast<size_t>(a) * m + b] =
          static_cast<int32_t>(compose(rels[static_cast<size_t>(a)], rels[static_cast<size_t>(b)]).to_mask());
  s.op_tables[op_token(OpSymbol(Op::Compose))] = std::move(table);
  return s;
}

}  // namespace relwb
