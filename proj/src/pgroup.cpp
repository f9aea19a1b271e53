// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#include "pgroup.hpp"

#include <algorithm>
#include <set>

#include "error.hpp"

namespace relwb {

int SquarePartialGroup::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (elements[static_cast<size_t>(i)] == name) return i;
  return -1;
}

PGroupReport pgroup_validate(const SquarePartialGroup& p) {
  size_t m = p.elements.size();
  if (m == 0) fail(ErrorCode::Argument, "empty carrier");
  if (p.sqrt.size() != m || p.product.size() != m * m)
    fail(ErrorCode::Argument, "malformed square partial group tables");
  if (p.identity < 0 || static_cast<size_t>(p.identity) >= m)
    fail(ErrorCode::Argument, "identity index out of range");
  {
    std::vector<std::string> names = p.elements;
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
      fail(ErrorCode::Argument, "duplicate element name");
  }
  for (int32_t v : p.product)
    if (v < -1 || v >= static_cast<int32_t>(m))
      fail(ErrorCode::Argument, "product table value out of range");

  PGroupReport rep;
  auto issue = [&](const std::string& msg) {
    rep.ok = false;
    rep.issues.push_back(msg);
  };
  auto nm = [&](int i) { return "'" + p.elements[static_cast<size_t>(i)] + "'"; };
  int e = p.identity;
  int n = static_cast<int>(m);

  if (!p.sqrt[static_cast<size_t>(e)]) issue("identity is not in the square-root set");

  for (int a = 0; a < n; ++a) {
    if (p.prod(e, a) != a) issue("identity law fails: e*" + nm(a) + " != " + nm(a));
    if (p.prod(a, e) != a) issue("identity law fails: " + nm(a) + "*e != " + nm(a));
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      bool both_sqrt = p.sqrt[static_cast<size_t>(a)] && p.sqrt[static_cast<size_t>(b)];
      if (both_sqrt && !p.defined(a, b))
        issue("product undefined on square-root pair (" + nm(a) + "," + nm(b) + ")");
      if (!both_sqrt && a != e && b != e && p.defined(a, b))
        issue("product defined outside the square-root scheme at (" + nm(a) + "," + nm(b) + ")");
    }

  for (int a = 0; a < n; ++a) {
    if (!p.sqrt[static_cast<size_t>(a)]) continue;
    int count = 0;
    for (int b = 0; b < n; ++b)
      if (p.prod(a, b) == e && p.prod(b, a) == e) ++count;
    if (count == 0) issue("no inverse for " + nm(a));
    if (count > 1) issue("multiple inverses for " + nm(a));
  }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int ab = p.prod(a, b);
      if (ab < 0) continue;
      for (int c = 0; c < n; ++c) {
        int abc = p.prod(ab, c);
        if (abc < 0) continue;
        int bc = p.prod(b, c);
        if (bc < 0) continue;
        int abc2 = p.prod(a, bc);
        if (abc2 < 0) continue;
        if (abc != abc2)
          issue("associativity violation at (" + nm(a) + "," + nm(b) + "," + nm(c) + "): (" +
                nm(a) + "*" + nm(b) + ")*" + nm(c) + " = " + nm(abc) + " but " + nm(a) + "*(" +
                nm(b) + "*" + nm(c) + ") = " + nm(abc2));
      }
    }
  return rep;
}

int Group::inverse(int a) const {
  for (int b = 0; b < size(); ++b)
    if (prod(a, b) == identity && prod(b, a) == identity) return b;
  fail(ErrorCode::Internal, "group element has no inverse");
}

int Group::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (elements[static_cast<size_t>(i)] == name) return i;
  return -1;
}

void Group::validate() const {
  size_t m = elements.size();
  if (m == 0) fail(ErrorCode::Argument, "empty group");
  if (product.size() != m * m) fail(ErrorCode::Argument, "group table has wrong size");
  {
    std::vector<std::string> names = elements;
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
      fail(ErrorCode::Argument, "duplicate element name");
  }
  for (int32_t v : product)
    if (v < 0 || v >= static_cast<int32_t>(m))
      fail(ErrorCode::Argument, "group table value out of range");
  if (identity < 0 || static_cast<size_t>(identity) >= m)
    fail(ErrorCode::Argument, "identity index out of range");
  int n = static_cast<int>(m);
  for (int a = 0; a < n; ++a)
    if (prod(identity, a) != a || prod(a, identity) != a)
      fail(ErrorCode::Argument, "identity law fails in group table");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (prod(prod(a, b), c) != prod(a, prod(b, c)))
          fail(ErrorCode::Argument, "group table is not associative");
  for (int a = 0; a < n; ++a) {
    bool has = false;
    for (int b = 0; b < n && !has; ++b)
      if (prod(a, b) == identity && prod(b, a) == identity) has = true;
    if (!has) fail(ErrorCode::Argument, "group table lacks an inverse");
  }
}

Group make_cyclic(int n) {
  if (n < 1) fail(ErrorCode::Argument, "cyclic group order must be >= 1");
  Group g;
  for (int i = 0; i < n; ++i) g.elements.push_back(std::to_string(i));
  g.identity = 0;
  g.product.resize(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) g.product[static_cast<size_t>(a) * n + b] = (a + b) % n;
  return g;
}

Group make_symmetric3() {
  // Permutations of {0,1,2}; product p*q acts as first q, then p on the left:
  // (p*q)(x) = p(q(x)).
  const int perms[6][3] = {{0, 1, 2}, {1, 0, 2}, {2, 1, 0}, {0, 2, 1}, {1, 2, 0}, {2, 0, 1}};
  const char* names[6] = {"e", "(01)", "(02)", "(12)", "(012)", "(021)"};
  Group g;
  for (int i = 0; i < 6; ++i) g.elements.push_back(names[i]);
  g.identity = 0;
  g.product.resize(36);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      int res[3];
      for (int x = 0; x < 3; ++x) res[x] = perms[a][perms[b][x]];
      int idx = -1;
      for (int c = 0; c < 6; ++c)
        if (perms[c][0] == res[0] && perms[c][1] == res[1] && perms[c][2] == res[2]) idx = c;
      g.product[static_cast<size_t>(a) * 6 + b] = idx;
    }
  return g;
}

Group direct_product(const Group& a, const Group& b) {
  Group g;
  int na = a.size(), nb = b.size();
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      g.elements.push_back("(" + a.elements[static_cast<size_t>(i)] + "|" +
                           b.elements[static_cast<size_t>(j)] + ")");
  g.identity = a.identity * nb + b.identity;
  int n = na * nb;
  g.product.resize(static_cast<size_t>(n) * n);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < nb; ++l)
          g.product[static_cast<size_t>(i * nb + j) * n + (k * nb + l)] =
              a.prod(i, k) * nb + b.prod(j, l);
  return g;
}

namespace {

// Cayley-table completion state for one target order. Cells are filled in
// concentric layers (max coordinate ascending); under that order a fresh
// index may be introduced only as the least unused one, which prunes
// relabelings of the fresh elements without losing completions.
struct Completion {
  int m = 0;
  int npre = 0;  // indices below npre are the partial group's image
  std::vector<int> t;  // m*m, -1 unknown
  std::vector<int> order;  // unknown-cell visit order

  void build_order() {
    for (int k = 1; k < m; ++k) {
      for (int j = 1; j <= k; ++j)
        if (t[static_cast<size_t>(k) * m + j] < 0) order.push_back(k * m + j);
      for (int i = 1; i < k; ++i)
        if (t[static_cast<size_t>(i) * m + k] < 0) order.push_back(i * m + k);
    }
  }

  bool assoc_ok() const {
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        int ab = t[static_cast<size_t>(a) * m + b];
        if (ab < 0) continue;
        for (int c = 0; c < m; ++c) {
          int abc = t[static_cast<size_t>(ab) * m + c];
          if (abc < 0) continue;
          int bc = t[static_cast<size_t>(b) * m + c];
          if (bc < 0) continue;
          int abc2 = t[static_cast<size_t>(a) * m + bc];
          if (abc2 >= 0 && abc != abc2) return false;
        }
      }
    return true;
  }

  bool latin_ok(int i, int j, int v) const {
    for (int k = 0; k < m; ++k) {
      if (k != j && t[static_cast<size_t>(i) * m + k] == v) return false;
      if (k != i && t[static_cast<size_t>(k) * m + j] == v) return false;
    }
    return true;
  }

  bool dfs(size_t step, int max_used) {
    if (step == order.size()) return assoc_ok();
    int cell = order[step];
    int i = cell / m, j = cell % m;
    int vmax = std::min(m - 1, std::max({npre - 1, i, j, max_used}) + 1);
    for (int v = 0; v <= vmax; ++v) {
      if (!latin_ok(i, j, v)) continue;
      t[static_cast<size_t>(cell)] = v;
      if (assoc_ok() && dfs(step + 1, std::max(max_used, v))) return true;
      t[static_cast<size_t>(cell)] = -1;
    }
    return false;
  }
};

}  // namespace

EmbedResult embed_into_group(const SquarePartialGroup& p, int max_order) {
  if (max_order < 1) fail(ErrorCode::Argument, "max_order must be >= 1");
  PGroupReport v = pgroup_validate(p);
  if (!v.ok)
    fail(ErrorCode::Argument, "invalid square partial group: " + v.issues.front());
  int np = p.size();
  // Positions: identity first, then the remaining elements in carrier order.
  std::vector<int> ord;
  ord.push_back(p.identity);
  for (int i = 0; i < np; ++i)
    if (i != p.identity) ord.push_back(i);
  std::vector<int> pos(static_cast<size_t>(np));
  for (int k = 0; k < np; ++k) pos[static_cast<size_t>(ord[static_cast<size_t>(k)])] = k;

  for (int m = np; m <= max_order; ++m) {
    Completion c;
    c.m = m;
    c.npre = np;
    c.t.assign(static_cast<size_t>(m) * m, -1);
    bool consistent = true;
    auto put = [&](int i, int j, int val) {
      int& slot = c.t[static_cast<size_t>(i) * m + j];
      if (slot >= 0 && slot != val) consistent = false;
      slot = val;
    };
    for (int j = 0; j < m; ++j) put(0, j, j);
    for (int i = 0; i < m; ++i) put(i, 0, i);
    for (int a = 0; a < np && consistent; ++a)
      for (int b = 0; b < np && consistent; ++b) {
        int ab = p.prod(a, b);
        if (ab >= 0) put(pos[static_cast<size_t>(a)], pos[static_cast<size_t>(b)], pos[static_cast<size_t>(ab)]);
      }
    if (!consistent || !c.assoc_ok()) continue;
    // Latin check of the preassigned part.
    bool latin = true;
    for (int cell = 0; cell < m * m && latin; ++cell) {
      int val = c.t[static_cast<size_t>(cell)];
      if (val >= 0) {
        c.t[static_cast<size_t>(cell)] = -1;
        latin = c.latin_ok(cell / m, cell % m, val);
        c.t[static_cast<size_t>(cell)] = val;
      }
    }
    if (!latin) continue;
    c.build_order();
    if (!c.dfs(0, np - 1)) continue;

    Group g;
    g.identity = 0;
    std::set<std::string> used;
    for (int k = 0; k < m; ++k) {
      if (k < np) {
        g.elements.push_back(p.elements[static_cast<size_t>(ord[static_cast<size_t>(k)])]);
      } else {
        std::string name = "x" + std::to_string(k - np);
        while (used.count(name) || p.index_of(name) >= 0) name += "_";
        g.elements.push_back(name);
      }
      used.insert(g.elements.back());
    }
    g.product.assign(c.t.begin(), c.t.end());
    g.validate();
    EmbedResult res;
    res.found = true;
    res.group = std::move(g);
    res.mapping = pos;
    return res;
  }
  EmbedResult none;
  none.none_up_to = max_order;
  return none;
}

Homotopy composed_homotopy(const SquarePartialGroup& p,
                           std::shared_ptr<const FiniteStructure> target,
                           const std::vector<std::string>& image_names) {
  if (!target) fail(ErrorCode::Argument, "homotopy target missing");
  if (image_names.size() != p.elements.size())
    fail(ErrorCode::Argument, "image name list does not match the carrier");
  std::map<std::string, int> idx;
  for (int i = 0; i < target->size(); ++i) idx[target->carrier[static_cast<size_t>(i)]] = i;
  auto look = [&](const std::string& name) {
    auto it = idx.find(name);
    if (it == idx.end())
      fail(ErrorCode::Argument, "target has no element '" + name + "'");
    return it->second;
  };
  Homotopy h;
  h.pgroup = p;
  h.target = std::move(target);
  int n = p.size();
  h.alpha.assign(static_cast<size_t>(n), -1);
  h.beta.assign(static_cast<size_t>(n), -1);
  h.gamma.assign(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    const std::string& base = image_names[static_cast<size_t>(i)];
    if (p.sqrt[static_cast<size_t>(i)]) {
      h.alpha[static_cast<size_t>(i)] = look(base + "_01");
      h.beta[static_cast<size_t>(i)] = look(base + "_12");
    }
    h.gamma[static_cast<size_t>(i)] = look(base + "_02");
  }
  return h;
}

Homotopy canonical_homotopy(const SquarePartialGroup& p,
                            std::shared_ptr<const FiniteStructure> e0) {
  return composed_homotopy(p, std::move(e0), p.elements);
}

static void homotopy_identity(const Homotopy& h, HomotopyReport& rep) {
  const SquarePartialGroup& p = h.pgroup;
  rep.identity_holds = true;
  for (int a = 0; a < p.size(); ++a) {
    if (!p.sqrt[static_cast<size_t>(a)]) continue;
    for (int b = 0; b < p.size(); ++b) {
      if (!p.sqrt[static_cast<size_t>(b)]) continue;
      int ab = p.prod(a, b);
      if (ab < 0) continue;
      int lhs = h.target->op_value(OpSymbol(Op::Compose), h.alpha[static_cast<size_t>(a)],
                                   h.beta[static_cast<size_t>(b)]);
      if (lhs != h.gamma[static_cast<size_t>(ab)]) {
        rep.identity_holds = false;
        rep.issues.push_back("homotopy identity fails at ('" +
                             p.elements[static_cast<size_t>(a)] + "','" +
                             p.elements[static_cast<size_t>(b)] + "')");
      }
    }
  }
}

HomotopyReport check_homotopy(const Homotopy& h) {
  if (!h.target) fail(ErrorCode::Argument, "homotopy target missing");
  HomotopyReport rep;
  homotopy_identity(h, rep);
  rep.ok = rep.identity_holds;
  return rep;
}

HomotopyReport check_H_embedding(const Homotopy& h, const GreensClassification& greens) {
  if (!h.target) fail(ErrorCode::Argument, "homotopy target missing");
  if (greens.m != h.target->size())
    fail(ErrorCode::Argument, "classification does not match the homotopy target");
  HomotopyReport rep;
  homotopy_identity(h, rep);
  const SquarePartialGroup& p = h.pgroup;

  rep.gamma_injective = true;
  for (int i = 0; i < p.size() && rep.gamma_injective; ++i)
    for (int j = i + 1; j < p.size(); ++j)
      if (h.gamma[static_cast<size_t>(i)] == h.gamma[static_cast<size_t>(j)]) {
        rep.gamma_injective = false;
        rep.issues.push_back("gamma is not injective: '" + p.elements[static_cast<size_t>(i)] +
                             "' and '" + p.elements[static_cast<size_t>(j)] + "' collide");
        break;
      }

  auto one_class = [&](const std::vector<int>& map, bool sqrt_only, const char* label) {
    int cls = -1;
    for (int i = 0; i < p.size(); ++i) {
      if (sqrt_only && !p.sqrt[static_cast<size_t>(i)]) continue;
      int c = greens.H[static_cast<size_t>(map[static_cast<size_t>(i)])];
      if (cls < 0) cls = c;
      if (c != cls) {
        rep.issues.push_back(std::string(label) + " image is not inside a single H-class");
        return false;
      }
    }
    return true;
  };
  rep.alpha_one_class = one_class(h.alpha, true, "alpha");
  rep.beta_one_class = one_class(h.beta, true, "beta");
  rep.gamma_one_class = one_class(h.gamma, false, "gamma");
  rep.ok = rep.identity_holds && rep.gamma_injective && rep.alpha_one_class &&
           rep.beta_one_class && rep.gamma_one_class;
  return rep;
}

}  // namespace relwb
