// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#include "structure.hpp"

#include <algorithm>
#include <bit>
#include <thread>
#include <unordered_map>

#include "error.hpp"

namespace relwb {

const std::string& FiniteStructure::name(int i) const {
  if (i < 0 || i >= size()) fail(ErrorCode::Internal, "element index out of range");
  return carrier[static_cast<size_t>(i)];
}

int FiniteStructure::index_of(const std::string& element_name) const {
  for (int i = 0; i < size(); ++i)
    if (carrier[static_cast<size_t>(i)] == element_name) return i;
  return -1;
}

bool FiniteStructure::has_op_table(const OpSymbol& sym) const {
  return op_tables.count(op_token(sym)) != 0;
}

bool FiniteStructure::has_rel_table(RelSym sym) const {
  return rel_tables.count(rel_token(sym)) != 0;
}

int FiniteStructure::op_value(const OpSymbol& sym, int a, int b) const {
  if (!signature.has_op(sym))
    fail(ErrorCode::Unsupported, "signature lacks operation '" + op_token(sym) + "'");
  int ar = arity(sym.op);
  auto it = op_tables.find(op_token(sym));
  if (it != op_tables.end()) {
    const auto& t = it->second;
    size_t idx = 0;
    if (ar == 1)
      idx = static_cast<size_t>(a);
    else if (ar == 2)
      idx = static_cast<size_t>(a) * static_cast<size_t>(size()) + static_cast<size_t>(b);
    if (idx >= t.size()) fail(ErrorCode::Internal, "table index out of range");
    return t[idx];
  }
  if (op_fallback) return op_fallback(sym, a, b);
  fail(ErrorCode::Argument, "missing table for operation '" + op_token(sym) + "'");
}

bool FiniteStructure::rel_value(RelSym sym, int a, int b) const {
  if (!signature.has_rel(sym))
    fail(ErrorCode::Unsupported, "signature lacks relation symbol '" + rel_token(sym) + "'");
  auto it = rel_tables.find(rel_token(sym));
  if (it != rel_tables.end()) {
    const auto& t = it->second;
    size_t idx = (sym == RelSym::Inj)
                     ? static_cast<size_t>(a)
                     : static_cast<size_t>(a) * static_cast<size_t>(size()) +
                           static_cast<size_t>(b);
    if (idx >= t.size()) fail(ErrorCode::Internal, "relation table index out of range");
    return t[idx] != 0;
  }
  if (rel_fallback) return rel_fallback(sym, a, b);
  fail(ErrorCode::Argument, "missing table for relation symbol '" + rel_token(sym) + "'");
}

FiniteStructure FiniteStructure::reduct(const SignatureSpec& sub) const {
  for (const OpSymbol& sym : sub.ops)
    if (!signature.has_op(sym))
      fail(ErrorCode::Argument, "reduct symbol '" + op_token(sym) + "' not in signature");
  for (RelSym r : sub.rels)
    if (!signature.has_rel(r))
      fail(ErrorCode::Argument, "reduct symbol '" + rel_token(r) + "' not in signature");
  FiniteStructure out;
  out.carrier = carrier;
  out.signature = sub;
  for (const OpSymbol& sym : sub.ops) {
    auto it = op_tables.find(op_token(sym));
    if (it != op_tables.end()) out.op_tables[it->first] = it->second;
  }
  for (RelSym r : sub.rels) {
    auto it = rel_tables.find(rel_token(r));
    if (it != rel_tables.end()) out.rel_tables[it->first] = it->second;
  }
  out.op_fallback = op_fallback;
  out.rel_fallback = rel_fallback;
  return out;
}

void FiniteStructure::validate() const {
  if (carrier.empty()) fail(ErrorCode::Argument, "empty carrier");
  {
    std::vector<std::string> names = carrier;
    std::sort(names.begin(), names.end());
    if (std::adjacent_find(names.begin(), names.end()) != names.end())
      fail(ErrorCode::Argument, "duplicate element name in carrier");
  }
  size_t m = carrier.size();
  for (const OpSymbol& sym : signature.ops) {
    auto it = op_tables.find(op_token(sym));
    if (it == op_tables.end()) {
      if (!op_fallback)
        fail(ErrorCode::Argument,
             "operation '" + op_token(sym) + "' has no table and no fallback");
      continue;
    }
    size_t want = 1;
    for (int k = 0; k < arity(sym.op); ++k) want *= m;
    if (it->second.size() != want)
      fail(ErrorCode::Argument, "table for '" + op_token(sym) + "' has wrong size");
    for (int32_t v : it->second)
      if (v < 0 || static_cast<size_t>(v) >= m)
        fail(ErrorCode::Argument, "table for '" + op_token(sym) + "' has out-of-range value");
  }
  for (RelSym r : signature.rels) {
    auto it = rel_tables.find(rel_token(r));
    if (it == rel_tables.end()) {
      if (!rel_fallback)
        fail(ErrorCode::Argument,
             "relation symbol '" + rel_token(r) + "' has no table and no fallback");
      continue;
    }
    size_t want = (r == RelSym::Inj) ? m : m * m;
    if (it->second.size() != want)
      fail(ErrorCode::Argument, "table for '" + rel_token(r) + "' has wrong size");
  }
  auto leq = rel_tables.find(rel_token(RelSym::Leq));
  if (signature.has_rel(RelSym::Leq) && leq != rel_tables.end()) {
    const auto& t = leq->second;
    for (size_t a = 0; a < m; ++a) {
      if (!t[a * m + a]) fail(ErrorCode::Argument, "leq is not reflexive");
      for (size_t b = 0; b < m; ++b) {
        if (a != b && t[a * m + b] && t[b * m + a])
          fail(ErrorCode::Argument, "leq is not antisymmetric");
        if (!t[a * m + b]) continue;
        for (size_t c = 0; c < m; ++c)
          if (t[b * m + c] && !t[a * m + c]) fail(ErrorCode::Argument, "leq is not transitive");
      }
    }
  }
}

namespace {

void require_candidate_shape(const RepresentationCandidate& cand) {
  if (!cand.structure) fail(ErrorCode::Argument, "candidate has no structure");
  if (cand.base < 1) fail(ErrorCode::Argument, "candidate base size must be >= 1");
  if (cand.assignment.size() != cand.structure->carrier.size())
    fail(ErrorCode::Argument, "assignment does not cover the carrier exactly");
  for (const Relation& r : cand.assignment)
    if (r.base_size() != cand.base)
      fail(ErrorCode::Dimension, "assigned relation has wrong base size");
}

bool semantic_rel(RelSym sym, const Relation& a, const Relation& b) {
  if (sym == RelSym::Inj) return is_injective_pmap(a);
  return eval_rel_semantic(sym, a, b);
}

// Composition check specialised for single-word rows: per fixed right factor,
// 9-bit chunks of the left rows index into precomputed OR tables.
struct ComposeChecker {
  int n = 0;
  int m = 0;
  int chunks = 0;
  std::vector<uint64_t> rows;  // m*n packed rows

  explicit ComposeChecker(const std::vector<Relation>& rep) {
    n = rep[0].base_size();
    m = static_cast<int>(rep.size());
    chunks = (n + 8) / 9;
    rows.resize(static_cast<size_t>(m) * static_cast<size_t>(n));
    for (int e = 0; e < m; ++e)
      for (int x = 0; x < n; ++x)
        rows[static_cast<size_t>(e) * n + x] = rep[static_cast<size_t>(e)].row(x)[0];
  }

  void build_tables(int y, std::vector<uint64_t>& T) const {
    const uint64_t* ry = &rows[static_cast<size_t>(y) * n];
    for (int k = 0; k < chunks; ++k) {
      uint64_t* Tk = &T[static_cast<size_t>(k) * 512];
      Tk[0] = 0;
      int base = 9 * k;
      for (int s = 1; s < 512; ++s) {
        int j = base + std::countr_zero(static_cast<unsigned>(s));
        uint64_t r = (j < n) ? ry[j] : 0;
        Tk[s] = Tk[s & (s - 1)] | r;
      }
    }
  }

  bool pair_ok(int x, int c, const std::vector<uint64_t>& T) const {
    const uint64_t* rx = &rows[static_cast<size_t>(x) * n];
    const uint64_t* rc = &rows[static_cast<size_t>(c) * n];
    if (chunks == 2) {
      const uint64_t* T0 = T.data();
      const uint64_t* T1 = T.data() + 512;
      for (int i = 0; i < n; ++i) {
        uint64_t rm = rx[i];
        if ((T0[rm & 511] | T1[(rm >> 9) & 511]) != rc[i]) return false;
      }
      return true;
    }
    for (int i = 0; i < n; ++i) {
      uint64_t rm = rx[i];
      uint64_t out = 0;
      for (int k = 0; k < chunks; ++k) out |= T[static_cast<size_t>(k) * 512 + ((rm >> (9 * k)) & 511)];
      if (out != rc[i]) return false;
    }
    return true;
  }
};

}  // namespace

VerifyResult verify_representation(const RepresentationCandidate& cand, int threads,
                                   std::size_t max_violations) {
  require_candidate_shape(cand);
  const FiniteStructure& s = *cand.structure;
  const std::vector<Relation>& rep = cand.assignment;
  int m = s.size();
  int n = cand.base;
  VerifyResult out;
  auto add = [&](const std::string& msg) {
    if (out.violations.size() < max_violations) out.violations.push_back(msg);
    out.ok = false;
  };
  auto capped = [&]() { return out.violations.size() >= max_violations; };

  {
    std::unordered_map<uint64_t, std::vector<int>> buckets;
    for (int i = 0; i < m; ++i) {
      auto& bucket = buckets[rep[static_cast<size_t>(i)].hash()];
      for (int j : bucket)
        if (rep[static_cast<size_t>(j)] == rep[static_cast<size_t>(i)]) {
          add("not injective: '" + s.name(j) + "' and '" + s.name(i) +
              "' assigned the same relation");
          break;
        }
      bucket.push_back(i);
    }
  }

  for (const OpSymbol& sym : s.signature.ops) {
    if (capped()) return out;
    std::string tok = op_token(sym);
    int ar = arity(sym.op);
    if (ar == 0) {
      int c = s.op_value(sym);
      const Relation& rc = rep[static_cast<size_t>(c)];
      if (sym.op == Op::Top) {
        for (int x = 0; x < m && !capped(); ++x)
          if (!rep[static_cast<size_t>(x)].subset_of(rc))
            add("constant '1': assigned relation of '" + s.name(c) +
                "' does not contain '" + s.name(x) + "'");
        continue;
      }
      Relation want = eval_semantic(sym, n, nullptr, nullptr);
      if (!(rc == want))
        add("constant '" + tok + "': assigned relation of '" + s.name(c) +
            "' is not the semantic value");
      continue;
    }
    if (ar == 1) {
      for (int x = 0; x < m && !capped(); ++x) {
        int c = s.op_value(sym, x);
        Relation want = eval_semantic(sym, n, &rep[static_cast<size_t>(x)], nullptr);
        if (!(rep[static_cast<size_t>(c)] == want))
          add("op '" + tok + "' at ('" + s.name(x) + "'): table value '" + s.name(c) +
              "' does not match semantics");
      }
      continue;
    }
    if (sym.op == Op::Compose && rep[0].words_per_row() == 1) {
      ComposeChecker cc(rep);
      auto run_range = [&](int y0, int y1, std::vector<std::string>& viols) {
        std::vector<uint64_t> T(static_cast<size_t>(cc.chunks) * 512);
        for (int y = y0; y < y1; ++y) {
          cc.build_tables(y, T);
          for (int x = 0; x < m; ++x) {
            int c = s.op_value(sym, x, y);
            if (!cc.pair_ok(x, c, T)) {
              if (viols.size() < max_violations)
                viols.push_back("op ';' at ('" + s.name(x) + "','" + s.name(y) +
                                "'): table value '" + s.name(c) +
                                "' does not match semantics");
              else
                return;
            }
          }
        }
      };
      if (threads <= 1 || m < 64) {
        std::vector<std::string> viols;
        run_range(0, m, viols);
        for (auto& v : viols) add(v);
      } else {
        int nt = std::min(threads, m);
        std::vector<std::vector<std::string>> chunk_viols(static_cast<size_t>(nt));
        std::vector<std::thread> workers;
        for (int t = 0; t < nt; ++t) {
          int y0 = static_cast<int>(static_cast<int64_t>(m) * t / nt);
          int y1 = static_cast<int>(static_cast<int64_t>(m) * (t + 1) / nt);
          workers.emplace_back(run_range, y0, y1, std::ref(chunk_viols[static_cast<size_t>(t)]));
        }
        for (auto& w : workers) w.join();
        for (auto& cv : chunk_viols)
          for (auto& v : cv) add(v);
      }
      continue;
    }
    for (int x = 0; x < m && !capped(); ++x) {
      const Relation& rx = rep[static_cast<size_t>(x)];
      for (int y = 0; y < m && !capped(); ++y) {
        int c = s.op_value(sym, x, y);
        Relation want = eval_semantic(sym, n, &rx, &rep[static_cast<size_t>(y)]);
        if (!(rep[static_cast<size_t>(c)] == want))
          add("op '" + tok + "' at ('" + s.name(x) + "','" + s.name(y) +
              "'): table value '" + s.name(c) + "' does not match semantics");
      }
    }
  }

  for (RelSym r : s.signature.rels) {
    if (capped()) return out;
    std::string tok = rel_token(r);
    if (r == RelSym::Inj) {
      for (int x = 0; x < m && !capped(); ++x) {
        bool tab = s.rel_value(r, x);
        bool sem = is_injective_pmap(rep[static_cast<size_t>(x)]);
        if (tab != sem)
          add("rel 'inj' at ('" + s.name(x) + "'): table says " + (tab ? "1" : "0") +
              ", semantics says " + (sem ? "1" : "0"));
      }
      continue;
    }
    for (int x = 0; x < m && !capped(); ++x)
      for (int y = 0; y < m && !capped(); ++y) {
        bool tab = s.rel_value(r, x, y);
        bool sem = semantic_rel(r, rep[static_cast<size_t>(x)], rep[static_cast<size_t>(y)]);
        if (tab != sem)
          add("rel '" + tok + "' at ('" + s.name(x) + "','" + s.name(y) +
              "'): table says " + (tab ? "1" : "0") + ", semantics says " +
              (sem ? "1" : "0"));
      }
  }
  return out;
}

bool check_inj_formula_abstract(const FiniteStructure& s, int elem, int which, int power) {
  auto need_op = [&](const OpSymbol& sym) {
    if (!s.signature.has_op(sym))
      fail(ErrorCode::Unsupported,
           "abstract formula needs operation '" + op_token(sym) + "'");
  };
  auto need_rel = [&](RelSym r) {
    if (!s.signature.has_rel(r))
      fail(ErrorCode::Unsupported, "abstract formula needs relation symbol '" + rel_token(r) + "'");
  };
  switch (which) {
    case 0: {
      need_op(OpSymbol(Op::Id));
      need_op(OpSymbol(Op::Converse));
      need_op(OpSymbol(Op::Compose));
      need_rel(RelSym::Leq);
      int idc = s.op_value(OpSymbol(Op::Id));
      int acv = s.op_value(OpSymbol(Op::Converse), elem);
      return s.rel_value(RelSym::Leq, s.op_value(OpSymbol(Op::Compose), elem, acv), idc) &&
             s.rel_value(RelSym::Leq, s.op_value(OpSymbol(Op::Compose), acv, elem), idc);
    }
    case 1: {
      need_op(OpSymbol(Op::Id));
      need_rel(RelSym::Leq);
      OpSymbol klp(Op::KernelLeftPower, power);
      OpSymbol krp(Op::KernelRightPower, power);
      if (power == 1 && !s.signature.has_op(klp) && s.signature.has_op(OpSymbol(Op::KernelLeft)))
        klp = OpSymbol(Op::KernelLeft);
      if (power == 1 && !s.signature.has_op(krp) && s.signature.has_op(OpSymbol(Op::KernelRight)))
        krp = OpSymbol(Op::KernelRight);
      need_op(klp);
      need_op(krp);
      int idc = s.op_value(OpSymbol(Op::Id));
      return s.rel_value(RelSym::Leq, s.op_value(klp, elem), idc) &&
             s.rel_value(RelSym::Leq, s.op_value(krp, elem), idc);
    }
    case 2: {
      need_op(OpSymbol(Op::Zero));
      need_op(OpSymbol(Op::Diversity));
      need_op(OpSymbol(Op::Meet));
      need_op(OpSymbol(Op::Compose));
      int zero = s.op_value(OpSymbol(Op::Zero));
      int divc = s.op_value(OpSymbol(Op::Diversity));
      int left = s.op_value(OpSymbol(Op::Meet), s.op_value(OpSymbol(Op::Compose), elem, divc), elem);
      int right = s.op_value(OpSymbol(Op::Meet), s.op_value(OpSymbol(Op::Compose), divc, elem), elem);
      return left == zero && right == zero;
    }
    case 3: {
      need_op(OpSymbol(Op::Complement));
      need_op(OpSymbol(Op::Compose));
      int u;
      if (s.signature.has_op(OpSymbol(Op::Universal)))
        u = s.op_value(OpSymbol(Op::Universal));
      else if (s.signature.has_op(OpSymbol(Op::Top)))
        u = s.op_value(OpSymbol(Op::Top));
      else
        fail(ErrorCode::Unsupported, "abstract formula needs u or 1");
      int divc;
      if (s.signature.has_op(OpSymbol(Op::Diversity)))
        divc = s.op_value(OpSymbol(Op::Diversity));
      else if (s.signature.has_op(OpSymbol(Op::Id)))
        divc = s.op_value(OpSymbol(Op::Complement), s.op_value(OpSymbol(Op::Id)));
      else
        fail(ErrorCode::Unsupported, "abstract formula needs 0' or 1'");
      int left = s.op_value(OpSymbol(Op::Complement),
                            s.op_value(OpSymbol(Op::Compose), elem, divc));
      int right = s.op_value(OpSymbol(Op::Complement),
                             s.op_value(OpSymbol(Op::Compose), divc, elem));
      int lhs = s.op_value(OpSymbol(Op::Compose), s.op_value(OpSymbol(Op::Compose), left, u), right);
      return lhs == u;
    }
    default:
      fail(ErrorCode::Argument, "injectivity formula index must be 0..3");
  }
}

namespace {

struct SearchState {
  const FiniteStructure* s = nullptr;
  int n = 0;
  int m = 0;
  std::vector<Relation> rep;
  std::vector<char> have;
  std::vector<int> order;

  bool assign_check(int c, const Relation& v, std::vector<int>& trail) {
    if (have[static_cast<size_t>(c)]) return rep[static_cast<size_t>(c)] == v;
    for (int d = 0; d < m; ++d)
      if (have[static_cast<size_t>(d)] && rep[static_cast<size_t>(d)] == v) return false;
    rep[static_cast<size_t>(c)] = v;
    have[static_cast<size_t>(c)] = 1;
    trail.push_back(c);
    return true;
  }

  void undo(const std::vector<int>& trail, size_t from) {
    for (size_t k = trail.size(); k > from; --k)
      have[static_cast<size_t>(trail[k - 1])] = 0;
  }

  bool propagate(std::vector<int>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      size_t before = trail.size();
      for (const OpSymbol& sym : s->signature.ops) {
        int ar = arity(sym.op);
        if (ar == 0) continue;
        if (ar == 1) {
          for (int x = 0; x < m; ++x) {
            if (!have[static_cast<size_t>(x)]) continue;
            Relation v = eval_semantic(sym, n, &rep[static_cast<size_t>(x)], nullptr);
            if (!assign_check(s->op_value(sym, x), v, trail)) return false;
          }
          continue;
        }
        for (int x = 0; x < m; ++x) {
          if (!have[static_cast<size_t>(x)]) continue;
          for (int y = 0; y < m; ++y) {
            if (!have[static_cast<size_t>(y)]) continue;
            Relation v = eval_semantic(sym, n, &rep[static_cast<size_t>(x)],
                                       &rep[static_cast<size_t>(y)]);
            if (!assign_check(s->op_value(sym, x, y), v, trail)) return false;
          }
        }
      }
      for (RelSym r : s->signature.rels) {
        if (r == RelSym::Inj) {
          for (int x = 0; x < m; ++x)
            if (have[static_cast<size_t>(x)] &&
                s->rel_value(r, x) != is_injective_pmap(rep[static_cast<size_t>(x)]))
              return false;
          continue;
        }
        for (int x = 0; x < m; ++x) {
          if (!have[static_cast<size_t>(x)]) continue;
          for (int y = 0; y < m; ++y)
            if (have[static_cast<size_t>(y)] &&
                s->rel_value(r, x, y) != semantic_rel(r, rep[static_cast<size_t>(x)],
                                                      rep[static_cast<size_t>(y)]))
              return false;
        }
      }
      if (trail.size() != before) changed = true;
    }
    return true;
  }

  // Masks over n*n bits in (popcount, numeric) order; Gosper's hack steps
  // through each popcount class.
  bool try_masks(int x, const std::function<bool()>& cont) {
    int bits = n * n;
    uint64_t limit = 1ull << bits;
    for (int p = 0; p <= bits; ++p) {
      uint64_t mask = (p == 0) ? 0 : ((1ull << p) - 1);
      while (mask < limit || p == 0) {
        bool dup = false;
        for (int d = 0; d < m && !dup; ++d)
          if (have[static_cast<size_t>(d)] && rep[static_cast<size_t>(d)].to_mask() == mask)
            dup = true;
        if (!dup) {
          std::vector<int> trail;
          rep[static_cast<size_t>(x)] = Relation::from_mask(n, mask);
          have[static_cast<size_t>(x)] = 1;
          trail.push_back(x);
          if (propagate(trail) && cont()) return true;
          undo(trail, 0);
        }
        if (p == 0) break;
        uint64_t c = mask & (~mask + 1);
        uint64_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
      }
    }
    return false;
  }
};

}  // namespace

SearchResult search_representation(const FiniteStructure& s, int max_base,
                                   const std::vector<int>& generators) {
  if (max_base < 1) fail(ErrorCode::Argument, "max_base must be >= 1");
  if (max_base > 7) fail(ErrorCode::Unsupported, "search supports base sizes up to 7");
  s.validate();
  int m = s.size();
  std::vector<int> order;
  {
    std::vector<char> seen(static_cast<size_t>(m), 0);
    for (int g : generators) {
      if (g < 0 || g >= m) fail(ErrorCode::Argument, "generator index out of range");
      if (!seen[static_cast<size_t>(g)]) {
        order.push_back(g);
        seen[static_cast<size_t>(g)] = 1;
      }
    }
    for (int i = 0; i < m; ++i)
      if (!seen[static_cast<size_t>(i)]) order.push_back(i);
  }

  for (int n = 1; n <= max_base; ++n) {
    SearchState st;
    st.s = &s;
    st.n = n;
    st.m = m;
    st.rep.assign(static_cast<size_t>(m), Relation(n));
    st.have.assign(static_cast<size_t>(m), 0);
    st.order = order;

    std::vector<int> trail;
    bool base_ok = true;
    auto preassign = [&](Op op, const Relation& v) {
      if (!base_ok || !s.signature.has_op(OpSymbol(op))) return;
      if (!st.assign_check(s.op_value(OpSymbol(op)), v, trail)) base_ok = false;
    };
    preassign(Op::Zero, Relation::empty(n));
    preassign(Op::Id, Relation::identity(n));
    preassign(Op::Diversity, Relation::diversity(n));
    preassign(Op::Universal, Relation::universal(n));
    if (base_ok && !st.propagate(trail)) base_ok = false;
    if (!base_ok) continue;

    SearchResult result;
    std::function<bool()> dfs = [&]() -> bool {
      int next = -1;
      for (int x : st.order)
        if (!st.have[static_cast<size_t>(x)]) {
          next = x;
          break;
        }
      if (next < 0) {
        RepresentationCandidate cand;
        cand.structure = std::make_shared<FiniteStructure>(s);
        cand.base = n;
        cand.assignment = st.rep;
        if (!verify_representation(cand).ok) return false;
        result.found = true;
        result.candidate = std::move(cand);
        return true;
      }
      return st.try_masks(next, dfs);
    };
    if (dfs()) return result;
  }
  SearchResult none;
  none.none_up_to = max_base;
  return none;
}

RepresentationCandidate quotient_representation(const RepresentationCandidate& cand,
                                                int identity_elem) {
  require_candidate_shape(cand);
  const FiniteStructure& s = *cand.structure;
  if (identity_elem < 0 || identity_elem >= s.size())
    fail(ErrorCode::Argument, "identity element index out of range");
  if (!s.signature.has_op(OpSymbol(Op::Complement)) ||
      !s.signature.has_op(OpSymbol(Op::Compose)))
    fail(ErrorCode::Precondition, "quotient requires a signature containing - and ;");
  VerifyResult v = verify_representation(cand);
  if (!v.ok)
    fail(ErrorCode::Precondition, "quotient requires a verified candidate: " +
                                      (v.violations.empty() ? std::string("unverified")
                                                            : v.violations.front()));
  const Relation& r = cand.assignment[static_cast<size_t>(identity_elem)];
  int n = cand.base;
  for (int x = 0; x < n; ++x)
    if (!r.test(x, x))
      fail(ErrorCode::Precondition, "assigned relation of the identity is not a total equivalence");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (r.test(x, y) != r.test(y, x))
        fail(ErrorCode::Precondition, "assigned relation of the identity is not a total equivalence");
      if (!r.test(x, y)) continue;
      for (int z = 0; z < n; ++z)
        if (r.test(y, z) && !r.test(x, z))
          fail(ErrorCode::Precondition,
               "assigned relation of the identity is not a total equivalence");
    }

  std::vector<int> cls(static_cast<size_t>(n), -1);
  int q = 0;
  for (int x = 0; x < n; ++x) {
    if (cls[static_cast<size_t>(x)] >= 0) continue;
    for (int y = x; y < n; ++y)
      if (r.test(x, y)) cls[static_cast<size_t>(y)] = q;
    ++q;
  }

  RepresentationCandidate out;
  out.structure = cand.structure;
  out.base = q;
  out.assignment.reserve(cand.assignment.size());
  for (const Relation& rel : cand.assignment) {
    Relation img(q);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (rel.test(x, y)) img.set(cls[static_cast<size_t>(x)], cls[static_cast<size_t>(y)]);
    out.assignment.push_back(std::move(img));
  }
  return out;
}

std::string lemma_verdict_string(LemmaVerdict v) {
  switch (v) {
    case LemmaVerdict::HypothesisUnmet:
      return "hypothesis_unmet";
    case LemmaVerdict::Confirmed:
      return "confirmed";
    case LemmaVerdict::Violated:
      return "violated";
  }
  return "unknown";
}

LocalEquivalenceReport check_local_equivalence_lemma(const RepresentationCandidate& cand,
                                                     int e) {
  require_candidate_shape(cand);
  const FiniteStructure& s = *cand.structure;
  if (e < 0 || e >= s.size()) fail(ErrorCode::Argument, "element index out of range");
  if (!s.signature.has_op(OpSymbol(Op::Complement)) ||
      !s.signature.has_op(OpSymbol(Op::Compose)))
    fail(ErrorCode::Precondition, "lemma check requires a signature containing - and ;");
  OpSymbol neg(Op::Complement), comp(Op::Compose);
  int c = s.op_value(neg, e);
  LocalEquivalenceReport rep;
  rep.hypotheses_met = s.op_value(comp, e, e) == e && s.op_value(comp, c, e) == c &&
                       s.op_value(comp, e, c) == c;
  if (!rep.hypotheses_met) return rep;
  const Relation& re = cand.assignment[static_cast<size_t>(e)];
  rep.nonempty = !re.is_empty();
  rep.local_equivalence = is_local_equivalence(re);
  bool ok = rep.nonempty && rep.local_equivalence;
  rep.universal_case = s.op_value(comp, c, c) == c;
  if (rep.universal_case) {
    rep.universal = re == Relation::universal(cand.base);
    rep.complement_empty = cand.assignment[static_cast<size_t>(c)].is_empty();
    ok = ok && rep.universal && rep.complement_empty;
  }
  rep.verdict = ok ? LemmaVerdict::Confirmed : LemmaVerdict::Violated;
  return rep;
}

IdempotentInjectionReport check_idempotent_injection_lemma(
    const RepresentationCandidate& cand, int e, int a) {
  require_candidate_shape(cand);
  const FiniteStructure& s = *cand.structure;
  if (e < 0 || e >= s.size() || a < 0 || a >= s.size())
    fail(ErrorCode::Argument, "element index out of range");
  for (Op op : {Op::Complement, Op::Id, Op::Compose, Op::Top})
    if (!s.signature.has_op(OpSymbol(op)))
      fail(ErrorCode::Precondition,
           "lemma check requires a signature containing -, 1', 1 and ;");
  OpSymbol comp(Op::Compose);
  int top = s.op_value(OpSymbol(Op::Top));
  bool idem = s.op_value(comp, e, e) == e;
  bool inj3 = idem && check_inj_formula_abstract(s, e, 3);
  IdempotentInjectionReport out;
  const Relation& re = cand.assignment[static_cast<size_t>(e)];
  const Relation& ra = cand.assignment[static_cast<size_t>(a)];
  if (s.op_value(comp, e, top) == s.op_value(comp, a, top) && inj3)
    out.domain_verdict =
        (re == dom(ra)) ? LemmaVerdict::Confirmed : LemmaVerdict::Violated;
  if (s.op_value(comp, top, e) == s.op_value(comp, top, a) && inj3)
    out.range_verdict = (re == ran(ra)) ? LemmaVerdict::Confirmed : LemmaVerdict::Violated;
  return out;
}

}  // namespace relwb
