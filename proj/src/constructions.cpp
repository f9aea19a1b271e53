// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#include "constructions.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <unordered_set>

#include "error.hpp"

namespace relwb {

namespace {

void require_valid_pgroup(const SquarePartialGroup& p) {
  PGroupReport rep = pgroup_validate(p);
  if (!rep.ok)
    fail(ErrorCode::Argument, "invalid square partial group: " + rep.issues.front());
}

bool is_counted(const CellVal& v) {
  return v.kind == CellVal::Kind::Plain || v.kind == CellVal::Kind::Barred;
}

constexpr int kUpperPos[6] = {0, 1, 2, 4, 5, 8};  // cells with i <= j, row-major

}  // namespace

EFamily::EFamily(const SquarePartialGroup& p, Variant v, bool strict_compat)
    : p_(p), variant_(v), strict_(strict_compat && v == Variant::E2) {
  require_valid_pgroup(p_);
  const int np = p_.size();
  if (np > 8)
    fail(ErrorCode::Unsupported,
         "partial groups larger than 8 elements are not supported by the formal-sum "
         "constructions");
  for (const std::string& nm : p_.elements) {
    if (nm == "1" || nm.find_first_of("+~{},") != std::string::npos)
      fail(ErrorCode::Argument,
           "partial group element name '" + nm + "' conflicts with formal-sum naming");
  }

  sqrt_power_.assign(3, 0);
  sqrt_power_[0] = static_cast<uint16_t>(1u << p_.identity);
  for (int i = 0; i < np; ++i)
    if (p_.sqrt[static_cast<size_t>(i)]) sqrt_power_[1] |= static_cast<uint16_t>(1u << i);
  sqrt_power_[2] = static_cast<uint16_t>((1u << np) - 1u);

  domain_.assign(9, {});
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      std::vector<CellVal>& d = domain_[static_cast<size_t>(3 * i + j)];
      d.push_back(CellVal{CellVal::Kind::Zero, 0});
      d.push_back(CellVal{CellVal::Kind::One, 0});
      if (i > j) continue;
      const uint16_t allowed = sqrt_power_[static_cast<size_t>(j - i)];
      for (int e = 0; e < np; ++e)
        if (allowed >> e & 1u) d.push_back(CellVal{CellVal::Kind::Plain, static_cast<uint16_t>(e)});
      if (variant_ == Variant::E1) {
        for (int e = 0; e < np; ++e)
          if (allowed >> e & 1u)
            d.push_back(CellVal{CellVal::Kind::Barred, static_cast<uint16_t>(1u << e)});
      } else {
        for (uint16_t m = 1; m < (1u << np); ++m)
          if ((m & ~allowed) == 0) d.push_back(CellVal{CellVal::Kind::Barred, m});
      }
    }
  }

  strides_.assign(9, 0);
  key_space_ = 1;
  for (int pos = 8; pos >= 0; --pos) {
    strides_[static_cast<size_t>(pos)] = key_space_;
    key_space_ *= domain_[static_cast<size_t>(pos)].size();
  }

  // Carrier size by summing over the possible placements of counted cells
  // (partial injective row-to-column maps), times the free choices elsewhere.
  auto count_with = [&](bool barred_counted) {
    std::function<uint64_t(int, int, int)> rec = [&](int k, int rmask, int cmask) -> uint64_t {
      if (k == 6) return 8u;  // the three lower cells are always free: 2^3
      const int pos = kUpperPos[k];
      const int i = pos / 3, j = pos % 3;
      uint64_t plains = 0, barreds = 0;
      for (const CellVal& cv : domain_[static_cast<size_t>(pos)]) {
        if (cv.kind == CellVal::Kind::Plain) ++plains;
        if (cv.kind == CellVal::Kind::Barred) ++barreds;
      }
      const uint64_t counted = barred_counted ? plains + barreds : plains;
      const uint64_t free_here = barred_counted ? 2 : 2 + barreds;
      uint64_t total = free_here * rec(k + 1, rmask, cmask);
      if (!(rmask >> i & 1) && !(cmask >> j & 1))
        total += counted * rec(k + 1, rmask | 1 << i, cmask | 1 << j);
      return total;
    };
    return rec(0, 0, 0);
  };
  alt_count_ = count_with(false);
  const uint64_t expected = count_with(true);
  if (expected > 2000000)
    fail(ErrorCode::Unsupported, "formal-sum carrier too large to enumerate (" +
                                     std::to_string(expected) + " elements)");

  grids_.reserve(expected);
  codes_.reserve(expected * 9);
  std::array<uint16_t, 9> cur{};
  Grid curg;
  std::function<void(int, int, int)> enumerate = [&](int pos, int rmask, int cmask) {
    if (pos == 9) {
      grids_.push_back(curg);
      codes_.insert(codes_.end(), cur.begin(), cur.end());
      return;
    }
    const int i = pos / 3, j = pos % 3;
    const std::vector<CellVal>& d = domain_[static_cast<size_t>(pos)];
    for (size_t c = 0; c < d.size(); ++c) {
      const bool counted = is_counted(d[c]);
      if (counted && ((rmask >> i & 1) || (cmask >> j & 1))) continue;
      cur[static_cast<size_t>(pos)] = static_cast<uint16_t>(c);
      curg.cells[static_cast<size_t>(pos)] = d[c];
      enumerate(pos + 1, counted ? rmask | 1 << i : rmask, counted ? cmask | 1 << j : cmask);
    }
  };
  enumerate(0, 0, 0);
  if (grids_.size() != expected)
    fail(ErrorCode::Internal, "formal-sum enumeration disagrees with the placement count");

  if (key_space_ <= (1u << 24)) {
    direct_index_.assign(key_space_, -1);
    for (size_t idx = 0; idx < grids_.size(); ++idx)
      direct_index_[key_of_codes(&codes_[idx * 9])] = static_cast<int32_t>(idx);
  } else {
    hash_index_.reserve(grids_.size() * 2);
    for (size_t idx = 0; idx < grids_.size(); ++idx)
      hash_index_.emplace(key_of_codes(&codes_[idx * 9]), static_cast<int32_t>(idx));
  }

  mul_.assign(27, {});
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 3; ++k) {
        const std::vector<CellVal>& da = domain_[static_cast<size_t>(3 * i + j)];
        const std::vector<CellVal>& db = domain_[static_cast<size_t>(3 * j + k)];
        std::vector<uint16_t>& t = mul_[static_cast<size_t>((i * 3 + j) * 3 + k)];
        t.assign(da.size() * db.size(), 0);
        for (size_t a = 0; a < da.size(); ++a) {
          for (size_t b = 0; b < db.size(); ++b) {
            const CellVal r = cell_mul(da[a], i, j, db[b], k);
            const int code = code_of(3 * i + k, r);
            if (code < 0)
              fail(ErrorCode::Internal, "cell product escaped the cell domain");
            t[a * db.size() + b] = static_cast<uint16_t>(code);
          }
        }
      }
    }
  }
  join_.assign(9, {});
  for (int pos = 0; pos < 9; ++pos) {
    const std::vector<CellVal>& d = domain_[static_cast<size_t>(pos)];
    std::vector<int32_t>& t = join_[static_cast<size_t>(pos)];
    t.assign(d.size() * d.size(), -1);
    for (size_t a = 0; a < d.size(); ++a) {
      for (size_t b = 0; b < d.size(); ++b) {
        if (d[a].kind == CellVal::Kind::Plain && d[b].kind == CellVal::Kind::Plain &&
            !(d[a] == d[b]))
          continue;  // formal-sum closure violation, kept as the -1 sentinel
        const CellVal r = cell_join(d[a], d[b], pos / 3, pos % 3);
        const int code = code_of(pos, r);
        if (code < 0) fail(ErrorCode::Internal, "cell join escaped the cell domain");
        t[a * d.size() + b] = code;
      }
    }
  }

  names_.reserve(grids_.size());
  for (size_t idx = 0; idx < grids_.size(); ++idx) {
    const Grid& g = grids_[idx];
    std::string nm;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const CellVal& cv = g.at(i, j);
        if (cv.kind == CellVal::Kind::Zero) continue;
        if (!nm.empty()) nm += '+';
        nm += cell_name(cv, i, j);
      }
    }
    if (nm.empty()) nm = "0";
    names_.push_back(std::move(nm));
  }
  std::unordered_set<std::string> seen(names_.begin(), names_.end());
  if (seen.size() != names_.size())
    fail(ErrorCode::Argument,
         "partial group element names produce ambiguous formal-sum element names");
}

int EFamily::code_of(int pos, const CellVal& v) const {
  const std::vector<CellVal>& d = domain_[static_cast<size_t>(pos)];
  for (size_t c = 0; c < d.size(); ++c)
    if (d[c] == v) return static_cast<int>(c);
  return -1;
}

uint64_t EFamily::key_of_codes(const uint16_t* c) const {
  uint64_t key = 0;
  for (int pos = 0; pos < 9; ++pos) key += strides_[static_cast<size_t>(pos)] * c[pos];
  return key;
}

int EFamily::index_of(const Grid& g) const {
  uint16_t codes[9];
  for (int pos = 0; pos < 9; ++pos) {
    const int c = code_of(pos, g.cells[static_cast<size_t>(pos)]);
    if (c < 0) return -1;
    codes[pos] = static_cast<uint16_t>(c);
  }
  const uint64_t key = key_of_codes(codes);
  if (!direct_index_.empty()) return direct_index_[key];
  auto it = hash_index_.find(key);
  return it == hash_index_.end() ? -1 : it->second;
}

std::string EFamily::cell_name(const CellVal& v, int i, int j) const {
  const std::string suffix =
      std::string("_") + static_cast<char>('0' + i) + static_cast<char>('0' + j);
  switch (v.kind) {
    case CellVal::Kind::One:
      return "1" + suffix;
    case CellVal::Kind::Plain:
      return p_.elements[v.label] + suffix;
    case CellVal::Kind::Barred: {
      if (variant_ == Variant::E1)
        return "~" + p_.elements[static_cast<size_t>(std::countr_zero(v.label))] + suffix;
      std::string body;
      for (int e = 0; e < p_.size(); ++e) {
        if (!(v.label >> e & 1u)) continue;
        if (!body.empty()) body += ',';
        body += p_.elements[static_cast<size_t>(e)];
      }
      return "~{" + body + "}" + suffix;
    }
    case CellVal::Kind::Zero:
      break;
  }
  fail(ErrorCode::Internal, "zero cell has no name");
}

CellVal EFamily::cell_mul(const CellVal& a, int i, int j, const CellVal& b, int k) const {
  using K = CellVal::Kind;
  if (a.kind == K::Zero || b.kind == K::Zero) return CellVal{};
  if (strict_) {
    if ((a.kind == K::One && i > j) || (b.kind == K::One && j > k)) return CellVal{};
    if (a.kind == K::Plain && b.kind == K::Barred) return CellVal{};
  }
  if (a.kind == K::One || b.kind == K::One) return CellVal{K::One, 0};
  if (a.kind == K::Barred && b.kind == K::Barred) return CellVal{K::One, 0};
  auto prod = [this](int x, int y) {
    const int r = p_.prod(x, y);
    if (r < 0) fail(ErrorCode::Internal, "undefined label product in a cell composition");
    return r;
  };
  if (a.kind == K::Plain && b.kind == K::Plain)
    return CellVal{K::Plain, static_cast<uint16_t>(prod(a.label, b.label))};
  uint16_t out = 0;
  if (a.kind == K::Plain) {
    for (int m = 0; m < p_.size(); ++m)
      if (b.label >> m & 1u) out |= static_cast<uint16_t>(1u << prod(a.label, m));
  } else {
    for (int m = 0; m < p_.size(); ++m)
      if (a.label >> m & 1u) out |= static_cast<uint16_t>(1u << prod(m, b.label));
  }
  return CellVal{K::Barred, out};
}

CellVal EFamily::cell_join(const CellVal& a, const CellVal& b, int i, int j) const {
  using K = CellVal::Kind;
  if (a == b) return a;
  if (a.kind == K::Zero) return b;
  if (b.kind == K::Zero) return a;
  if (a.kind == K::One || b.kind == K::One) return CellVal{K::One, 0};
  if (a.kind == K::Plain && b.kind == K::Plain)
    fail(ErrorCode::Internal, "formal sum closure violated at cell (" +
                                  std::to_string(i) + "," + std::to_string(j) + ")");
  uint16_t m;
  if (a.kind == K::Plain)
    m = static_cast<uint16_t>(b.label & ~(1u << a.label));
  else if (b.kind == K::Plain)
    m = static_cast<uint16_t>(a.label & ~(1u << b.label));
  else
    m = static_cast<uint16_t>(a.label & b.label);
  return m ? CellVal{K::Barred, m} : CellVal{K::One, 0};
}

Grid EFamily::zero_grid() const { return Grid{}; }

Grid EFamily::one_grid() const {
  Grid g;
  for (auto& c : g.cells) c = CellVal{CellVal::Kind::One, 0};
  return g;
}

Grid EFamily::id_grid() const {
  Grid g;
  for (int i = 0; i < 3; ++i)
    g.at(i, i) = CellVal{CellVal::Kind::Plain, static_cast<uint16_t>(p_.identity)};
  return g;
}

Grid EFamily::diversity_grid() const {
  Grid g = one_grid();
  for (int i = 0; i < 3; ++i)
    g.at(i, i) = CellVal{CellVal::Kind::Barred, static_cast<uint16_t>(1u << p_.identity)};
  return g;
}

Grid EFamily::compose(const Grid& a, const Grid& b) const {
  Grid r;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      CellVal acc{};
      for (int j = 0; j < 3; ++j) {
        const CellVal v = cell_mul(a.at(i, j), i, j, b.at(j, k), k);
        acc = cell_join(acc, v, i, k);
      }
      r.at(i, k) = acc;
    }
  }
  return r;
}

Grid EFamily::orth_join(const Grid& a, const Grid& b) const {
  bool row_empty[3] = {true, true, true}, col_empty[3] = {true, true, true};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (a.at(i, j).kind != CellVal::Kind::Zero) row_empty[i] = col_empty[j] = false;
  Grid r = a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (row_empty[i] && col_empty[j]) r.at(i, j) = b.at(i, j);
  return r;
}

Grid EFamily::meet(const Grid& a, const Grid& b) const {
  if (variant_ != Variant::E2)
    fail(ErrorCode::Unsupported, "meet is only defined on the second formal-sum variant");
  using K = CellVal::Kind;
  Grid r;
  for (int pos = 0; pos < 9; ++pos) {
    const CellVal& x = a.cells[static_cast<size_t>(pos)];
    const CellVal& y = b.cells[static_cast<size_t>(pos)];
    if (x == y)
      r.cells[static_cast<size_t>(pos)] = x;
    else if (x.kind == K::Barred && y.kind == K::Barred)
      r.cells[static_cast<size_t>(pos)] =
          CellVal{K::Barred, static_cast<uint16_t>(x.label | y.label)};
    else
      r.cells[static_cast<size_t>(pos)] = CellVal{};
  }
  return r;
}

Grid EFamily::complement(const Grid& a) const {
  if (variant_ != Variant::E1)
    fail(ErrorCode::Unsupported, "complement is only defined on the first formal-sum variant");
  using K = CellVal::Kind;
  Grid r;
  for (int pos = 0; pos < 9; ++pos) {
    const CellVal& v = a.cells[static_cast<size_t>(pos)];
    CellVal& o = r.cells[static_cast<size_t>(pos)];
    switch (v.kind) {
      case K::Zero: o = CellVal{K::One, 0}; break;
      case K::One: o = CellVal{}; break;
      case K::Plain: o = CellVal{K::Barred, static_cast<uint16_t>(1u << v.label)}; break;
      case K::Barred:
        o = CellVal{K::Plain, static_cast<uint16_t>(std::countr_zero(v.label))};
        break;
    }
  }
  return r;
}

bool EFamily::leq(const Grid& a, const Grid& b) const {
  if (variant_ != Variant::E1)
    fail(ErrorCode::Unsupported, "the order is only defined on the first formal-sum variant");
  using K = CellVal::Kind;
  for (int pos = 0; pos < 9; ++pos) {
    const CellVal& x = a.cells[static_cast<size_t>(pos)];
    const CellVal& y = b.cells[static_cast<size_t>(pos)];
    if (x.kind == K::Zero || x == y || y.kind == K::One) continue;
    return false;
  }
  return true;
}

Grid EFamily::dom_grid(const Grid& a) const {
  Grid r;
  for (int i = 0; i < 3; ++i) {
    bool nonempty = false;
    for (int j = 0; j < 3; ++j)
      if (a.at(i, j).kind != CellVal::Kind::Zero) nonempty = true;
    if (nonempty)
      r.at(i, i) = CellVal{CellVal::Kind::Plain, static_cast<uint16_t>(p_.identity)};
  }
  return r;
}

Grid EFamily::ran_grid(const Grid& a) const {
  Grid r;
  for (int j = 0; j < 3; ++j) {
    bool nonempty = false;
    for (int i = 0; i < 3; ++i)
      if (a.at(i, j).kind != CellVal::Kind::Zero) nonempty = true;
    if (nonempty)
      r.at(j, j) = CellVal{CellVal::Kind::Plain, static_cast<uint16_t>(p_.identity)};
  }
  return r;
}

Grid EFamily::antidom_grid(const Grid& a) const {
  Grid r;
  for (int i = 0; i < 3; ++i) {
    bool nonempty = false;
    for (int j = 0; j < 3; ++j)
      if (a.at(i, j).kind != CellVal::Kind::Zero) nonempty = true;
    if (!nonempty)
      r.at(i, i) = CellVal{CellVal::Kind::Plain, static_cast<uint16_t>(p_.identity)};
  }
  return r;
}

Grid EFamily::antiran_grid(const Grid& a) const {
  Grid r;
  for (int j = 0; j < 3; ++j) {
    bool nonempty = false;
    for (int i = 0; i < 3; ++i)
      if (a.at(i, j).kind != CellVal::Kind::Zero) nonempty = true;
    if (!nonempty)
      r.at(j, j) = CellVal{CellVal::Kind::Plain, static_cast<uint16_t>(p_.identity)};
  }
  return r;
}

Grid EFamily::kernel_left_grid(const Grid& a) const {
  using K = CellVal::Kind;
  Grid r;
  for (int i = 0; i < 3; ++i) {
    CellVal acc{};
    for (int j = 0; j < 3; ++j) {
      const CellVal& v = a.at(i, j);
      if (v.kind == K::Zero) continue;
      const CellVal contrib = v.kind == K::Plain
                                  ? CellVal{K::Plain, static_cast<uint16_t>(p_.identity)}
                                  : CellVal{K::One, 0};
      acc = cell_join(acc, contrib, i, i);
    }
    r.at(i, i) = acc;
  }
  return r;
}

Grid EFamily::kernel_right_grid(const Grid& a) const {
  using K = CellVal::Kind;
  Grid r;
  for (int j = 0; j < 3; ++j) {
    CellVal acc{};
    for (int i = 0; i < 3; ++i) {
      const CellVal& v = a.at(i, j);
      if (v.kind == K::Zero) continue;
      const CellVal contrib = v.kind == K::Plain
                                  ? CellVal{K::Plain, static_cast<uint16_t>(p_.identity)}
                                  : CellVal{K::One, 0};
      acc = cell_join(acc, contrib, j, j);
    }
    r.at(j, j) = acc;
  }
  return r;
}

int EFamily::compose_idx(int a, int b) const {
  const uint16_t* ca = &codes_[static_cast<size_t>(a) * 9];
  const uint16_t* cb = &codes_[static_cast<size_t>(b) * 9];
  uint16_t rc[9];
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 3; ++k) {
      const int posik = 3 * i + k;
      const std::vector<int32_t>& jt = join_[static_cast<size_t>(posik)];
      const size_t dc = domain_[static_cast<size_t>(posik)].size();
      int acc = 0;
      for (int j = 0; j < 3; ++j) {
        const uint16_t xa = ca[3 * i + j];
        const uint16_t xb = cb[3 * j + k];
        if (!xa || !xb) continue;
        const size_t db = domain_[static_cast<size_t>(3 * j + k)].size();
        const uint16_t c = mul_[static_cast<size_t>((i * 3 + j) * 3 + k)][xa * db + xb];
        if (!c) continue;
        if (!acc) {
          acc = c;
          continue;
        }
        const int32_t joined = jt[static_cast<size_t>(acc) * dc + c];
        if (joined < 0)
          fail(ErrorCode::Internal, "formal sum closure violated during composition");
        acc = joined;
      }
      rc[posik] = static_cast<uint16_t>(acc);
    }
  }
  const uint64_t key = key_of_codes(rc);
  int32_t idx;
  if (!direct_index_.empty()) {
    idx = direct_index_[key];
  } else {
    auto it = hash_index_.find(key);
    idx = it == hash_index_.end() ? -1 : it->second;
  }
  if (idx < 0) fail(ErrorCode::Internal, "composite escaped the enumerated carrier");
  return idx;
}

std::shared_ptr<FiniteStructure> efamily_structure(std::shared_ptr<const EFamily> fam) {
  const EFamily& f = *fam;
  auto s = std::make_shared<FiniteStructure>();
  const int m = f.size();
  s->carrier.reserve(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) s->carrier.push_back(f.name_of(i));

  const bool e1 = f.variant() == EFamily::Variant::E1;
  if (e1) {
    s->signature.ops = {Op::Zero, Op::Top,        Op::Complement, Op::Diversity,
                        Op::Id,   Op::Dom,        Op::Ran,        Op::Antidom,
                        Op::Antiran, Op::KernelLeft, Op::KernelRight, Op::OrthJoin,
                        Op::Compose};
    s->signature.rels = {RelSym::Leq};
  } else {
    s->signature.ops = {Op::Zero, Op::Top,        Op::Meet,        Op::Id,
                        Op::Diversity, Op::Dom,   Op::Ran,         Op::KernelLeft,
                        Op::KernelRight, Op::Antidom, Op::Antiran, Op::OrthJoin,
                        Op::Compose};
  }

  auto grid_index = [&f](const Grid& g) {
    const int idx = f.index_of(g);
    if (idx < 0) fail(ErrorCode::Internal, "constructed grid escaped the enumerated carrier");
    return static_cast<int32_t>(idx);
  };
  s->op_tables[op_token(OpSymbol(Op::Zero))] = {grid_index(f.zero_grid())};
  s->op_tables[op_token(OpSymbol(Op::Top))] = {grid_index(f.one_grid())};
  s->op_tables[op_token(OpSymbol(Op::Id))] = {grid_index(f.id_grid())};
  s->op_tables[op_token(OpSymbol(Op::Diversity))] = {grid_index(f.diversity_grid())};

  auto add_unary = [&](Op op, Grid (EFamily::*fn)(const Grid&) const) {
    std::vector<int32_t> t(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) t[static_cast<size_t>(i)] = grid_index((f.*fn)(f.grid(i)));
    s->op_tables[op_token(OpSymbol(op))] = std::move(t);
  };
  if (e1) add_unary(Op::Complement, &EFamily::complement);
  add_unary(Op::Dom, &EFamily::dom_grid);
  add_unary(Op::Ran, &EFamily::ran_grid);
  add_unary(Op::Antidom, &EFamily::antidom_grid);
  add_unary(Op::Antiran, &EFamily::antiran_grid);
  add_unary(Op::KernelLeft, &EFamily::kernel_left_grid);
  add_unary(Op::KernelRight, &EFamily::kernel_right_grid);

  s->op_fallback = [fam](const OpSymbol& sym, int a, int b) -> int {
    switch (sym.op) {
      case Op::Compose:
        return fam->compose_idx(a, b);
      case Op::OrthJoin: {
        const int idx = fam->index_of(fam->orth_join(fam->grid(a), fam->grid(b)));
        if (idx < 0) fail(ErrorCode::Internal, "orthogonal join escaped the enumerated carrier");
        return idx;
      }
      case Op::Meet: {
        const int idx = fam->index_of(fam->meet(fam->grid(a), fam->grid(b)));
        if (idx < 0) fail(ErrorCode::Internal, "meet escaped the enumerated carrier");
        return idx;
      }
      default:
        fail(ErrorCode::Internal, "no fallback for operation '" + op_token(sym) + "'");
    }
  };
  if (e1) {
    s->rel_fallback = [fam](RelSym r, int a, int b) -> bool {
      if (r != RelSym::Leq)
        fail(ErrorCode::Internal, "no fallback for relation '" + rel_token(r) + "'");
      return fam->leq(fam->grid(a), fam->grid(b));
    };
  }
  return s;
}

EBuild build_e1(const SquarePartialGroup& p) {
  EBuild b;
  b.family = std::make_shared<const EFamily>(p, EFamily::Variant::E1);
  b.structure = efamily_structure(b.family);
  return b;
}

EBuild build_e2(const SquarePartialGroup& p, bool strict_compat) {
  EBuild b;
  b.family = std::make_shared<const EFamily>(p, EFamily::Variant::E2, strict_compat);
  b.structure = efamily_structure(b.family);
  return b;
}

std::shared_ptr<FiniteStructure> build_e0(const SquarePartialGroup& p) {
  require_valid_pgroup(p);
  const int np = p.size();
  if (np > 32)
    fail(ErrorCode::Unsupported,
         "partial groups larger than 32 elements are not supported by the matrix structure");
  uint32_t power[3];
  power[0] = 1u << p.identity;
  power[1] = 0;
  for (int i = 0; i < np; ++i)
    if (p.sqrt[static_cast<size_t>(i)]) power[1] |= 1u << i;
  power[2] = (np == 32) ? ~0u : (1u << np) - 1u;

  constexpr int kPos[6][2] = {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}};
  struct Ent {
    int a, i, j;
  };
  std::vector<Ent> ents;
  auto s = std::make_shared<FiniteStructure>();
  s->carrier.push_back("0");
  for (const auto& pos : kPos) {
    const int i = pos[0], j = pos[1];
    for (int a = 0; a < np; ++a) {
      if (!(power[j - i] >> a & 1u)) continue;
      ents.push_back(Ent{a, i, j});
      s->carrier.push_back(p.elements[static_cast<size_t>(a)] + "_" +
                           static_cast<char>('0' + i) + static_cast<char>('0' + j));
    }
  }
  const int m = 1 + static_cast<int>(ents.size());

  std::vector<int32_t> at(static_cast<size_t>(np) * 9, -1);
  auto slot = [np](int a, int i, int j) { return static_cast<size_t>(a) * 9 + 3 * i + j; };
  for (size_t t = 0; t < ents.size(); ++t)
    at[slot(ents[t].a, ents[t].i, ents[t].j)] = static_cast<int32_t>(t) + 1;

  s->signature.ops = {Op::Zero, Op::Meet,       Op::Dom,         Op::Ran,
                      Op::KernelLeft, Op::KernelRight, Op::Compose};
  s->op_tables[op_token(OpSymbol(Op::Zero))] = {0};

  std::vector<int32_t> meet(static_cast<size_t>(m) * m, 0);
  for (int x = 0; x < m; ++x) meet[static_cast<size_t>(x) * m + x] = x;
  s->op_tables[op_token(OpSymbol(Op::Meet))] = std::move(meet);

  std::vector<int32_t> domt(static_cast<size_t>(m), 0), rant(static_cast<size_t>(m), 0);
  for (size_t t = 0; t < ents.size(); ++t) {
    domt[t + 1] = at[slot(p.identity, ents[t].i, ents[t].i)];
    rant[t + 1] = at[slot(p.identity, ents[t].j, ents[t].j)];
  }
  s->op_tables[op_token(OpSymbol(Op::KernelLeft))] = domt;
  s->op_tables[op_token(OpSymbol(Op::KernelRight))] = rant;
  s->op_tables[op_token(OpSymbol(Op::Dom))] = std::move(domt);
  s->op_tables[op_token(OpSymbol(Op::Ran))] = std::move(rant);

  std::vector<int32_t> comp(static_cast<size_t>(m) * m, 0);
  for (size_t ta = 0; ta < ents.size(); ++ta) {
    for (size_t tb = 0; tb < ents.size(); ++tb) {
      if (ents[ta].j != ents[tb].i) continue;
      const int ab = p.prod(ents[ta].a, ents[tb].a);
      if (ab < 0) fail(ErrorCode::Internal, "undefined label product in the matrix structure");
      comp[(ta + 1) * static_cast<size_t>(m) + (tb + 1)] = at[slot(ab, ents[ta].i, ents[tb].j)];
    }
  }
  s->op_tables[op_token(OpSymbol(Op::Compose))] = std::move(comp);
  return s;
}

std::shared_ptr<FiniteStructure> build_b3(const Group& g) {
  g.validate();
  const int n = g.size();
  if (n > 64)
    fail(ErrorCode::Unsupported,
         "groups larger than 64 elements are not supported by the matrix-unit construction");
  auto s = std::make_shared<FiniteStructure>();
  s->carrier.push_back("0");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int e = 0; e < n; ++e)
        s->carrier.push_back(g.elements[static_cast<size_t>(e)] + "_" +
                             static_cast<char>('0' + i) + static_cast<char>('0' + j));
  const int m = 1 + 9 * n;
  auto idx = [n](int e, int i, int j) { return 1 + (i * 3 + j) * n + e; };

  s->signature.ops = {Op::Dom, Op::Ran, Op::KernelLeft, Op::KernelRight, Op::Converse,
                      Op::Compose};
  std::vector<int32_t> domt(static_cast<size_t>(m), 0), rant(static_cast<size_t>(m), 0),
      cvt(static_cast<size_t>(m), 0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int e = 0; e < n; ++e) {
        const int x = idx(e, i, j);
        domt[static_cast<size_t>(x)] = idx(g.identity, i, i);
        rant[static_cast<size_t>(x)] = idx(g.identity, j, j);
        cvt[static_cast<size_t>(x)] = idx(g.inverse(e), j, i);
      }
    }
  }
  s->op_tables[op_token(OpSymbol(Op::KernelLeft))] = domt;
  s->op_tables[op_token(OpSymbol(Op::KernelRight))] = rant;
  s->op_tables[op_token(OpSymbol(Op::Dom))] = std::move(domt);
  s->op_tables[op_token(OpSymbol(Op::Ran))] = std::move(rant);
  s->op_tables[op_token(OpSymbol(Op::Converse))] = std::move(cvt);

  std::vector<int32_t> comp(static_cast<size_t>(m) * m, 0);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int e = 0; e < n; ++e)
        for (int k = 0; k < 3; ++k)
          for (int f = 0; f < n; ++f)
            comp[static_cast<size_t>(idx(e, i, j)) * m + idx(f, j, k)] =
                idx(g.prod(e, f), i, k);
  s->op_tables[op_token(OpSymbol(Op::Compose))] = std::move(comp);
  return s;
}

RepresentationCandidate build_theta(const Group& g) {
  RepresentationCandidate c;
  c.structure = build_b3(g);
  const int n = g.size();
  c.base = 3 * n;
  c.assignment.reserve(c.structure->carrier.size());
  c.assignment.push_back(Relation::empty(c.base));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      for (int e = 0; e < n; ++e) {
        Relation r = Relation::empty(c.base);
        for (int h = 0; h < n; ++h) r.set(i * n + h, j * n + g.prod(h, e));
        c.assignment.push_back(std::move(r));
      }
    }
  }
  return c;
}

namespace {

Relation paint_grid(const Grid& g, const Group& gu, const std::vector<int>& emb, int np) {
  const int n = gu.size();
  Relation r = Relation::empty(3 * n);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const CellVal& v = g.at(i, j);
      switch (v.kind) {
        case CellVal::Kind::Zero:
          break;
        case CellVal::Kind::One:
          for (int h = 0; h < n; ++h)
            for (int h2 = 0; h2 < n; ++h2) r.set(i * n + h, j * n + h2);
          break;
        case CellVal::Kind::Plain: {
          const int ga = emb[v.label];
          for (int h = 0; h < n; ++h) r.set(i * n + h, j * n + gu.prod(h, ga));
          break;
        }
        case CellVal::Kind::Barred: {
          std::vector<char> forbidden(static_cast<size_t>(n));
          for (int h = 0; h < n; ++h) {
            std::fill(forbidden.begin(), forbidden.end(), 0);
            for (int mlab = 0; mlab < np; ++mlab)
              if (v.label >> mlab & 1u)
                forbidden[static_cast<size_t>(gu.prod(h, emb[static_cast<size_t>(mlab)]))] = 1;
            for (int h2 = 0; h2 < n; ++h2)
              if (!forbidden[static_cast<size_t>(h2)]) r.set(i * n + h, j * n + h2);
          }
          break;
        }
      }
    }
  }
  return r;
}

}  // namespace

ThetaPlusResult build_theta_plus(const SquarePartialGroup& p, const Group& g,
                                 const std::vector<int>& embedding) {
  require_valid_pgroup(p);
  g.validate();
  const int np = p.size();
  if (static_cast<int>(embedding.size()) != np)
    fail(ErrorCode::Argument, "embedding must assign a group element to every partial-group element");
  std::vector<char> used_img(static_cast<size_t>(g.size()), 0);
  for (int v : embedding) {
    if (v < 0 || v >= g.size())
      fail(ErrorCode::Argument, "embedding value out of range");
    if (used_img[static_cast<size_t>(v)]) fail(ErrorCode::Argument, "embedding is not injective");
    used_img[static_cast<size_t>(v)] = 1;
  }
  if (embedding[static_cast<size_t>(p.identity)] != g.identity)
    fail(ErrorCode::Argument, "embedding must send the identity to the group identity");
  for (int a = 0; a < np; ++a)
    for (int b = 0; b < np; ++b) {
      const int c = p.prod(a, b);
      if (c < 0) continue;
      if (g.prod(embedding[static_cast<size_t>(a)], embedding[static_cast<size_t>(b)]) !=
          embedding[static_cast<size_t>(c)])
        fail(ErrorCode::Argument, "embedding is not a homomorphism on defined products");
    }

  auto complement_covers = [](const Group& gu, const std::vector<int>& emb) {
    std::vector<char> in_image(static_cast<size_t>(gu.size()), 0);
    for (int v : emb) in_image[static_cast<size_t>(v)] = 1;
    std::vector<char> hit(static_cast<size_t>(gu.size()), 0);
    for (int s = 0; s < gu.size(); ++s) {
      if (in_image[static_cast<size_t>(s)]) continue;
      for (int t = 0; t < gu.size(); ++t) {
        if (in_image[static_cast<size_t>(t)]) continue;
        hit[static_cast<size_t>(gu.prod(s, t))] = 1;
      }
    }
    return std::all_of(hit.begin(), hit.end(), [](char c) { return c != 0; });
  };

  ThetaPlusResult res;
  res.group = g;
  res.embedding = embedding;
  if (!complement_covers(res.group, res.embedding)) {
    res.group = direct_product(make_cyclic(3), g);
    res.replaced = true;
    if (!complement_covers(res.group, res.embedding))
      fail(ErrorCode::Internal, "enlarged group still fails the complement condition");
  }

  auto fam = std::make_shared<const EFamily>(p, EFamily::Variant::E1);
  auto full = efamily_structure(fam);
  SignatureSpec sub;
  sub.ops = {OpSymbol(Op::Complement), OpSymbol(Op::Compose)};
  res.candidate.structure = std::make_shared<FiniteStructure>(full->reduct(sub));
  res.candidate.base = 3 * res.group.size();
  res.candidate.assignment.reserve(static_cast<size_t>(fam->size()));
  for (int idx = 0; idx < fam->size(); ++idx)
    res.candidate.assignment.push_back(paint_grid(fam->grid(idx), res.group, res.embedding, np));
  return res;
}

}  // namespace relwb
