// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#include "relation.hpp"

#include <bit>

#include "error.hpp"

namespace relwb {

namespace {

void check_same_base(const Relation& a, const Relation& b) {
  if (a.base_size() != b.base_size())
    fail(ErrorCode::Dimension, "base size mismatch: " + std::to_string(a.base_size()) +
                                   " vs " + std::to_string(b.base_size()));
}

// Mask selecting the valid bits of the last word of a row.
uint64_t tail_mask(int n) {
  int rem = n % 64;
  return rem == 0 ? ~0ull : (1ull << rem) - 1;
}

bool rows_intersect(const Relation& a, int x, int y) {
  const uint64_t* rx = a.row(x);
  const uint64_t* ry = a.row(y);
  for (int w = 0; w < a.words_per_row(); ++w)
    if (rx[w] & ry[w]) return true;
  return false;
}

}  // namespace

Relation::Relation(int n) : n_(n), wpr_((n + 63) / 64) {
  if (n <= 0) fail(ErrorCode::Argument, "base size must be positive");
  bits_.assign(static_cast<size_t>(n_) * wpr_, 0);
}

Relation Relation::identity(int n) {
  Relation r(n);
  for (int i = 0; i < n; ++i) r.set(i, i);
  return r;
}

Relation Relation::diversity(int n) {
  Relation r = universal(n);
  for (int i = 0; i < n; ++i) r.unset(i, i);
  return r;
}

Relation Relation::universal(int n) {
  Relation r(n);
  uint64_t tail = tail_mask(n);
  for (int x = 0; x < n; ++x) {
    uint64_t* row = r.row(x);
    for (int w = 0; w < r.wpr_; ++w) row[w] = (w + 1 == r.wpr_) ? tail : ~0ull;
  }
  return r;
}

Relation Relation::from_pairs(int n, const std::vector<std::pair<int, int>>& pairs) {
  Relation r(n);
  for (const auto& [x, y] : pairs) r.set(x, y);
  return r;
}

Relation Relation::from_mask(int n, uint64_t mask) {
  if (n <= 0 || n * n > 64) fail(ErrorCode::Argument, "from_mask needs 0 < n*n <= 64");
  Relation r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (mask >> (x * n + y) & 1) r.set(x, y);
  return r;
}

uint64_t Relation::to_mask() const {
  if (n_ * n_ > 64) fail(ErrorCode::Argument, "to_mask needs n*n <= 64");
  uint64_t mask = 0;
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (test(x, y)) mask |= 1ull << (x * n_ + y);
  return mask;
}

void Relation::check_index(int x, int y) const {
  if (x < 0 || x >= n_ || y < 0 || y >= n_)
    fail(ErrorCode::Argument, "pair (" + std::to_string(x) + "," + std::to_string(y) +
                                  ") out of range for base " + std::to_string(n_));
}

bool Relation::test(int x, int y) const {
  check_index(x, y);
  return row(x)[y / 64] >> (y % 64) & 1;
}

void Relation::set(int x, int y) {
  check_index(x, y);
  row(x)[y / 64] |= 1ull << (y % 64);
}

void Relation::unset(int x, int y) {
  check_index(x, y);
  row(x)[y / 64] &= ~(1ull << (y % 64));
}

size_t Relation::pair_count() const {
  size_t c = 0;
  for (uint64_t w : bits_) c += std::popcount(w);
  return c;
}

bool Relation::is_empty() const {
  for (uint64_t w : bits_)
    if (w) return false;
  return true;
}

std::vector<std::pair<int, int>> Relation::pairs() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(pair_count());
  for (int x = 0; x < n_; ++x) {
    const uint64_t* r = row(x);
    for (int w = 0; w < wpr_; ++w) {
      uint64_t bits = r[w];
      while (bits) {
        int y = w * 64 + std::countr_zero(bits);
        out.emplace_back(x, y);
        bits &= bits - 1;
      }
    }
  }
  return out;
}

bool Relation::subset_of(const Relation& other) const {
  check_same_base(*this, other);
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~other.bits_[i]) return false;
  return true;
}

bool Relation::operator==(const Relation& other) const {
  return n_ == other.n_ && bits_ == other.bits_;
}

uint64_t Relation::hash() const {
  uint64_t h = 1469598103934665603ull ^ static_cast<uint64_t>(n_);
  for (uint64_t w : bits_) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return h;
}

Relation compose(const Relation& a, const Relation& b) {
  check_same_base(a, b);
  int n = a.base_size();
  int wpr = a.words_per_row();
  Relation out(n);
  for (int x = 0; x < n; ++x) {
    const uint64_t* rx = a.row(x);
    uint64_t* ox = out.row(x);
    for (int w = 0; w < wpr; ++w) {
      uint64_t bits = rx[w];
      while (bits) {
        int y = w * 64 + std::countr_zero(bits);
        const uint64_t* ry = b.row(y);
        for (int v = 0; v < wpr; ++v) ox[v] |= ry[v];
        bits &= bits - 1;
      }
    }
  }
  return out;
}

Relation complement(const Relation& a) {
  int n = a.base_size();
  Relation out(n);
  uint64_t tail = tail_mask(n);
  for (int x = 0; x < n; ++x) {
    const uint64_t* rx = a.row(x);
    uint64_t* ox = out.row(x);
    for (int w = 0; w < a.words_per_row(); ++w)
      ox[w] = ~rx[w] & ((w + 1 == a.words_per_row()) ? tail : ~0ull);
  }
  return out;
}

Relation converse(const Relation& a) {
  int n = a.base_size();
  Relation out(n);
  for (const auto& [x, y] : a.pairs()) out.set(y, x);
  return out;
}

Relation join(const Relation& a, const Relation& b) {
  check_same_base(a, b);
  Relation out = a;
  for (int x = 0; x < b.base_size(); ++x) {
    uint64_t* ox = out.row(x);
    const uint64_t* rx = b.row(x);
    for (int w = 0; w < b.words_per_row(); ++w) ox[w] |= rx[w];
  }
  return out;
}

Relation meet(const Relation& a, const Relation& b) {
  check_same_base(a, b);
  Relation out = a;
  for (int x = 0; x < b.base_size(); ++x) {
    uint64_t* ox = out.row(x);
    const uint64_t* rx = b.row(x);
    for (int w = 0; w < b.words_per_row(); ++w) ox[w] &= rx[w];
  }
  return out;
}

Relation implication(const Relation& a, const Relation& b) {
  return join(b, complement(a));
}

Relation dom(const Relation& a) {
  int n = a.base_size();
  Relation out(n);
  for (int x = 0; x < n; ++x) {
    const uint64_t* rx = a.row(x);
    for (int w = 0; w < a.words_per_row(); ++w)
      if (rx[w]) {
        out.set(x, x);
        break;
      }
  }
  return out;
}

Relation ran(const Relation& a) {
  int n = a.base_size();
  int wpr = a.words_per_row();
  std::vector<uint64_t> cols(wpr, 0);
  for (int x = 0; x < n; ++x) {
    const uint64_t* rx = a.row(x);
    for (int w = 0; w < wpr; ++w) cols[w] |= rx[w];
  }
  Relation out(n);
  for (int y = 0; y < n; ++y)
    if (cols[y / 64] >> (y % 64) & 1) out.set(y, y);
  return out;
}

Relation antidom(const Relation& a) {
  Relation d = dom(a);
  Relation out(a.base_size());
  for (int x = 0; x < a.base_size(); ++x)
    if (!d.test(x, x)) out.set(x, x);
  return out;
}

Relation antiran(const Relation& a) {
  Relation r = ran(a);
  Relation out(a.base_size());
  for (int y = 0; y < a.base_size(); ++y)
    if (!r.test(y, y)) out.set(y, y);
  return out;
}

Relation kernel_left(const Relation& a) {
  int n = a.base_size();
  Relation out(n);
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y)
      if (rows_intersect(a, x, y)) {
        out.set(x, y);
        out.set(y, x);
      }
  return out;
}

Relation kernel_right(const Relation& a) {
  // exists z with a(z,x) and a(z,y): distribute each row as a clique
  int n = a.base_size();
  int wpr = a.words_per_row();
  Relation out(n);
  for (int z = 0; z < n; ++z) {
    const uint64_t* rz = a.row(z);
    for (int w = 0; w < wpr; ++w) {
      uint64_t bits = rz[w];
      while (bits) {
        int x = w * 64 + std::countr_zero(bits);
        uint64_t* ox = out.row(x);
        for (int v = 0; v < wpr; ++v) ox[v] |= rz[v];
        bits &= bits - 1;
      }
    }
  }
  return out;
}

Relation kernel_left_power(const Relation& a, int n) {
  if (n < 1) fail(ErrorCode::Argument, "kernel power exponent must be >= 1");
  Relation k = kernel_left(a);
  Relation out = k;
  for (int i = 1; i < n; ++i) out = compose(k, out);
  return out;
}

Relation kernel_right_power(const Relation& a, int n) {
  if (n < 1) fail(ErrorCode::Argument, "kernel power exponent must be >= 1");
  Relation k = kernel_right(a);
  Relation out = k;
  for (int i = 1; i < n; ++i) out = compose(k, out);
  return out;
}

Relation orthogonal_join(const Relation& a, const Relation& b) {
  check_same_base(a, b);
  int n = a.base_size();
  int wpr = a.words_per_row();
  std::vector<uint64_t> ran_bits(wpr, 0);
  for (int x = 0; x < n; ++x) {
    const uint64_t* rx = a.row(x);
    for (int w = 0; w < wpr; ++w) ran_bits[w] |= rx[w];
  }
  Relation out = a;
  for (int x = 0; x < n; ++x) {
    const uint64_t* ax = a.row(x);
    bool in_dom = false;
    for (int w = 0; w < wpr; ++w)
      if (ax[w]) {
        in_dom = true;
        break;
      }
    if (in_dom) continue;
    const uint64_t* bx = b.row(x);
    uint64_t* ox = out.row(x);
    for (int w = 0; w < wpr; ++w) ox[w] |= bx[w] & ~ran_bits[w];
  }
  return out;
}

bool is_injective_pmap(const Relation& a) {
  int n = a.base_size();
  int wpr = a.words_per_row();
  std::vector<uint64_t> seen_cols(wpr, 0);
  for (int x = 0; x < n; ++x) {
    const uint64_t* rx = a.row(x);
    int cnt = 0;
    for (int w = 0; w < wpr; ++w) {
      cnt += std::popcount(rx[w]);
      if (rx[w] & seen_cols[w]) return false;  // column hit twice
      seen_cols[w] |= rx[w];
    }
    if (cnt > 1) return false;  // row not functional
  }
  return true;
}

bool is_local_equivalence(const Relation& a) {
  int n = a.base_size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (a.test(x, y) && !a.test(y, x)) return false;
  // transitive: for y in row x, row y must be within row x
  for (int x = 0; x < n; ++x) {
    const uint64_t* rx = a.row(x);
    for (int w = 0; w < a.words_per_row(); ++w) {
      uint64_t bits = rx[w];
      while (bits) {
        int y = w * 64 + std::countr_zero(bits);
        const uint64_t* ry = a.row(y);
        for (int v = 0; v < a.words_per_row(); ++v)
          if (ry[v] & ~rx[v]) return false;
        bits &= bits - 1;
      }
    }
  }
  return true;
}

}  // namespace relwb
