// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace relwb {

// A binary relation over {0..n-1}, stored as an n x n bit matrix.
// Immutable value semantics: every operation below returns a fresh value.
class Relation {
 public:
  Relation() = default;
  explicit Relation(int n);

  static Relation empty(int n) { return Relation(n); }
  static Relation identity(int n);
  static Relation diversity(int n);
  static Relation universal(int n);
  static Relation from_pairs(int n, const std::vector<std::pair<int, int>>& pairs);
  // Row-major bit mask, bit (x*n+y) set iff (x,y) in the relation. Needs n*n <= 64.
  static Relation from_mask(int n, uint64_t mask);

  int base_size() const { return n_; }
  int words_per_row() const { return wpr_; }
  bool test(int x, int y) const;
  void set(int x, int y);
  void unset(int x, int y);

  const uint64_t* row(int x) const { return bits_.data() + static_cast<size_t>(x) * wpr_; }
  uint64_t* row(int x) { return bits_.data() + static_cast<size_t>(x) * wpr_; }

  size_t pair_count() const;
  bool is_empty() const;
  std::vector<std::pair<int, int>> pairs() const;  // sorted lexicographically
  uint64_t to_mask() const;                        // inverse of from_mask

  bool subset_of(const Relation& other) const;
  bool operator==(const Relation& other) const;
  bool operator!=(const Relation& other) const { return !(*this == other); }

  uint64_t hash() const;

 private:
  void check_index(int x, int y) const;
  int n_ = 0;
  int wpr_ = 0;
  std::vector<uint64_t> bits_;
};

Relation compose(const Relation& a, const Relation& b);
Relation complement(const Relation& a);
Relation converse(const Relation& a);
Relation join(const Relation& a, const Relation& b);
Relation meet(const Relation& a, const Relation& b);
Relation implication(const Relation& a, const Relation& b);  // b or not a
Relation dom(const Relation& a);
Relation ran(const Relation& a);
Relation antidom(const Relation& a);
Relation antiran(const Relation& a);
// Direct evaluation of the defining clause (exists z with a(x,z) and a(y,z));
// the compose/converse route is kept in the tests as a cross-check.
Relation kernel_left(const Relation& a);
Relation kernel_right(const Relation& a);
Relation kernel_left_power(const Relation& a, int n);
Relation kernel_right_power(const Relation& a, int n);
Relation orthogonal_join(const Relation& a, const Relation& b);

bool is_injective_pmap(const Relation& a);
bool is_local_equivalence(const Relation& a);

}  // namespace relwb
