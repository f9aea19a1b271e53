// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
//
// Green's preorders and equivalences on finite semigroups given by
// composition tables.
#ifndef RELWB_GREENS_HPP
#define RELWB_GREENS_HPP

#include <cstdint>
#include <vector>

#include "structure.hpp"

namespace relwb {

struct GreensClassification {
  int m = 0;
  std::vector<uint8_t> leq_L;  // m*m, entry (a,b): a is below b on the left
  std::vector<uint8_t> leq_R;
  std::vector<int> L;  // class ids in first-seen element order
  std::vector<int> R;
  std::vector<int> H;
  int num_L = 0;
  int num_R = 0;
  int num_H = 0;
};

// a is left-below b iff a = b or some x has x;b = a (dually on the right);
// L and R are the symmetric cores, H their common refinement. The table must
// be associative; a violation is a precondition error naming the triple.
GreensClassification greens_classify(const FiniteStructure& s);

// The full semigroup of binary relations on a base of size n (n <= 3) under
// composition, with elements named r<mask> by their bitmask.
FiniteStructure rel_semigroup_structure(int n);

}  // namespace relwb

#endif  // RELWB_GREENS_HPP
