// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
//
// Square partial groups, their validation, bounded completion to finite
// groups, and homotopies into composition structures.
#ifndef RELWB_PGROUP_HPP
#define RELWB_PGROUP_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "greens.hpp"
#include "structure.hpp"

namespace relwb {

// Partial binary system with identity e, a square-root subset on which the
// product is total, unique inverses on the square-root set, and no explicit
// associativity violations. product uses -1 for undefined.
struct SquarePartialGroup {
  std::vector<std::string> elements;
  std::vector<char> sqrt;
  int identity = 0;
  std::vector<int32_t> product;  // size m*m, -1 = undefined

  int size() const { return static_cast<int>(elements.size()); }
  bool defined(int a, int b) const { return prod(a, b) >= 0; }
  int prod(int a, int b) const {
    return product[static_cast<size_t>(a) * elements.size() + static_cast<size_t>(b)];
  }
  int index_of(const std::string& name) const;
};

struct PGroupReport {
  bool ok = true;
  std::vector<std::string> issues;
};

// Checks table well-formedness plus the four defining properties: identity
// law on all of P, totality on sqrt x sqrt, undefinedness outside the scheme
// except via e, unique inverses on sqrt, and no explicit associativity
// violations. Each violation names its witnesses.
PGroupReport pgroup_validate(const SquarePartialGroup& p);

struct Group {
  std::vector<std::string> elements;
  int identity = 0;
  std::vector<int32_t> product;  // total, size m*m

  int size() const { return static_cast<int>(elements.size()); }
  int prod(int a, int b) const {
    return product[static_cast<size_t>(a) * elements.size() + static_cast<size_t>(b)];
  }
  int inverse(int a) const;
  int index_of(const std::string& name) const;
  void validate() const;  // totality, associativity, identity, inverses
};

Group make_cyclic(int n);
Group make_symmetric3();
Group direct_product(const Group& a, const Group& b);

struct EmbedResult {
  bool found = false;
  int none_up_to = 0;
  Group group;
  std::vector<int> mapping;  // partial-group element index -> group index
};

// Backtracking Cayley-table completion for orders |P|..max_order: identity
// pinned at index 0, rows and columns kept Latin, fresh indices introduced in
// first-use order, associativity re-verified in full before reporting found.
EmbedResult embed_into_group(const SquarePartialGroup& p, int max_order);

// alpha, beta are defined on the square-root set (-1 elsewhere); gamma on all
// of P. Values are element indices of the target structure.
struct Homotopy {
  SquarePartialGroup pgroup;
  std::shared_ptr<const FiniteStructure> target;
  std::vector<int> alpha;
  std::vector<int> beta;
  std::vector<int> gamma;
};

// Maps a to <name>_01, b to <name>_12, c to <name>_02 in the target, where
// <name> is image_names[element]. With image_names = P's own names and target
// = the E0 structure this is the canonical homotopy.
Homotopy composed_homotopy(const SquarePartialGroup& p,
                           std::shared_ptr<const FiniteStructure> target,
                           const std::vector<std::string>& image_names);
Homotopy canonical_homotopy(const SquarePartialGroup& p,
                            std::shared_ptr<const FiniteStructure> e0);

struct HomotopyReport {
  bool ok = false;
  bool identity_holds = false;
  bool gamma_injective = false;
  bool alpha_one_class = false;
  bool beta_one_class = false;
  bool gamma_one_class = false;
  std::vector<std::string> issues;
};

// Verifies alpha(a);beta(b) = gamma(a*b) over sqrt x sqrt.
HomotopyReport check_homotopy(const Homotopy& h);

// Full H-embedding check: the homotopy identity, gamma injective, and each of
// the alpha, beta, gamma images inside a single H-class of the supplied
// classification (which must belong to h.target's composition table).
HomotopyReport check_H_embedding(const Homotopy& h, const GreensClassification& greens);

}  // namespace relwb

#endif  // RELWB_PGROUP_HPP
