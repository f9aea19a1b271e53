// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
//
// The reduction structures over a square partial group P: the plain matrix
// structure E0(P), the formal-sum structures E1(P) and E2(P), the inverse
// semigroup B3(G) over a finite group, and the concrete representations
// theta (of B3) and theta-plus (of E1 in signature {-,;}).
#ifndef RELWB_CONSTRUCTIONS_HPP
#define RELWB_CONSTRUCTIONS_HPP

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "pgroup.hpp"
#include "structure.hpp"

namespace relwb {

// One cell of a formal-sum grid. Plain carries a partial-group element index;
// Barred carries a nonempty bitmask of element indices (always a singleton in
// E1). The empty barred label is normalised away to One.
struct CellVal {
  enum class Kind : uint8_t { Zero, One, Plain, Barred };
  Kind kind = Kind::Zero;
  uint16_t label = 0;
  bool operator==(const CellVal&) const = default;
};

// 3x3 grid of cells, row-major. Valid grids carry at most one counted cell
// (Plain or Barred) per row and per column; One and Zero are unrestricted.
// Plain/Barred cells live at positions i <= j with labels from sqrt-power
// (j - i).
struct Grid {
  std::array<CellVal, 9> cells{};
  CellVal& at(int i, int j) { return cells[static_cast<size_t>(3 * i + j)]; }
  const CellVal& at(int i, int j) const { return cells[static_cast<size_t>(3 * i + j)]; }
  bool operator==(const Grid&) const = default;
};

// Enumerated formal-sum carrier with on-demand grid operations. E2's strict
// mode drops the mirrored plain;barred composition clause and zeroes products
// through lower-triangle One cells, matching the narrowest reading of the
// defining equations.
class EFamily {
 public:
  enum class Variant { E1, E2 };

  EFamily(const SquarePartialGroup& p, Variant v, bool strict_compat = false);

  Variant variant() const { return variant_; }
  bool strict_compat() const { return strict_; }
  const SquarePartialGroup& pgroup() const { return p_; }
  int size() const { return static_cast<int>(grids_.size()); }
  const Grid& grid(int idx) const { return grids_[static_cast<size_t>(idx)]; }
  const std::string& name_of(int idx) const { return names_[static_cast<size_t>(idx)]; }
  int index_of(const Grid& g) const;
  // Carrier size under the alternative uniqueness reading that restricts only
  // plain entries (barred entries free like One); reported as a diagnostic.
  uint64_t alternative_uniqueness_count() const { return alt_count_; }

  Grid zero_grid() const;
  Grid one_grid() const;
  Grid id_grid() const;
  Grid diversity_grid() const;

  Grid compose(const Grid& a, const Grid& b) const;
  Grid orth_join(const Grid& a, const Grid& b) const;
  Grid meet(const Grid& a, const Grid& b) const;        // E2 only
  Grid complement(const Grid& a) const;                 // E1 only
  bool leq(const Grid& a, const Grid& b) const;         // E1 only
  Grid dom_grid(const Grid& a) const;
  Grid ran_grid(const Grid& a) const;
  Grid antidom_grid(const Grid& a) const;
  Grid antiran_grid(const Grid& a) const;
  Grid kernel_left_grid(const Grid& a) const;
  Grid kernel_right_grid(const Grid& a) const;

  // Fast composite-by-index used by the structure fallback.
  int compose_idx(int a, int b) const;

 private:
  friend std::shared_ptr<FiniteStructure> efamily_structure(
      std::shared_ptr<const EFamily> fam);

  SquarePartialGroup p_;
  Variant variant_;
  bool strict_ = false;
  std::vector<uint16_t> sqrt_power_;  // masks for steps 0,1,2
  std::vector<std::vector<CellVal>> domain_;  // per position, canonical order
  std::vector<Grid> grids_;
  std::vector<std::string> names_;
  std::vector<uint16_t> codes_;     // size m*9
  std::vector<uint64_t> strides_;   // mixed-radix strides per position
  uint64_t key_space_ = 0;
  std::vector<int32_t> direct_index_;  // direct-address when key space is small
  std::unordered_map<uint64_t, int32_t> hash_index_;  // otherwise
  std::vector<std::vector<uint16_t>> mul_;   // 27 tables, (i,j,k) flattened
  std::vector<std::vector<int32_t>> join_;   // 9 tables, -1 marks closure errors
  uint64_t alt_count_ = 0;

  int code_of(int pos, const CellVal& v) const;
  CellVal cell_mul(const CellVal& a, int i, int j, const CellVal& b, int k) const;
  CellVal cell_join(const CellVal& a, const CellVal& b, int i, int j) const;
  std::string cell_name(const CellVal& v, int i, int j) const;
  uint64_t key_of_codes(const uint16_t* c) const;
};

struct EBuild {
  std::shared_ptr<const EFamily> family;
  std::shared_ptr<FiniteStructure> structure;
};

// Structure over the family carrier: constants and unary symbols as dense
// tables, binary symbols and the E1 order as fallbacks bound to the family.
std::shared_ptr<FiniteStructure> efamily_structure(std::shared_ptr<const EFamily> fam);

std::shared_ptr<FiniteStructure> build_e0(const SquarePartialGroup& p);
EBuild build_e1(const SquarePartialGroup& p);
EBuild build_e2(const SquarePartialGroup& p, bool strict_compat = false);

// Inverse semigroup of group-labelled 3x3 matrix units plus zero, with
// composition, converse, and the derived domain/range/kernel tables.
std::shared_ptr<FiniteStructure> build_b3(const Group& g);

// The standard representation of B3(G) over base 3*|G|: block i holds the
// points (i,h) flattened to i*|G| + h.
RepresentationCandidate build_theta(const Group& g);

struct ThetaPlusResult {
  RepresentationCandidate candidate;  // structure: E1(P) reduct to {-, ;}
  Group group;                        // group actually used (possibly enlarged)
  std::vector<int> embedding;         // P index -> group index actually used
  bool replaced = false;              // true when G was replaced by Z3 x G
};

// Lifts an embedding of P into G to a representation of E1(P): plain cells
// map to graphs of group elements, barred cells to unions of the remaining
// graphs, One cells to full blocks. Requires (G \ P)*(G \ P) = G, enforced by
// replacing G with Z3 x G when needed.
ThetaPlusResult build_theta_plus(const SquarePartialGroup& p, const Group& g,
                                 const std::vector<int>& embedding);

}  // namespace relwb

#endif  // RELWB_CONSTRUCTIONS_HPP
