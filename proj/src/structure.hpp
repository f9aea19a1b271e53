// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
//
// Finite abstract algebras over a relation-style signature, representation
// candidates over a concrete base, verification, bounded search, quotients,
// and the two structural lemma checks used by the CLI.
#ifndef RELWB_STRUCTURE_HPP
#define RELWB_STRUCTURE_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "opsym.hpp"
#include "relation.hpp"

namespace relwb {

// A finite structure: named carrier, signature, and operation/relation tables.
// Tables are keyed by canonical symbol token and stored flat (row-major for
// binary symbols). A table may be replaced by a fallback function; this is how
// very large constructed structures avoid materialising m*m composition
// tables.
class FiniteStructure {
 public:
  std::vector<std::string> carrier;
  SignatureSpec signature;
  std::map<std::string, std::vector<int32_t>> op_tables;
  std::map<std::string, std::vector<uint8_t>> rel_tables;
  std::function<int(const OpSymbol&, int, int)> op_fallback;
  std::function<bool(RelSym, int, int)> rel_fallback;

  int size() const { return static_cast<int>(carrier.size()); }
  const std::string& name(int i) const;
  // Linear scan; returns -1 when absent. Callers doing bulk lookups should
  // build their own map.
  int index_of(const std::string& element_name) const;

  bool has_op_table(const OpSymbol& sym) const;
  bool has_rel_table(RelSym sym) const;

  // Element index of op applied to the given argument indices. Unary ops take
  // a only; constants take neither. Missing table entries are a hard error.
  int op_value(const OpSymbol& sym, int a = -1, int b = -1) const;
  bool rel_value(RelSym sym, int a, int b = -1) const;

  // Same carrier and tables restricted to the given sub-signature.
  FiniteStructure reduct(const SignatureSpec& sub) const;

  // Well-formedness: nonempty carrier with unique names, every signature
  // symbol backed by a table of the right shape (or a fallback), values in
  // range, and leq (when tabulated) a partial order.
  void validate() const;
};

struct RepresentationCandidate {
  std::shared_ptr<const FiniteStructure> structure;
  int base = 0;
  std::vector<Relation> assignment;  // indexed like structure->carrier
};

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> violations;
};

// Checks that the assignment is an injective homomorphism into Rel(base):
// every operation table matches the semantic operation on assigned relations
// (u must be the universal relation, 1 need only contain every assigned
// relation) and every relation-symbol table matches its semantic clause.
// Violations are reported in deterministic order and capped.
VerifyResult verify_representation(const RepresentationCandidate& cand,
                                   int threads = 1, std::size_t max_violations = 20);

// Evaluates the injectivity formula `which` (0..3) on the abstract element
// via the structure's tables. Formula 3 substitutes 1 for a missing u and
// -(1') for a missing 0'. Missing symbols raise Unsupported.
bool check_inj_formula_abstract(const FiniteStructure& s, int elem, int which,
                                int power = 1);

struct SearchResult {
  bool found = false;
  int none_up_to = 0;
  RepresentationCandidate candidate;
};

// Bounded brute-force representation search over base sizes 1..max_base.
// Constants are pre-assigned, values forced by already-assigned arguments are
// propagated, and remaining elements are enumerated by increasing pair count.
// Generators (default: whole carrier) are enumerated first, in the given
// order. Any returned candidate passes verify_representation.
SearchResult search_representation(const FiniteStructure& s, int max_base,
                                   const std::vector<int>& generators = {});

// Collapses the base along the total equivalence relation assigned to
// identity_elem; every relation is replaced by its pointwise image on the
// quotient classes. Preconditions: signature contains - and ;, the candidate
// verifies, and identity_elem is assigned a total equivalence.
RepresentationCandidate quotient_representation(const RepresentationCandidate& cand,
                                                int identity_elem);

enum class LemmaVerdict { HypothesisUnmet, Confirmed, Violated };
std::string lemma_verdict_string(LemmaVerdict v);

struct LocalEquivalenceReport {
  LemmaVerdict verdict = LemmaVerdict::HypothesisUnmet;
  bool hypotheses_met = false;    // e;e=e and (-e);e = -e = e;(-e)
  bool universal_case = false;    // additionally (-e);(-e) = -e
  bool nonempty = false;
  bool local_equivalence = false;
  bool universal = false;         // only meaningful in the universal case
  bool complement_empty = false;  // only meaningful in the universal case
};

// If e is idempotent and absorbs its complement on both sides, the assigned
// relation must be a nonempty local equivalence; if the complement is also
// idempotent, the assigned relation must be universal and the complement's
// empty.
LocalEquivalenceReport check_local_equivalence_lemma(const RepresentationCandidate& cand,
                                                     int e);

struct IdempotentInjectionReport {
  LemmaVerdict domain_verdict = LemmaVerdict::HypothesisUnmet;
  LemmaVerdict range_verdict = LemmaVerdict::HypothesisUnmet;
};

// If e;1 = a;1, e is idempotent, and formula 3 holds abstractly for e, the
// assigned relation of e must equal dom(a); dually with 1;e = 1;a and ran.
IdempotentInjectionReport check_idempotent_injection_lemma(
    const RepresentationCandidate& cand, int e, int a);

}  // namespace relwb

#endif  // RELWB_STRUCTURE_HPP
