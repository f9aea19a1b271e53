// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "relation.hpp"

namespace relwb {

// The operation catalogue. Every symbol has a fixed set-theoretic meaning
// over a base X, evaluated by eval_semantic below; abstract structures carry
// tables for a chosen subset of these.
enum class Op {
  Zero,        // "0"   constant, empty relation
  Top,         // "1"   constant, top element (contains everything; may differ from u)
  Universal,   // "u"   constant, must be X x X
  Complement,  // "-"
  Join,        // "+"
  Meet,        // "."
  Implies,     // "=>"
  Id,          // "1'"
  Diversity,   // "0'"
  Converse,    // "cv"
  Dom,         // "dom"
  Ran,         // "ran"
  Antidom,     // "Ad"
  Antiran,     // "Ar"
  KernelLeft,  // "kl"
  KernelRight, // "kr"
  KernelLeftPower,   // "kl^n"
  KernelRightPower,  // "kr^n"
  OrthJoin,    // "ojoin"
  Compose,     // ";"
};

struct OpSymbol {
  Op op = Op::Compose;
  int power = 1;  // only meaningful for kernel powers

  OpSymbol() = default;
  OpSymbol(Op o) : op(o) {}
  OpSymbol(Op o, int p) : op(o), power(p) {}

  bool operator==(const OpSymbol& other) const {
    if (op != other.op) return false;
    if (op == Op::KernelLeftPower || op == Op::KernelRightPower)
      return power == other.power;
    return true;
  }
};

int arity(Op op);
std::string op_token(const OpSymbol& sym);
OpSymbol parse_op_token(const std::string& token);

enum class RelSym {
  Leq,    // "leq"    containment
  Inj,    // "inj"    injective partial function
  EqDom,  // "eqdom"  equal domains
  EqRan,  // "eqran"  equal ranges
};

std::string rel_token(RelSym r);
RelSym parse_rel_token(const std::string& token);

struct SignatureSpec {
  std::vector<OpSymbol> ops;
  std::vector<RelSym> rels;

  bool has_op(Op op) const;
  bool has_op(const OpSymbol& sym) const;
  bool has_rel(RelSym r) const;
};

// Named signature presets; throws on unknown name.
SignatureSpec preset_signature(const std::string& name);
std::vector<std::string> preset_names();

// Semantic evaluation of a catalogue symbol over base n. Unary ops ignore b.
Relation eval_semantic(const OpSymbol& sym, int n, const Relation* a, const Relation* b);
bool eval_rel_semantic(RelSym r, const Relation& a, const Relation& b);

}  // namespace relwb
