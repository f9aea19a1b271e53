// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "opsym.hpp"
#include "relation.hpp"

namespace relwb {

struct Term {
  enum class Kind { Var, Apply };
  Kind kind = Kind::Var;
  std::string var;             // Kind::Var
  OpSymbol op;                 // Kind::Apply, including arity-0 constants
  std::vector<Term> children;

  static Term variable(const std::string& name);
  static Term apply(const OpSymbol& sym, std::vector<Term> args);
};

// S-expression term syntax, e.g. (compose (kl x) (complement y)).
// Operator heads accept the token aliases from parse_op_token; constants
// (0, 1, u, 1', 0') stand alone. Any other atom is a variable.
Term parse_term(const std::string& text);
std::string term_to_string(const Term& t);
std::set<std::string> term_variables(const Term& t);

// Bottom-up evaluation over Rel(X). The base size is taken from the
// environment; base_hint is required when the term has no variables.
Relation eval_concrete(const Term& t, const std::map<std::string, Relation>& env,
                       int base_hint = 0);

// The four injectivity formulas, evaluated on a concrete relation.
// power is the exponent of the kernel powers in formula 1 (>= 1).
bool check_inj_formula_concrete(int which, const Relation& a, int power = 1);

}  // namespace relwb
