// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#include "opsym.hpp"

#include <algorithm>

#include "error.hpp"

namespace relwb {

int arity(Op op) {
  switch (op) {
    case Op::Zero:
    case Op::Top:
    case Op::Universal:
    case Op::Id:
    case Op::Diversity:
      return 0;
    case Op::Complement:
    case Op::Converse:
    case Op::Dom:
    case Op::Ran:
    case Op::Antidom:
    case Op::Antiran:
    case Op::KernelLeft:
    case Op::KernelRight:
    case Op::KernelLeftPower:
    case Op::KernelRightPower:
      return 1;
    case Op::Join:
    case Op::Meet:
    case Op::Implies:
    case Op::OrthJoin:
    case Op::Compose:
      return 2;
  }
  fail(ErrorCode::Internal, "unknown op");
}

std::string op_token(const OpSymbol& sym) {
  switch (sym.op) {
    case Op::Zero: return "0";
    case Op::Top: return "1";
    case Op::Universal: return "u";
    case Op::Complement: return "-";
    case Op::Join: return "+";
    case Op::Meet: return ".";
    case Op::Implies: return "=>";
    case Op::Id: return "1'";
    case Op::Diversity: return "0'";
    case Op::Converse: return "cv";
    case Op::Dom: return "dom";
    case Op::Ran: return "ran";
    case Op::Antidom: return "Ad";
    case Op::Antiran: return "Ar";
    case Op::KernelLeft: return "kl";
    case Op::KernelRight: return "kr";
    case Op::KernelLeftPower: return "kl^" + std::to_string(sym.power);
    case Op::KernelRightPower: return "kr^" + std::to_string(sym.power);
    case Op::OrthJoin: return "ojoin";
    case Op::Compose: return ";";
  }
  fail(ErrorCode::Internal, "unknown op");
}

OpSymbol parse_op_token(const std::string& token) {
  if (token == "0") return Op::Zero;
  if (token == "1") return Op::Top;
  if (token == "u") return Op::Universal;
  if (token == "-" || token == "not" || token == "complement") return Op::Complement;
  if (token == "+" || token == "join") return Op::Join;
  if (token == "." || token == "meet") return Op::Meet;
  if (token == "=>" || token == "implies") return Op::Implies;
  if (token == "1'" || token == "id") return Op::Id;
  if (token == "0'" || token == "div" || token == "diversity") return Op::Diversity;
  if (token == "cv" || token == "converse") return Op::Converse;
  if (token == "dom") return Op::Dom;
  if (token == "ran") return Op::Ran;
  if (token == "Ad" || token == "antidom") return Op::Antidom;
  if (token == "Ar" || token == "antiran") return Op::Antiran;
  if (token == "kl") return Op::KernelLeft;
  if (token == "kr") return Op::KernelRight;
  if (token == "ojoin") return Op::OrthJoin;
  if (token == ";" || token == "compose") return Op::Compose;
  if (token.rfind("kl^", 0) == 0 || token.rfind("kr^", 0) == 0) {
    int power = 0;
    try {
      size_t used = 0;
      power = std::stoi(token.substr(3), &used);
      if (used != token.size() - 3) power = 0;
    } catch (...) {
      power = 0;
    }
    if (power < 1) fail(ErrorCode::Parse, "bad kernel power token '" + token + "'");
    return OpSymbol(token[1] == 'l' ? Op::KernelLeftPower : Op::KernelRightPower, power);
  }
  fail(ErrorCode::Parse, "unknown operation token '" + token + "'");
}

std::string rel_token(RelSym r) {
  switch (r) {
    case RelSym::Leq: return "leq";
    case RelSym::Inj: return "inj";
    case RelSym::EqDom: return "eqdom";
    case RelSym::EqRan: return "eqran";
  }
  fail(ErrorCode::Internal, "unknown relation symbol");
}

RelSym parse_rel_token(const std::string& token) {
  if (token == "leq") return RelSym::Leq;
  if (token == "inj") return RelSym::Inj;
  if (token == "eqdom") return RelSym::EqDom;
  if (token == "eqran") return RelSym::EqRan;
  fail(ErrorCode::Parse, "unknown relation token '" + token + "'");
}

bool SignatureSpec::has_op(Op op) const {
  return std::any_of(ops.begin(), ops.end(), [&](const OpSymbol& s) { return s.op == op; });
}

bool SignatureSpec::has_op(const OpSymbol& sym) const {
  return std::find(ops.begin(), ops.end(), sym) != ops.end();
}

bool SignatureSpec::has_rel(RelSym r) const {
  return std::find(rels.begin(), rels.end(), r) != rels.end();
}

SignatureSpec preset_signature(const std::string& name) {
  SignatureSpec s;
  if (name == "tarski-minus") {
    s.ops = {Op::Complement, Op::Compose};
  } else if (name == "kernels") {
    s.ops = {Op::KernelLeft, Op::KernelRight, Op::Compose};
  } else if (name == "kernel-oasis") {
    s.ops = {Op::Zero, Op::Top, Op::Complement, Op::Diversity, Op::Id,
             Op::Dom, Op::Ran, Op::Antidom, Op::Antiran,
             Op::KernelLeft, Op::KernelRight, Op::OrthJoin, Op::Compose};
    s.rels = {RelSym::Leq};
  } else if (name == "kernel-meet") {
    s.ops = {Op::Zero, Op::Top, Op::Meet, Op::Id, Op::Diversity,
             Op::Dom, Op::Ran, Op::KernelLeft, Op::KernelRight,
             Op::Antidom, Op::Antiran, Op::OrthJoin, Op::Compose};
  } else if (name == "e0") {
    s.ops = {Op::Zero, Op::Meet, Op::Dom, Op::Ran,
             Op::KernelLeft, Op::KernelRight, Op::Compose};
  } else if (name == "oasis") {
    s.ops = {Op::Dom, Op::Ran, Op::Converse, Op::Compose};
    s.rels = {RelSym::Leq};
  } else if (name == "boolean-monoid") {
    s.ops = {Op::Zero, Op::Top, Op::Complement, Op::Join, Op::Id, Op::Compose};
  } else if (name == "sigma0") {
    s.ops = {Op::Id, Op::Converse, Op::Compose};
    s.rels = {RelSym::Leq};
  } else if (name == "sigma1") {
    s.ops = {Op::Id, OpSymbol(Op::KernelLeftPower, 1), OpSymbol(Op::KernelRightPower, 1)};
    s.rels = {RelSym::Leq};
  } else if (name == "sigma2") {
    s.ops = {Op::Zero, Op::Diversity, Op::Meet, Op::Compose};
  } else if (name == "sigma3") {
    s.ops = {Op::Diversity, Op::Universal, Op::Complement, Op::Compose};
  } else {
    fail(ErrorCode::Argument, "unknown signature preset '" + name + "'");
  }
  return s;
}

std::vector<std::string> preset_names() {
  return {"tarski-minus", "kernels",       "kernel-oasis", "kernel-meet",
          "e0",           "oasis",         "boolean-monoid",
          "sigma0",       "sigma1",        "sigma2",       "sigma3"};
}

Relation eval_semantic(const OpSymbol& sym, int n, const Relation* a, const Relation* b) {
  int ar = arity(sym.op);
  if (ar >= 1 && a == nullptr) fail(ErrorCode::Argument, "missing operand");
  if (ar == 2 && b == nullptr) fail(ErrorCode::Argument, "missing second operand");
  switch (sym.op) {
    case Op::Zero: return Relation::empty(n);
    case Op::Top: return Relation::universal(n);  // top of Rel(X) is universal
    case Op::Universal: return Relation::universal(n);
    case Op::Complement: return complement(*a);
    case Op::Join: return join(*a, *b);
    case Op::Meet: return meet(*a, *b);
    case Op::Implies: return implication(*a, *b);
    case Op::Id: return Relation::identity(n);
    case Op::Diversity: return Relation::diversity(n);
    case Op::Converse: return converse(*a);
    case Op::Dom: return dom(*a);
    case Op::Ran: return ran(*a);
    case Op::Antidom: return antidom(*a);
    case Op::Antiran: return antiran(*a);
    case Op::KernelLeft: return kernel_left(*a);
    case Op::KernelRight: return kernel_right(*a);
    case Op::KernelLeftPower: return kernel_left_power(*a, sym.power);
    case Op::KernelRightPower: return kernel_right_power(*a, sym.power);
    case Op::OrthJoin: return orthogonal_join(*a, *b);
    case Op::Compose: return compose(*a, *b);
  }
  fail(ErrorCode::Internal, "unknown op");
}

bool eval_rel_semantic(RelSym r, const Relation& a, const Relation& b) {
  switch (r) {
    case RelSym::Leq: return a.subset_of(b);
    case RelSym::Inj: return is_injective_pmap(a);
    case RelSym::EqDom: return dom(a) == dom(b);
    case RelSym::EqRan: return ran(a) == ran(b);
  }
  fail(ErrorCode::Internal, "unknown relation symbol");
}

}  // namespace relwb
