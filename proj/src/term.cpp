// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#include "term.hpp"

#include "error.hpp"

namespace relwb {

Term Term::variable(const std::string& name) {
  Term t;
  t.kind = Kind::Var;
  t.var = name;
  return t;
}

Term Term::apply(const OpSymbol& sym, std::vector<Term> args) {
  if (static_cast<int>(args.size()) != arity(sym.op))
    fail(ErrorCode::Parse, "operation '" + op_token(sym) + "' expects " +
                               std::to_string(arity(sym.op)) + " arguments, got " +
                               std::to_string(args.size()));
  Term t;
  t.kind = Kind::Apply;
  t.op = sym;
  t.children = std::move(args);
  return t;
}

namespace {

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '(' || c == ')') {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
      out.push_back(std::string(1, c));
    } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

bool is_op_token(const std::string& tok) {
  try {
    parse_op_token(tok);
    return true;
  } catch (const Error&) {
    return false;
  }
}

Term atom_term(const std::string& tok) {
  if (is_op_token(tok)) {
    OpSymbol sym = parse_op_token(tok);
    if (arity(sym.op) != 0)
      fail(ErrorCode::Parse, "'" + tok + "' is an operation token, not a variable");
    return Term::apply(sym, {});
  }
  return Term::variable(tok);
}

Term parse_at(const std::vector<std::string>& toks, size_t& pos) {
  if (pos >= toks.size()) fail(ErrorCode::Parse, "unexpected end of term");
  const std::string& tok = toks[pos];
  if (tok == ")") fail(ErrorCode::Parse, "unexpected ')'");
  if (tok != "(") {
    ++pos;
    return atom_term(tok);
  }
  ++pos;  // consume '('
  if (pos >= toks.size()) fail(ErrorCode::Parse, "unexpected end of term after '('");
  OpSymbol head = parse_op_token(toks[pos]);
  ++pos;
  std::vector<Term> args;
  while (pos < toks.size() && toks[pos] != ")") args.push_back(parse_at(toks, pos));
  if (pos >= toks.size()) fail(ErrorCode::Parse, "missing ')'");
  ++pos;  // consume ')'
  return Term::apply(head, std::move(args));
}

}  // namespace

Term parse_term(const std::string& text) {
  std::vector<std::string> toks = tokenize(text);
  if (toks.empty()) fail(ErrorCode::Parse, "empty term");
  size_t pos = 0;
  Term t = parse_at(toks, pos);
  if (pos != toks.size()) fail(ErrorCode::Parse, "trailing input after term");
  return t;
}

std::string term_to_string(const Term& t) {
  if (t.kind == Term::Kind::Var) return t.var;
  if (t.children.empty()) return op_token(t.op);
  std::string s = "(" + op_token(t.op);
  for (const Term& c : t.children) s += " " + term_to_string(c);
  return s + ")";
}

static void collect_vars(const Term& t, std::set<std::string>& out) {
  if (t.kind == Term::Kind::Var) {
    out.insert(t.var);
    return;
  }
  for (const Term& c : t.children) collect_vars(c, out);
}

std::set<std::string> term_variables(const Term& t) {
  std::set<std::string> out;
  collect_vars(t, out);
  return out;
}

static Relation eval_rec(const Term& t, const std::map<std::string, Relation>& env, int n) {
  if (t.kind == Term::Kind::Var) {
    auto it = env.find(t.var);
    if (it == env.end()) fail(ErrorCode::Argument, "unbound variable '" + t.var + "'");
    return it->second;
  }
  int ar = arity(t.op.op);
  if (ar == 0) return eval_semantic(t.op, n, nullptr, nullptr);
  Relation a = eval_rec(t.children[0], env, n);
  if (ar == 1) return eval_semantic(t.op, n, &a, nullptr);
  Relation b = eval_rec(t.children[1], env, n);
  return eval_semantic(t.op, n, &a, &b);
}

Relation eval_concrete(const Term& t, const std::map<std::string, Relation>& env,
                       int base_hint) {
  int n = base_hint;
  for (const auto& [name, rel] : env) {
    if (n == 0) n = rel.base_size();
    if (rel.base_size() != n)
      fail(ErrorCode::Dimension, "environment relations disagree on base size");
  }
  for (const std::string& v : term_variables(t))
    if (!env.count(v)) fail(ErrorCode::Argument, "unbound variable '" + v + "'");
  if (n <= 0) fail(ErrorCode::Argument, "base size unresolved; supply a base hint");
  return eval_rec(t, env, n);
}

bool check_inj_formula_concrete(int which, const Relation& a, int power) {
  int n = a.base_size();
  Relation id = Relation::identity(n);
  switch (which) {
    case 0:
      return compose(a, converse(a)).subset_of(id) &&
             compose(converse(a), a).subset_of(id);
    case 1:
      return kernel_left_power(a, power).subset_of(id) &&
             kernel_right_power(a, power).subset_of(id);
    case 2: {
      Relation div = Relation::diversity(n);
      return meet(compose(a, div), a).is_empty() &&
             meet(compose(div, a), a).is_empty();
    }
    case 3: {
      Relation div = Relation::diversity(n);
      Relation u = Relation::universal(n);
      Relation lhs =
          compose(compose(complement(compose(a, div)), u), complement(compose(div, a)));
      return lhs == u;
    }
    default:
      fail(ErrorCode::Argument, "injectivity formula index must be 0..3");
  }
}

}  // namespace relwb
