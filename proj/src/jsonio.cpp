// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#include "jsonio.hpp"

#include <unordered_map>
#include <unordered_set>

#include "error.hpp"

namespace relwb {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& msg) {
  fail(ErrorCode::Parse, where + ": " + msg);
}

const ordered_json& field(const ordered_json& j, const char* name, const std::string& where) {
  if (!j.is_object()) bad(where, "expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) bad(where, std::string("missing field '") + name + "'");
  return *it;
}

int int_field(const ordered_json& j, const char* name, const std::string& where) {
  const ordered_json& f = field(j, name, where);
  if (!f.is_number_integer()) bad(where, std::string("field '") + name + "' must be an integer");
  return f.get<int>();
}

std::vector<std::string> string_array(const ordered_json& f, const char* name,
                                      const std::string& where) {
  if (!f.is_array()) bad(where, std::string("field '") + name + "' must be an array");
  std::vector<std::string> out;
  out.reserve(f.size());
  for (const auto& e : f) {
    if (!e.is_string())
      bad(where, std::string("field '") + name + "' must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::pair<int, int> pair_entry(const ordered_json& e, const char* name,
                               const std::string& where) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() || !e[1].is_number_integer())
    bad(where, std::string("field '") + name + "' must contain [x,y] integer pairs");
  return {e[0].get<int>(), e[1].get<int>()};
}

std::unordered_map<std::string, int> name_index(const std::vector<std::string>& names,
                                                const char* what, const std::string& where) {
  std::unordered_map<std::string, int> idx;
  for (size_t i = 0; i < names.size(); ++i) {
    if (!idx.emplace(names[i], static_cast<int>(i)).second)
      bad(where, std::string("duplicate ") + what + " name '" + names[i] + "'");
  }
  return idx;
}

// Product tables are keyed "a,b", so element names must be comma-free.
void forbid_commas(const std::vector<std::string>& names, const char* what,
                   const std::string& where) {
  for (const std::string& nm : names)
    if (nm.find(',') != std::string::npos)
      bad(where, std::string(what) + " name '" + nm + "' must not contain ','");
}

// Parses a product table given as {"a,b": "c"}; -1 entries stay undefined.
void parse_product(const ordered_json& f, const std::unordered_map<std::string, int>& idx,
                   std::vector<int32_t>& table, const std::string& where) {
  if (!f.is_object()) bad(where, "field 'product' must be an object");
  const size_t m = idx.size();
  for (auto it = f.begin(); it != f.end(); ++it) {
    const std::string& key = it.key();
    const size_t comma = key.find(',');
    if (comma == std::string::npos)
      bad(where, "product key '" + key + "' must have the form 'a,b'");
    const std::string a = key.substr(0, comma), b = key.substr(comma + 1);
    auto ia = idx.find(a), ib = idx.find(b);
    if (ia == idx.end()) bad(where, "product key '" + key + "' names unknown element '" + a + "'");
    if (ib == idx.end()) bad(where, "product key '" + key + "' names unknown element '" + b + "'");
    if (!it.value().is_string())
      bad(where, "product value for '" + key + "' must be an element name");
    const std::string c = it.value().get<std::string>();
    auto ic = idx.find(c);
    if (ic == idx.end()) bad(where, "product value '" + c + "' is not an element");
    table[static_cast<size_t>(ia->second) * m + static_cast<size_t>(ib->second)] = ic->second;
  }
}

}  // namespace

ordered_json parse_json_text(const std::string& text, const std::string& where) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    bad(where, std::string("invalid JSON: ") + e.what());
  }
}

Relation relation_from_json(const ordered_json& j, const std::string& where) {
  const int n = int_field(j, "n", where);
  if (n < 0) bad(where, "field 'n' must be nonnegative");
  const ordered_json& pairs = field(j, "pairs", where);
  if (!pairs.is_array()) bad(where, "field 'pairs' must be an array");
  Relation r = Relation::empty(n);
  for (const auto& e : pairs) {
    const auto [x, y] = pair_entry(e, "pairs", where);
    if (x < 0 || x >= n || y < 0 || y >= n)
      bad(where, "pair (" + std::to_string(x) + "," + std::to_string(y) +
                     ") is outside base " + std::to_string(n));
    r.set(x, y);
  }
  return r;
}

ordered_json relation_to_json(const Relation& r) {
  ordered_json j;
  j["n"] = r.base_size();
  ordered_json pairs = ordered_json::array();
  for (const auto& p : r.pairs()) pairs.push_back({p.first, p.second});
  j["pairs"] = std::move(pairs);
  return j;
}

std::map<std::string, Relation> env_from_json(const ordered_json& j, const std::string& where) {
  if (!j.is_object()) bad(where, "environment must be an object mapping variables to relations");
  std::map<std::string, Relation> env;
  for (auto it = j.begin(); it != j.end(); ++it)
    env.emplace(it.key(), relation_from_json(it.value(), where + ", variable '" + it.key() + "'"));
  return env;
}

std::shared_ptr<FiniteStructure> structure_from_json(const ordered_json& j,
                                                     const std::string& where) {
  auto s = std::make_shared<FiniteStructure>();
  s->carrier = string_array(field(j, "carrier", where), "carrier", where);
  const auto idx = name_index(s->carrier, "carrier", where);
  const int m = static_cast<int>(s->carrier.size());

  const ordered_json& sig = field(j, "signature", where);
  for (const std::string& tok : string_array(field(sig, "ops", where), "ops", where)) {
    try {
      s->signature.ops.push_back(parse_op_token(tok));
    } catch (const Error&) {
      bad(where, "unknown operation token '" + tok + "'");
    }
  }
  if (sig.contains("rels")) {
    for (const std::string& tok : string_array(sig["rels"], "rels", where)) {
      try {
        s->signature.rels.push_back(parse_rel_token(tok));
      } catch (const Error&) {
        bad(where, "unknown relation token '" + tok + "'");
      }
    }
  }

  auto lookup = [&](const ordered_json& e, const std::string& ctx) {
    if (!e.is_string()) bad(where, ctx + " must be an element name");
    auto it = idx.find(e.get<std::string>());
    if (it == idx.end()) bad(where, ctx + " names unknown element '" + e.get<std::string>() + "'");
    return static_cast<int32_t>(it->second);
  };

  if (j.contains("tables")) {
    const ordered_json& tables = j["tables"];
    if (!tables.is_object()) bad(where, "field 'tables' must be an object");
    for (auto it = tables.begin(); it != tables.end(); ++it) {
      const std::string& tok = it.key();
      const ordered_json& val = it.value();
      bool is_rel = false;
      RelSym rsym = RelSym::Leq;
      OpSymbol osym;
      try {
        osym = parse_op_token(tok);
      } catch (const Error&) {
        try {
          rsym = parse_rel_token(tok);
          is_rel = true;
        } catch (const Error&) {
          bad(where, "table for unknown symbol '" + tok + "'");
        }
      }
      if (is_rel) {
        if (!s->signature.has_rel(rsym))
          bad(where, "table for relation '" + tok + "' not in the signature");
        const bool unary = (rsym == RelSym::Inj);
        std::vector<uint8_t> t;
        if (unary) {
          if (!val.is_array() || static_cast<int>(val.size()) != m)
            bad(where, "table '" + tok + "' must be an array of length " + std::to_string(m));
          for (const auto& e : val) {
            if (!e.is_number_integer() || (e.get<int>() != 0 && e.get<int>() != 1))
              bad(where, "table '" + tok + "' entries must be 0 or 1");
            t.push_back(static_cast<uint8_t>(e.get<int>()));
          }
        } else {
          if (!val.is_array() || static_cast<int>(val.size()) != m)
            bad(where, "table '" + tok + "' must be an array of " + std::to_string(m) + " rows");
          for (const auto& row : val) {
            if (!row.is_array() || static_cast<int>(row.size()) != m)
              bad(where, "table '" + tok + "' rows must have length " + std::to_string(m));
            for (const auto& e : row) {
              if (!e.is_number_integer() || (e.get<int>() != 0 && e.get<int>() != 1))
                bad(where, "table '" + tok + "' entries must be 0 or 1");
              t.push_back(static_cast<uint8_t>(e.get<int>()));
            }
          }
        }
        s->rel_tables[rel_token(rsym)] = std::move(t);
        continue;
      }
      if (!s->signature.has_op(osym))
        bad(where, "table for operation '" + tok + "' not in the signature");
      std::vector<int32_t> t;
      switch (arity(osym.op)) {
        case 0:
          t.push_back(lookup(val, "table '" + tok + "'"));
          break;
        case 1: {
          if (!val.is_array() || static_cast<int>(val.size()) != m)
            bad(where, "table '" + tok + "' must be an array of length " + std::to_string(m));
          for (const auto& e : val) t.push_back(lookup(e, "table '" + tok + "' entry"));
          break;
        }
        default: {
          if (!val.is_array() || static_cast<int>(val.size()) != m)
            bad(where, "table '" + tok + "' must be an array of " + std::to_string(m) + " rows");
          for (const auto& row : val) {
            if (!row.is_array() || static_cast<int>(row.size()) != m)
              bad(where, "table '" + tok + "' rows must have length " + std::to_string(m));
            for (const auto& e : row) t.push_back(lookup(e, "table '" + tok + "' entry"));
          }
        }
      }
      s->op_tables[op_token(osym)] = std::move(t);
    }
  }
  return s;
}

ordered_json structure_to_json(const FiniteStructure& s) {
  ordered_json j;
  j["carrier"] = s.carrier;
  ordered_json sig;
  ordered_json ops = ordered_json::array(), rels = ordered_json::array();
  for (const OpSymbol& sym : s.signature.ops) ops.push_back(op_token(sym));
  for (RelSym r : s.signature.rels) rels.push_back(rel_token(r));
  sig["ops"] = std::move(ops);
  sig["rels"] = std::move(rels);
  j["signature"] = std::move(sig);

  ordered_json tables;
  for (const OpSymbol& sym : s.signature.ops) {
    const std::string tok = op_token(sym);
    auto it = s.op_tables.find(tok);
    if (it == s.op_tables.end()) continue;
    const std::vector<int32_t>& t = it->second;
    const int m = s.size();
    switch (arity(sym.op)) {
      case 0:
        tables[tok] = s.carrier[static_cast<size_t>(t[0])];
        break;
      case 1: {
        ordered_json arr = ordered_json::array();
        for (int a = 0; a < m; ++a) arr.push_back(s.carrier[static_cast<size_t>(t[static_cast<size_t>(a)])]);
        tables[tok] = std::move(arr);
        break;
      }
      default: {
        ordered_json rows = ordered_json::array();
        for (int a = 0; a < m; ++a) {
          ordered_json row = ordered_json::array();
          for (int b = 0; b < m; ++b)
            row.push_back(s.carrier[static_cast<size_t>(t[static_cast<size_t>(a) * m + b])]);
          rows.push_back(std::move(row));
        }
        tables[tok] = std::move(rows);
      }
    }
  }
  for (RelSym r : s.signature.rels) {
    const std::string tok = rel_token(r);
    auto it = s.rel_tables.find(tok);
    if (it == s.rel_tables.end()) continue;
    const std::vector<uint8_t>& t = it->second;
    const int m = s.size();
    if (r == RelSym::Inj) {
      ordered_json arr = ordered_json::array();
      for (int a = 0; a < m; ++a) arr.push_back(static_cast<int>(t[static_cast<size_t>(a)]));
      tables[tok] = std::move(arr);
    } else {
      ordered_json rows = ordered_json::array();
      for (int a = 0; a < m; ++a) {
        ordered_json row = ordered_json::array();
        for (int b = 0; b < m; ++b)
          row.push_back(static_cast<int>(t[static_cast<size_t>(a) * m + b]));
        rows.push_back(std::move(row));
      }
      tables[tok] = std::move(rows);
    }
  }
  j["tables"] = std::move(tables);
  return j;
}

RepresentationCandidate representation_from_json(const ordered_json& j,
                                                 std::shared_ptr<const FiniteStructure> s,
                                                 const std::string& where) {
  RepresentationCandidate c;
  c.structure = std::move(s);
  c.base = int_field(j, "base", where);
  if (c.base < 0) bad(where, "field 'base' must be nonnegative");
  const ordered_json& assign = field(j, "assignment", where);
  if (!assign.is_object()) bad(where, "field 'assignment' must be an object");
  const std::unordered_set<std::string> known(c.structure->carrier.begin(),
                                              c.structure->carrier.end());
  for (auto it = assign.begin(); it != assign.end(); ++it)
    if (known.find(it.key()) == known.end())
      bad(where, "assignment names unknown element '" + it.key() + "'");
  for (const std::string& nm : c.structure->carrier) {
    auto it = assign.find(nm);
    if (it == assign.end()) bad(where, "assignment is missing element '" + nm + "'");
    const ordered_json& pairs = *it;
    if (!pairs.is_array()) bad(where, "assignment for '" + nm + "' must be an array of pairs");
    Relation r = Relation::empty(c.base);
    for (const auto& e : pairs) {
      const auto [x, y] = pair_entry(e, "assignment", where);
      if (x < 0 || x >= c.base || y < 0 || y >= c.base)
        bad(where, "assignment for '" + nm + "' has pair outside base " + std::to_string(c.base));
      r.set(x, y);
    }
    c.assignment.push_back(std::move(r));
  }
  return c;
}

ordered_json representation_to_json(const RepresentationCandidate& c) {
  ordered_json j;
  j["base"] = c.base;
  ordered_json assign;
  for (size_t i = 0; i < c.structure->carrier.size(); ++i) {
    ordered_json pairs = ordered_json::array();
    for (const auto& p : c.assignment[i].pairs()) pairs.push_back({p.first, p.second});
    assign[c.structure->carrier[i]] = std::move(pairs);
  }
  j["assignment"] = std::move(assign);
  return j;
}

SquarePartialGroup pgroup_from_json(const ordered_json& j, const std::string& where) {
  SquarePartialGroup p;
  p.elements = string_array(field(j, "elements", where), "elements", where);
  forbid_commas(p.elements, "element", where);
  const auto idx = name_index(p.elements, "element", where);
  const size_t m = p.elements.size();

  p.sqrt.assign(m, 0);
  for (const std::string& nm : string_array(field(j, "sqrt", where), "sqrt", where)) {
    auto it = idx.find(nm);
    if (it == idx.end()) bad(where, "sqrt names unknown element '" + nm + "'");
    p.sqrt[static_cast<size_t>(it->second)] = 1;
  }

  const ordered_json& ident = field(j, "identity", where);
  if (!ident.is_string()) bad(where, "field 'identity' must be an element name");
  auto it = idx.find(ident.get<std::string>());
  if (it == idx.end())
    bad(where, "identity '" + ident.get<std::string>() + "' is not an element");
  p.identity = it->second;

  p.product.assign(m * m, -1);
  parse_product(field(j, "product", where), idx, p.product, where);
  return p;
}

Group group_from_json(const ordered_json& j, const std::string& where) {
  Group g;
  g.elements = string_array(field(j, "elements", where), "elements", where);
  forbid_commas(g.elements, "element", where);
  const auto idx = name_index(g.elements, "element", where);
  const size_t m = g.elements.size();
  if (m == 0) bad(where, "group must have at least one element");

  std::vector<int32_t> table(m * m, -1);
  parse_product(field(j, "product", where), idx, table, where);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b)
      if (table[a * m + b] < 0)
        bad(where, "product table is missing '" + g.elements[a] + "," + g.elements[b] + "'");
  g.product = std::move(table);

  g.identity = -1;
  for (size_t e = 0; e < m; ++e) {
    bool ident = true;
    for (size_t a = 0; a < m; ++a)
      if (g.prod(static_cast<int>(e), static_cast<int>(a)) != static_cast<int>(a) ||
          g.prod(static_cast<int>(a), static_cast<int>(e)) != static_cast<int>(a)) {
        ident = false;
        break;
      }
    if (ident) {
      g.identity = static_cast<int>(e);
      break;
    }
  }
  if (g.identity < 0) bad(where, "product table has no identity element");
  return g;
}

ordered_json group_to_json(const Group& g) {
  ordered_json j;
  j["elements"] = g.elements;
  ordered_json prod;
  for (size_t a = 0; a < g.elements.size(); ++a)
    for (size_t b = 0; b < g.elements.size(); ++b)
      prod[g.elements[a] + "," + g.elements[b]] =
          g.elements[static_cast<size_t>(g.prod(static_cast<int>(a), static_cast<int>(b)))];
  j["product"] = std::move(prod);
  return j;
}

Graph graph_from_json(const ordered_json& j, const std::string& where) {
  Graph g;
  g.n = int_field(j, "n", where);
  if (j.contains("edges")) {
    const ordered_json& es = j["edges"];
    if (!es.is_array()) bad(where, "field 'edges' must be an array");
    for (const auto& e : es) g.edges.push_back(pair_entry(e, "edges", where));
  }
  if (j.contains("loops")) {
    const ordered_json& ls = j["loops"];
    if (!ls.is_array()) bad(where, "field 'loops' must be an array");
    for (const auto& v : ls) {
      if (!v.is_number_integer()) bad(where, "field 'loops' must contain integers");
      g.loops.push_back(v.get<int>());
    }
  }
  return g;
}

}  // namespace relwb
