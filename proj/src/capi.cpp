// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
#include "relwb.h"

#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "constructions.hpp"
#include "error.hpp"
#include "greens.hpp"
#include "jsonio.hpp"
#include "kernels.hpp"
#include "pgroup.hpp"
#include "structure.hpp"
#include "term.hpp"

namespace {
constexpr uint32_t kMagicRelation = 0x72656c31;
constexpr uint32_t kMagicStructure = 0x73747231;
constexpr uint32_t kMagicRep = 0x72657031;
constexpr uint32_t kMagicPGroup = 0x70677231;
constexpr uint32_t kMagicGroup = 0x67727031;
constexpr uint32_t kMagicGraph = 0x67726631;
}  // namespace

struct rwb_relation_s {
  uint32_t magic = 0;
  relwb::Relation rel;
};
struct rwb_structure_s {
  uint32_t magic = 0;
  std::shared_ptr<relwb::FiniteStructure> s;
};
struct rwb_rep_s {
  uint32_t magic = 0;
  relwb::RepresentationCandidate cand;
};
struct rwb_pgroup_s {
  uint32_t magic = 0;
  relwb::SquarePartialGroup p;
};
struct rwb_group_s {
  uint32_t magic = 0;
  relwb::Group g;
};
struct rwb_graph_s {
  uint32_t magic = 0;
  relwb::Graph g;
};

namespace {

using relwb::ErrorCode;
using relwb::ordered_json;

thread_local std::string t_last_error;

template <typename Fn>
rwb_status guarded(Fn&& fn) {
  try {
    fn();
    return RWB_OK;
  } catch (const relwb::Error& e) {
    t_last_error = e.what();
    return static_cast<rwb_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    t_last_error = e.what();
    return RWB_ERR_INTERNAL;
  }
}

char* dup_cstr(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) relwb::fail(ErrorCode::Internal, "out of memory");
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out_json, const ordered_json& j) {
  if (!out_json) relwb::fail(ErrorCode::Argument, "null output pointer");
  *out_json = dup_cstr(j.dump());
}

const char* require_text(const char* text, const char* what) {
  if (!text) relwb::fail(ErrorCode::Argument, std::string("null ") + what);
  return text;
}

const relwb::Relation& deref(const rwb_relation_t* h) {
  if (!h || h->magic != kMagicRelation)
    relwb::fail(ErrorCode::Argument, "invalid relation handle");
  return h->rel;
}
const std::shared_ptr<relwb::FiniteStructure>& deref(const rwb_structure_t* h) {
  if (!h || h->magic != kMagicStructure)
    relwb::fail(ErrorCode::Argument, "invalid structure handle");
  return h->s;
}
const relwb::RepresentationCandidate& deref(const rwb_rep_t* h) {
  if (!h || h->magic != kMagicRep)
    relwb::fail(ErrorCode::Argument, "invalid representation handle");
  return h->cand;
}
const relwb::SquarePartialGroup& deref(const rwb_pgroup_t* h) {
  if (!h || h->magic != kMagicPGroup)
    relwb::fail(ErrorCode::Argument, "invalid partial group handle");
  return h->p;
}
const relwb::Group& deref(const rwb_group_t* h) {
  if (!h || h->magic != kMagicGroup) relwb::fail(ErrorCode::Argument, "invalid group handle");
  return h->g;
}
const relwb::Graph& deref(const rwb_graph_t* h) {
  if (!h || h->magic != kMagicGraph) relwb::fail(ErrorCode::Argument, "invalid graph handle");
  return h->g;
}

template <typename H, typename V>
void make_handle(H** out, uint32_t magic, V&& value) {
  if (!out) relwb::fail(ErrorCode::Argument, "null output pointer");
  auto* h = new H{};
  h->magic = magic;
  if constexpr (std::is_same_v<H, rwb_relation_s>)
    h->rel = std::forward<V>(value);
  else if constexpr (std::is_same_v<H, rwb_structure_s>)
    h->s = std::forward<V>(value);
  else if constexpr (std::is_same_v<H, rwb_rep_s>)
    h->cand = std::forward<V>(value);
  else if constexpr (std::is_same_v<H, rwb_pgroup_s>)
    h->p = std::forward<V>(value);
  else if constexpr (std::is_same_v<H, rwb_group_s>)
    h->g = std::forward<V>(value);
  else
    h->g = std::forward<V>(value);
  *out = h;
}

ordered_json verify_to_json(const relwb::VerifyResult& v) {
  ordered_json j;
  if (v.ok) {
    j["verdict"] = "ok";
  } else {
    j["verdict"] = "violations";
    j["violations"] = v.violations;
  }
  return j;
}

ordered_json pairs_to_json(const relwb::Relation& r) {
  ordered_json pairs = ordered_json::array();
  for (const auto& p : r.pairs()) pairs.push_back({p.first, p.second});
  return pairs;
}

ordered_json homotopy_report_json(const std::string& target, const relwb::HomotopyReport& r) {
  ordered_json j;
  j["target"] = target;
  j["ok"] = r.ok;
  j["identity_holds"] = r.identity_holds;
  j["gamma_injective"] = r.gamma_injective;
  j["alpha_one_class"] = r.alpha_one_class;
  j["beta_one_class"] = r.beta_one_class;
  j["gamma_one_class"] = r.gamma_one_class;
  j["issues"] = r.issues;
  return j;
}

}  // namespace

extern "C" {

const char* rwb_last_error_message(void) { return t_last_error.c_str(); }

void rwb_string_free(char* s) { std::free(s); }

rwb_status rwb_relation_parse(const char* json, rwb_relation_t** out) {
  return guarded([&] {
    const ordered_json j =
        relwb::parse_json_text(require_text(json, "relation input"), "relation input");
    make_handle(out, kMagicRelation, relwb::relation_from_json(j, "relation input"));
  });
}

rwb_status rwb_relation_to_json(const rwb_relation_t* r, char** out_json) {
  return guarded([&] { emit(out_json, relwb::relation_to_json(deref(r))); });
}

void rwb_relation_free(rwb_relation_t* r) {
  if (!r || r->magic != kMagicRelation) return;
  r->magic = 0;
  delete r;
}

rwb_status rwb_eval_term(const char* term, const char* env_json, int base_hint,
                         char** out_json) {
  return guarded([&] {
    const relwb::Term t = relwb::parse_term(require_text(term, "term"));
    std::map<std::string, relwb::Relation> env;
    if (env_json && *env_json)
      env = relwb::env_from_json(relwb::parse_json_text(env_json, "environment input"),
                                 "environment input");
    emit(out_json, relwb::relation_to_json(relwb::eval_concrete(t, env, base_hint)));
  });
}

rwb_status rwb_structure_parse(const char* json, rwb_structure_t** out) {
  return guarded([&] {
    const ordered_json j =
        relwb::parse_json_text(require_text(json, "structure input"), "structure input");
    auto s = relwb::structure_from_json(j, "structure input");
    s->validate();
    make_handle(out, kMagicStructure, std::move(s));
  });
}

rwb_status rwb_structure_to_json(const rwb_structure_t* s, char** out_json) {
  return guarded([&] { emit(out_json, relwb::structure_to_json(*deref(s))); });
}

void rwb_structure_free(rwb_structure_t* s) {
  if (!s || s->magic != kMagicStructure) return;
  s->magic = 0;
  delete s;
}

rwb_status rwb_representation_parse(const char* json, const rwb_structure_t* s,
                                    rwb_rep_t** out) {
  return guarded([&] {
    const ordered_json j = relwb::parse_json_text(require_text(json, "representation input"),
                                                  "representation input");
    make_handle(out, kMagicRep,
                relwb::representation_from_json(j, deref(s), "representation input"));
  });
}

rwb_status rwb_representation_to_json(const rwb_rep_t* r, char** out_json) {
  return guarded([&] { emit(out_json, relwb::representation_to_json(deref(r))); });
}

void rwb_representation_free(rwb_rep_t* r) {
  if (!r || r->magic != kMagicRep) return;
  r->magic = 0;
  delete r;
}

rwb_status rwb_verify_representation(const rwb_rep_t* r, int threads, char** out_json) {
  return guarded([&] {
    emit(out_json, verify_to_json(relwb::verify_representation(deref(r), threads)));
  });
}

rwb_status rwb_search_representation(const rwb_structure_t* s, int max_base,
                                     const char* generators_csv, char** out_json) {
  return guarded([&] {
    const auto& st = deref(s);
    std::vector<int> gens;
    if (generators_csv && *generators_csv) {
      std::string csv = generators_csv;
      size_t start = 0;
      while (start <= csv.size()) {
        const size_t comma = csv.find(',', start);
        const std::string name =
            csv.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        const int idx = st->index_of(name);
        if (idx < 0) relwb::fail(ErrorCode::Argument, "unknown generator '" + name + "'");
        gens.push_back(idx);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
    }
    const relwb::SearchResult res = relwb::search_representation(*st, max_base, gens);
    ordered_json j;
    if (res.found) {
      j["verdict"] = "found";
      const ordered_json rep = relwb::representation_to_json(res.candidate);
      j["base"] = rep["base"];
      j["assignment"] = rep["assignment"];
    } else {
      j["verdict"] = "none_up_to";
      j["bound"] = res.none_up_to;
    }
    emit(out_json, j);
  });
}

rwb_status rwb_pgroup_parse(const char* json, rwb_pgroup_t** out) {
  return guarded([&] {
    const ordered_json j = relwb::parse_json_text(require_text(json, "partial group input"),
                                                  "partial group input");
    make_handle(out, kMagicPGroup, relwb::pgroup_from_json(j, "partial group input"));
  });
}

void rwb_pgroup_free(rwb_pgroup_t* p) {
  if (!p || p->magic != kMagicPGroup) return;
  p->magic = 0;
  delete p;
}

rwb_status rwb_group_parse(const char* json, rwb_group_t** out) {
  return guarded([&] {
    const ordered_json j =
        relwb::parse_json_text(require_text(json, "group input"), "group input");
    relwb::Group g = relwb::group_from_json(j, "group input");
    g.validate();
    make_handle(out, kMagicGroup, std::move(g));
  });
}

void rwb_group_free(rwb_group_t* g) {
  if (!g || g->magic != kMagicGroup) return;
  g->magic = 0;
  delete g;
}

rwb_status rwb_pgroup_validate(const rwb_pgroup_t* p, char** out_json) {
  return guarded([&] {
    const relwb::PGroupReport rep = relwb::pgroup_validate(deref(p));
    ordered_json j;
    if (rep.ok) {
      j["verdict"] = "ok";
    } else {
      j["verdict"] = "invalid";
      j["issues"] = rep.issues;
    }
    emit(out_json, j);
  });
}

rwb_status rwb_pgroup_embed(const rwb_pgroup_t* p, int max_order, char** out_json) {
  return guarded([&] {
    const relwb::SquarePartialGroup& pg = deref(p);
    const relwb::EmbedResult res = relwb::embed_into_group(pg, max_order);
    ordered_json j;
    if (res.found) {
      j["verdict"] = "found";
      j["order"] = res.group.size();
      j["group"] = relwb::group_to_json(res.group);
      ordered_json mapping;
      for (size_t i = 0; i < pg.elements.size(); ++i)
        mapping[pg.elements[i]] = res.group.elements[static_cast<size_t>(res.mapping[i])];
      j["mapping"] = std::move(mapping);
    } else {
      j["verdict"] = "none_up_to";
      j["bound"] = res.none_up_to;
    }
    emit(out_json, j);
  });
}

rwb_status rwb_pgroup_homotopy(const rwb_pgroup_t* p, const char* target,
                               const rwb_group_t* g, char** out_json) {
  return guarded([&] {
    const relwb::SquarePartialGroup& pg = deref(p);
    const std::string t = require_text(target, "homotopy target");
    std::shared_ptr<relwb::FiniteStructure> st;
    relwb::Homotopy h;
    if (t == "e0") {
      st = relwb::build_e0(pg);
      h = relwb::canonical_homotopy(pg, st);
    } else if (t == "b3") {
      if (!g) relwb::fail(ErrorCode::Argument, "homotopy target 'b3' requires a group");
      st = relwb::build_b3(deref(g));
      h = relwb::composed_homotopy(pg, st, pg.elements);
    } else {
      relwb::fail(ErrorCode::Argument, "homotopy target must be 'e0' or 'b3'");
    }
    const relwb::GreensClassification cls = relwb::greens_classify(*st);
    emit(out_json, homotopy_report_json(t, relwb::check_H_embedding(h, cls)));
  });
}

rwb_status rwb_construct_e0(const rwb_pgroup_t* p, rwb_structure_t** out) {
  return guarded([&] { make_handle(out, kMagicStructure, relwb::build_e0(deref(p))); });
}

rwb_status rwb_construct_formal_sum(const rwb_pgroup_t* p, int variant, int strict_compat,
                                    int export_tables, char** out_json) {
  return guarded([&] {
    if (variant != 1 && variant != 2)
      relwb::fail(ErrorCode::Argument, "variant must be 1 or 2");
    const relwb::EBuild b = variant == 1 ? relwb::build_e1(deref(p))
                                         : relwb::build_e2(deref(p), strict_compat != 0);
    ordered_json j;
    j["variant"] = variant == 1 ? "e1" : "e2";
    j["strict_compat"] = b.family->strict_compat();
    j["carrier_size"] = b.structure->size();
    ordered_json sig;
    ordered_json ops = ordered_json::array(), rels = ordered_json::array();
    for (const relwb::OpSymbol& sym : b.structure->signature.ops)
      ops.push_back(relwb::op_token(sym));
    for (relwb::RelSym r : b.structure->signature.rels) rels.push_back(relwb::rel_token(r));
    sig["ops"] = std::move(ops);
    sig["rels"] = std::move(rels);
    j["signature"] = std::move(sig);
    j["uniqueness_count"] = b.structure->size();
    j["alternative_uniqueness_count"] = b.family->alternative_uniqueness_count();
    ordered_json omitted = ordered_json::array();
    for (const relwb::OpSymbol& sym : b.structure->signature.ops)
      if (!b.structure->has_op_table(sym)) omitted.push_back(relwb::op_token(sym));
    for (relwb::RelSym r : b.structure->signature.rels)
      if (!b.structure->has_rel_table(r)) omitted.push_back(relwb::rel_token(r));
    j["omitted_tables"] = std::move(omitted);
    if (export_tables) {
      j["carrier"] = b.structure->carrier;
      j["tables"] = relwb::structure_to_json(*b.structure)["tables"];
    }
    emit(out_json, j);
  });
}

rwb_status rwb_construct_b3(const rwb_group_t* g, rwb_structure_t** out) {
  return guarded([&] { make_handle(out, kMagicStructure, relwb::build_b3(deref(g))); });
}

rwb_status rwb_construct_theta(const rwb_group_t* g, char** out_json) {
  return guarded(
      [&] { emit(out_json, relwb::representation_to_json(relwb::build_theta(deref(g)))); });
}

rwb_status rwb_construct_theta_plus(const rwb_pgroup_t* p, const rwb_group_t* g,
                                    char** out_json) {
  return guarded([&] {
    const relwb::SquarePartialGroup& pg = deref(p);
    const relwb::Group& gr = deref(g);
    std::vector<int> emb;
    emb.reserve(pg.elements.size());
    for (const std::string& nm : pg.elements) {
      const int idx = gr.index_of(nm);
      if (idx < 0)
        relwb::fail(ErrorCode::Argument,
                    "partial-group element '" + nm + "' does not name a group element");
      emb.push_back(idx);
    }
    const relwb::ThetaPlusResult res = relwb::build_theta_plus(pg, gr, emb);
    ordered_json j = relwb::representation_to_json(res.candidate);
    j["replaced"] = res.replaced;
    j["group"] = relwb::group_to_json(res.group);
    emit(out_json, j);
  });
}

rwb_status rwb_greens_classify(const rwb_structure_t* s, char** out_json) {
  return guarded([&] {
    const auto& st = deref(s);
    const relwb::GreensClassification cls = relwb::greens_classify(*st);
    auto partition = [&](const std::vector<int>& ids, int count) {
      std::vector<ordered_json> parts(static_cast<size_t>(count), ordered_json::array());
      for (size_t i = 0; i < ids.size(); ++i)
        parts[static_cast<size_t>(ids[i])].push_back(st->carrier[i]);
      ordered_json arr = ordered_json::array();
      for (auto& p : parts) arr.push_back(std::move(p));
      return arr;
    };
    ordered_json j;
    j["L"] = partition(cls.L, cls.num_L);
    j["R"] = partition(cls.R, cls.num_R);
    j["H"] = partition(cls.H, cls.num_H);
    emit(out_json, j);
  });
}

rwb_status rwb_rel_semigroup(int n, rwb_structure_t** out) {
  return guarded([&] {
    make_handle(out, kMagicStructure,
                std::make_shared<relwb::FiniteStructure>(relwb::rel_semigroup_structure(n)));
  });
}

rwb_status rwb_graph_parse(const char* json, rwb_graph_t** out) {
  return guarded([&] {
    const ordered_json j =
        relwb::parse_json_text(require_text(json, "graph input"), "graph input");
    make_handle(out, kMagicGraph, relwb::graph_from_json(j, "graph input"));
  });
}

void rwb_graph_free(rwb_graph_t* g) {
  if (!g || g->magic != kMagicGraph) return;
  g->magic = 0;
  delete g;
}

rwb_status rwb_kernel_decide(const rwb_relation_t* r, char** out_json) {
  return guarded([&] {
    const relwb::KernelDecision d = relwb::is_kernel(deref(r));
    ordered_json j;
    if (d.yes) {
      j["verdict"] = "yes";
      j["witness"] = pairs_to_json(d.witness);
    } else {
      j["verdict"] = "no";
    }
    emit(out_json, j);
  });
}

rwb_status rwb_kernel_witness_check(const rwb_relation_t* r, const rwb_relation_t* s,
                                    char** out_json) {
  return guarded([&] {
    ordered_json j;
    j["result"] = relwb::kernel_witness_check(deref(r), deref(s));
    emit(out_json, j);
  });
}

rwb_status rwb_kernel_lemma_report(const rwb_relation_t* r, char** out_json) {
  return guarded([&] {
    const relwb::KernelConditionReport rep = relwb::lemma_condition_check(deref(r));
    ordered_json j;
    j["symmetric"] = rep.symmetric;
    j["locally_reflexive"] = rep.locally_reflexive;
    j["edge_cover_size"] = rep.edge_cover_size;
    j["domain_cover_size"] = rep.domain_cover_size;
    j["stated_condition_met"] = rep.stated_condition_met;
    j["is_kernel_result"] = rep.is_kernel_result;
    emit(out_json, j);
  });
}

rwb_status rwb_cec_reduce(const rwb_graph_t* g, int k, rwb_relation_t** out) {
  return guarded([&] { make_handle(out, kMagicRelation, relwb::cec_reduce(deref(g), k)); });
}

rwb_status rwb_clique_cover(const rwb_graph_t* g, char** out_json) {
  return guarded([&] {
    const relwb::CliqueCover cover = relwb::min_clique_edge_cover(deref(g));
    ordered_json j;
    j["size"] = cover.size;
    ordered_json cl = ordered_json::array();
    for (const auto& c : cover.cliques) cl.push_back(c);
    j["cover"] = std::move(cl);
    emit(out_json, j);
  });
}

}  // extern "C"
