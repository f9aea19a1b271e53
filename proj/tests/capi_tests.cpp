// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
//
// Exercises the shared-library surface exactly as an ABI consumer would:
// JSON strings in, JSON strings out, opaque handles, thread-local errors.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstring>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "relwb.h"

using ordered_json = nlohmann::ordered_json;

namespace {

std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  rwb_string_free(s);
  return out;
}

ordered_json take_json(char* s) { return ordered_json::parse(take(s)); }

constexpr const char* kZ3 =
    R"({"elements":["0","1","2"],"product":{"0,0":"0","0,1":"1","0,2":"2",)"
    R"("1,0":"1","1,1":"2","1,2":"0","2,0":"2","2,1":"0","2,2":"1"}})";

constexpr const char* kTrivialPGroup =
    R"({"elements":["e"],"sqrt":["e"],"identity":"e","product":{"e,e":"e"}})";

constexpr const char* kTwoElementStructure =
    R"({"carrier":["e","c"],"signature":{"ops":["-",";"]},)"
    R"("tables":{"-":["c","e"],";":[["e","c"],["c","c"]]}})";

}  // namespace

TEST_CASE("relation round trip and parse failures") {
  rwb_relation_t* r = nullptr;
  REQUIRE(rwb_relation_parse(R"({"n":3,"pairs":[[0,1],[1,2]]})", &r) == RWB_OK);
  char* out = nullptr;
  REQUIRE(rwb_relation_to_json(r, &out) == RWB_OK);
  const ordered_json j = take_json(out);
  CHECK(j["n"] == 3);
  CHECK(j["pairs"] == ordered_json::parse("[[0,1],[1,2]]"));
  rwb_relation_free(r);

  rwb_relation_t* bad = nullptr;
  CHECK(rwb_relation_parse(R"({"n":3,)", &bad) == RWB_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(std::strlen(rwb_last_error_message()) > 0);

  CHECK(rwb_relation_parse(R"({"n":2,"pairs":[[0,5]]})", &bad) != RWB_OK);
  CHECK(rwb_relation_parse(R"({"pairs":[]})", &bad) == RWB_ERR_PARSE);
}

TEST_CASE("null and freed handles are rejected, frees are null-safe") {
  char* out = nullptr;
  CHECK(rwb_relation_to_json(nullptr, &out) == RWB_ERR_ARGUMENT);
  CHECK(std::string(rwb_last_error_message()).find("invalid") != std::string::npos);
  CHECK(rwb_greens_classify(nullptr, &out) == RWB_ERR_ARGUMENT);
  CHECK(rwb_kernel_decide(nullptr, &out) == RWB_ERR_ARGUMENT);

  rwb_relation_free(nullptr);
  rwb_structure_free(nullptr);
  rwb_representation_free(nullptr);
  rwb_pgroup_free(nullptr);
  rwb_group_free(nullptr);
  rwb_graph_free(nullptr);
  rwb_string_free(nullptr);
}

TEST_CASE("term evaluation against an environment") {
  const char* env = R"({"x":{"n":3,"pairs":[[0,1]]},"y":{"n":3,"pairs":[[1,2]]}})";
  char* out = nullptr;
  REQUIRE(rwb_eval_term("(; x y)", env, 0, &out) == RWB_OK);
  ordered_json j = take_json(out);
  CHECK(j["pairs"] == ordered_json::parse("[[0,2]]"));

  REQUIRE(rwb_eval_term("1'", nullptr, 2, &out) == RWB_OK);
  j = take_json(out);
  CHECK(j["pairs"] == ordered_json::parse("[[0,0],[1,1]]"));

  CHECK(rwb_eval_term("(kl", env, 0, &out) == RWB_ERR_PARSE);
  CHECK(rwb_eval_term("(; x z)", env, 0, &out) == RWB_ERR_ARGUMENT);
  CHECK(rwb_eval_term("1'", nullptr, 0, &out) == RWB_ERR_ARGUMENT);
  CHECK(std::string(rwb_last_error_message()).find("base") != std::string::npos);
}

TEST_CASE("structure round trip, verification, and search") {
  rwb_structure_t* s = nullptr;
  REQUIRE(rwb_structure_parse(kTwoElementStructure, &s) == RWB_OK);
  char* out = nullptr;
  REQUIRE(rwb_structure_to_json(s, &out) == RWB_OK);
  const ordered_json sj = take_json(out);
  CHECK(sj["carrier"] == ordered_json::parse(R"(["e","c"])"));

  rwb_rep_t* good = nullptr;
  REQUIRE(rwb_representation_parse(R"({"base":1,"assignment":{"e":[[0,0]],"c":[]}})", s,
                                   &good) == RWB_OK);
  REQUIRE(rwb_verify_representation(good, 2, &out) == RWB_OK);
  CHECK(take_json(out)["verdict"] == "ok");
  REQUIRE(rwb_representation_to_json(good, &out) == RWB_OK);
  CHECK(take_json(out)["base"] == 1);
  rwb_representation_free(good);

  rwb_rep_t* wrong = nullptr;
  REQUIRE(rwb_representation_parse(R"({"base":1,"assignment":{"e":[],"c":[[0,0]]}})", s,
                                   &wrong) == RWB_OK);
  REQUIRE(rwb_verify_representation(wrong, 1, &out) == RWB_OK);
  const ordered_json vj = take_json(out);
  CHECK(vj["verdict"] == "violations");
  CHECK(!vj["violations"].empty());
  rwb_representation_free(wrong);

  rwb_rep_t* missing = nullptr;
  CHECK(rwb_representation_parse(R"({"base":1,"assignment":{"e":[[0,0]]}})", s, &missing) ==
        RWB_ERR_PARSE);
  CHECK(std::string(rwb_last_error_message()).find("missing") != std::string::npos);

  REQUIRE(rwb_search_representation(s, 2, nullptr, &out) == RWB_OK);
  const ordered_json found = take_json(out);
  CHECK(found["verdict"] == "found");
  CHECK(found["base"] == 1);

  CHECK(rwb_search_representation(s, 10, nullptr, &out) == RWB_ERR_UNSUPPORTED);
  CHECK(rwb_search_representation(s, 2, "e,nope", &out) == RWB_ERR_ARGUMENT);
  rwb_structure_free(s);
}

TEST_CASE("search reports the refuted bound") {
  // kl(a) = a together with a;a = 0 has no representation on small bases.
  rwb_structure_t* s = nullptr;
  REQUIRE(rwb_structure_parse(
              R"({"carrier":["z","a"],"signature":{"ops":["kl",";"]},)"
              R"("tables":{"kl":["z","a"],";":[["z","z"],["z","z"]]}})",
              &s) == RWB_OK);
  char* out = nullptr;
  REQUIRE(rwb_search_representation(s, 3, nullptr, &out) == RWB_OK);
  const ordered_json j = take_json(out);
  CHECK(j["verdict"] == "none_up_to");
  CHECK(j["bound"] == 3);
  rwb_structure_free(s);
}

TEST_CASE("partial group validation, embedding, homotopy") {
  rwb_pgroup_t* p = nullptr;
  REQUIRE(rwb_pgroup_parse(kTrivialPGroup, &p) == RWB_OK);
  char* out = nullptr;
  REQUIRE(rwb_pgroup_validate(p, &out) == RWB_OK);
  CHECK(take_json(out)["verdict"] == "ok");

  REQUIRE(rwb_pgroup_homotopy(p, "e0", nullptr, &out) == RWB_OK);
  const ordered_json h = take_json(out);
  CHECK(h["ok"] == true);
  CHECK(h["target"] == "e0");
  CHECK(rwb_pgroup_homotopy(p, "b3", nullptr, &out) == RWB_ERR_ARGUMENT);
  CHECK(rwb_pgroup_homotopy(p, "nope", nullptr, &out) == RWB_ERR_ARGUMENT);
  rwb_pgroup_free(p);

  rwb_pgroup_t* undef = nullptr;
  REQUIRE(rwb_pgroup_parse(
              R"({"elements":["e","a"],"sqrt":["e","a"],"identity":"e",)"
              R"("product":{"e,e":"e","e,a":"a","a,e":"a"}})",
              &undef) == RWB_OK);
  REQUIRE(rwb_pgroup_validate(undef, &out) == RWB_OK);
  const ordered_json bad = take_json(out);
  CHECK(bad["verdict"] == "invalid");
  CHECK(!bad["issues"].empty());
  CHECK(rwb_pgroup_embed(undef, 3, &out) == RWB_ERR_ARGUMENT);
  rwb_pgroup_free(undef);

  // Valid, but only embeddable once a fourth element is available.
  rwb_pgroup_t* partial = nullptr;
  REQUIRE(rwb_pgroup_parse(
              R"({"elements":["e","a","b"],"sqrt":["e","a"],"identity":"e",)"
              R"("product":{"e,e":"e","e,a":"a","a,e":"a","e,b":"b","b,e":"b","a,a":"e"}})",
              &partial) == RWB_OK);
  REQUIRE(rwb_pgroup_embed(partial, 3, &out) == RWB_OK);
  const ordered_json none = take_json(out);
  CHECK(none["verdict"] == "none_up_to");
  CHECK(none["bound"] == 3);
  REQUIRE(rwb_pgroup_embed(partial, 4, &out) == RWB_OK);
  const ordered_json four = take_json(out);
  CHECK(four["verdict"] == "found");
  CHECK(four["order"] == 4);
  rwb_pgroup_free(partial);
}

TEST_CASE("constructed structures round trip through the C API") {
  rwb_pgroup_t* p = nullptr;
  REQUIRE(rwb_pgroup_parse(kTrivialPGroup, &p) == RWB_OK);

  rwb_structure_t* e0 = nullptr;
  REQUIRE(rwb_construct_e0(p, &e0) == RWB_OK);
  char* out = nullptr;
  REQUIRE(rwb_structure_to_json(e0, &out) == RWB_OK);
  CHECK(take_json(out)["carrier"].size() == 7);
  REQUIRE(rwb_greens_classify(e0, &out) == RWB_OK);
  const ordered_json g = take_json(out);
  CHECK(g.contains("L"));
  CHECK(g.contains("R"));
  CHECK(g.contains("H"));
  rwb_structure_free(e0);

  REQUIRE(rwb_construct_formal_sum(p, 1, 0, 0, &out) == RWB_OK);
  const ordered_json f = take_json(out);
  CHECK(f["variant"] == "e1");
  CHECK(f["carrier_size"] == 7680);
  CHECK(rwb_construct_formal_sum(p, 5, 0, 0, &out) == RWB_ERR_ARGUMENT);
  rwb_pgroup_free(p);
}

TEST_CASE("matrix units over a group verify against their standard painting") {
  rwb_group_t* z3 = nullptr;
  REQUIRE(rwb_group_parse(kZ3, &z3) == RWB_OK);
  rwb_structure_t* b3 = nullptr;
  REQUIRE(rwb_construct_b3(z3, &b3) == RWB_OK);
  char* out = nullptr;
  REQUIRE(rwb_construct_theta(z3, &out) == RWB_OK);
  const std::string theta = take(out);

  rwb_rep_t* rep = nullptr;
  REQUIRE(rwb_representation_parse(theta.c_str(), b3, &rep) == RWB_OK);
  REQUIRE(rwb_verify_representation(rep, 1, &out) == RWB_OK);
  CHECK(take_json(out)["verdict"] == "ok");
  rwb_representation_free(rep);
  rwb_structure_free(b3);

  // theta-plus wants partial-group elements named after group elements.
  rwb_pgroup_t* zero = nullptr;
  REQUIRE(rwb_pgroup_parse(
              R"({"elements":["0"],"sqrt":["0"],"identity":"0","product":{"0,0":"0"}})",
              &zero) == RWB_OK);
  REQUIRE(rwb_construct_theta_plus(zero, z3, &out) == RWB_OK);
  const ordered_json tp = take_json(out);
  CHECK(tp["replaced"] == false);
  CHECK(tp["base"] == 9);
  rwb_pgroup_free(zero);

  rwb_pgroup_t* misnamed = nullptr;
  REQUIRE(rwb_pgroup_parse(kTrivialPGroup, &misnamed) == RWB_OK);
  CHECK(rwb_construct_theta_plus(misnamed, z3, &out) == RWB_ERR_ARGUMENT);
  CHECK(std::string(rwb_last_error_message()).find("does not name") != std::string::npos);
  rwb_pgroup_free(misnamed);
  rwb_group_free(z3);
}

TEST_CASE("status codes separate the error classes") {
  rwb_structure_t* s = nullptr;
  // No composition operation: Green's relations are unsupported.
  REQUIRE(rwb_structure_parse(
              R"({"carrier":["e"],"signature":{"ops":["-"]},"tables":{"-":["e"]}})", &s) ==
          RWB_OK);
  char* out = nullptr;
  CHECK(rwb_greens_classify(s, &out) == RWB_ERR_UNSUPPORTED);
  rwb_structure_free(s);

  // Non-associative composition table: precondition violation.
  rwb_structure_t* na = nullptr;
  REQUIRE(rwb_structure_parse(
              R"({"carrier":["a","b"],"signature":{"ops":[";"]},)"
              R"("tables":{";":[["b","a"],["a","a"]]}})",
              &na) == RWB_OK);
  CHECK(rwb_greens_classify(na, &out) == RWB_ERR_PRECONDITION);
  CHECK(std::string(rwb_last_error_message()).find("associative") != std::string::npos);
  rwb_structure_free(na);

  rwb_relation_t* r2 = nullptr;
  rwb_relation_t* r3 = nullptr;
  REQUIRE(rwb_relation_parse(R"({"n":2,"pairs":[]})", &r2) == RWB_OK);
  REQUIRE(rwb_relation_parse(R"({"n":3,"pairs":[]})", &r3) == RWB_OK);
  CHECK(rwb_kernel_witness_check(r2, r3, &out) == RWB_ERR_DIMENSION);
  rwb_relation_free(r2);
  rwb_relation_free(r3);
}

TEST_CASE("full relation semigroups by size") {
  rwb_structure_t* s = nullptr;
  REQUIRE(rwb_rel_semigroup(2, &s) == RWB_OK);
  char* out = nullptr;
  REQUIRE(rwb_structure_to_json(s, &out) == RWB_OK);
  const ordered_json j = take_json(out);
  CHECK(j["carrier"].size() == 16);
  CHECK(j["carrier"][0] == "r0");
  rwb_structure_free(s);
  CHECK(rwb_rel_semigroup(4, &s) == RWB_ERR_ARGUMENT);
  CHECK(rwb_rel_semigroup(0, &s) == RWB_ERR_ARGUMENT);
}

TEST_CASE("kernel pipeline through the C API") {
  rwb_relation_t* id3 = nullptr;
  REQUIRE(rwb_relation_parse(R"({"n":3,"pairs":[[0,0],[1,1],[2,2]]})", &id3) == RWB_OK);
  char* out = nullptr;
  REQUIRE(rwb_kernel_decide(id3, &out) == RWB_OK);
  const ordered_json yes = take_json(out);
  CHECK(yes["verdict"] == "yes");
  CHECK(yes["witness"] == ordered_json::parse("[[0,0],[1,1],[2,2]]"));

  REQUIRE(rwb_kernel_lemma_report(id3, &out) == RWB_OK);
  const ordered_json rep = take_json(out);
  CHECK(rep["symmetric"] == true);
  CHECK(rep["edge_cover_size"] == 0);
  CHECK(rep["domain_cover_size"] == 3);
  CHECK(rep["stated_condition_met"] == true);
  CHECK(rep["is_kernel_result"] == true);

  rwb_relation_t* asym = nullptr;
  REQUIRE(rwb_relation_parse(R"({"n":2,"pairs":[[0,1]]})", &asym) == RWB_OK);
  REQUIRE(rwb_kernel_decide(asym, &out) == RWB_OK);
  CHECK(take_json(out)["verdict"] == "no");

  REQUIRE(rwb_kernel_witness_check(id3, id3, &out) == RWB_OK);
  CHECK(take_json(out)["result"] == true);
  rwb_relation_free(asym);
  rwb_relation_free(id3);

  rwb_graph_t* c4 = nullptr;
  REQUIRE(rwb_graph_parse(R"({"n":4,"edges":[[0,1],[1,2],[2,3],[3,0]]})", &c4) == RWB_OK);
  REQUIRE(rwb_clique_cover(c4, &out) == RWB_OK);
  const ordered_json cover = take_json(out);
  CHECK(cover["size"] == 4);
  CHECK(cover["cover"].size() == 4);

  rwb_relation_t* reduced = nullptr;
  REQUIRE(rwb_cec_reduce(c4, 4, &reduced) == RWB_OK);
  REQUIRE(rwb_relation_to_json(reduced, &out) == RWB_OK);
  CHECK(take_json(out)["n"] == 5);
  rwb_relation_free(reduced);
  CHECK(rwb_cec_reduce(c4, 0, &reduced) == RWB_ERR_ARGUMENT);
  rwb_graph_free(c4);
}
