/* Copyright 2026 The relwb authors
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface to the relation workbench. Objects are opaque handles created
 * from JSON strings; results come back as malloc'd JSON strings released with
 * rwb_string_free. Every function returns RWB_OK or an error status; the
 * message for the most recent failure on the calling thread is available via
 * rwb_last_error_message.
 */
#ifndef RELWB_H
#define RELWB_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rwb_status {
  RWB_OK = 0,
  RWB_ERR_PARSE = 1,
  RWB_ERR_ARGUMENT = 2,
  RWB_ERR_DIMENSION = 3,
  RWB_ERR_UNSUPPORTED = 4,
  RWB_ERR_PRECONDITION = 5,
  RWB_ERR_INTERNAL = 6
} rwb_status;

typedef struct rwb_relation_s rwb_relation_t;
typedef struct rwb_structure_s rwb_structure_t;
typedef struct rwb_rep_s rwb_rep_t;
typedef struct rwb_pgroup_s rwb_pgroup_t;
typedef struct rwb_group_s rwb_group_t;
typedef struct rwb_graph_s rwb_graph_t;

/* Message for the most recent failure on this thread; empty string if none.
 * The pointer stays valid until the next failing call on the same thread. */
const char* rwb_last_error_message(void);
void rwb_string_free(char* s);

/* ----- binary relations ----- */
rwb_status rwb_relation_parse(const char* json, rwb_relation_t** out);
rwb_status rwb_relation_to_json(const rwb_relation_t* r, char** out_json);
void rwb_relation_free(rwb_relation_t* r);

/* Evaluates a prefix term such as "(kl (; x y))" in an environment of named
 * relations; base_hint resolves the base for variable-free terms. */
rwb_status rwb_eval_term(const char* term, const char* env_json, int base_hint,
                         char** out_json);

/* ----- abstract structures and representations ----- */
rwb_status rwb_structure_parse(const char* json, rwb_structure_t** out);
rwb_status rwb_structure_to_json(const rwb_structure_t* s, char** out_json);
void rwb_structure_free(rwb_structure_t* s);

rwb_status rwb_representation_parse(const char* json, const rwb_structure_t* s,
                                    rwb_rep_t** out);
rwb_status rwb_representation_to_json(const rwb_rep_t* r, char** out_json);
void rwb_representation_free(rwb_rep_t* r);

/* {"verdict":"ok"} or {"verdict":"violations","violations":[...]} */
rwb_status rwb_verify_representation(const rwb_rep_t* r, int threads, char** out_json);

/* {"verdict":"found","base":n,"assignment":{...}} or
 * {"verdict":"none_up_to","bound":n}. generators_csv optionally lists element
 * names, comma separated, enumerated first. */
rwb_status rwb_search_representation(const rwb_structure_t* s, int max_base,
                                     const char* generators_csv, char** out_json);

/* ----- square partial groups and finite groups ----- */
rwb_status rwb_pgroup_parse(const char* json, rwb_pgroup_t** out);
void rwb_pgroup_free(rwb_pgroup_t* p);
rwb_status rwb_group_parse(const char* json, rwb_group_t** out);
void rwb_group_free(rwb_group_t* g);

/* {"verdict":"ok"} or {"verdict":"invalid","issues":[...]} */
rwb_status rwb_pgroup_validate(const rwb_pgroup_t* p, char** out_json);

/* {"verdict":"found","order":m,"group":{...},"mapping":{...}} or
 * {"verdict":"none_up_to","bound":n} */
rwb_status rwb_pgroup_embed(const rwb_pgroup_t* p, int max_order, char** out_json);

/* Homotopy report for the canonical map into the matrix structure of p
 * (target "e0") or the name-matched map into the matrix units over a group
 * (target "b3", group required). */
rwb_status rwb_pgroup_homotopy(const rwb_pgroup_t* p, const char* target,
                               const rwb_group_t* g, char** out_json);

/* ----- constructed structures ----- */
rwb_status rwb_construct_e0(const rwb_pgroup_t* p, rwb_structure_t** out);

/* Formal-sum structure summary; variant 1 or 2. export_tables adds the
 * carrier and the constant/unary tables. */
rwb_status rwb_construct_formal_sum(const rwb_pgroup_t* p, int variant, int strict_compat,
                                    int export_tables, char** out_json);

rwb_status rwb_construct_b3(const rwb_group_t* g, rwb_structure_t** out);

/* Standard representation of the matrix units over base 3*|G|. */
rwb_status rwb_construct_theta(const rwb_group_t* g, char** out_json);

/* Representation of the first formal-sum structure in {-,;}; partial-group
 * element names must name group elements. Output carries the representation
 * plus "replaced" and "group". */
rwb_status rwb_construct_theta_plus(const rwb_pgroup_t* p, const rwb_group_t* g,
                                    char** out_json);

/* ----- Green's relations ----- */
/* {"L":[[names]],"R":[[names]],"H":[[names]]} in first-seen class order */
rwb_status rwb_greens_classify(const rwb_structure_t* s, char** out_json);
rwb_status rwb_rel_semigroup(int n, rwb_structure_t** out);

/* ----- graphs and the kernel problem ----- */
rwb_status rwb_graph_parse(const char* json, rwb_graph_t** out);
void rwb_graph_free(rwb_graph_t* g);

/* {"verdict":"yes","witness":[[x,y],...]} or {"verdict":"no"} */
rwb_status rwb_kernel_decide(const rwb_relation_t* r, char** out_json);
/* {"result":true|false} */
rwb_status rwb_kernel_witness_check(const rwb_relation_t* r, const rwb_relation_t* s,
                                    char** out_json);
rwb_status rwb_kernel_lemma_report(const rwb_relation_t* r, char** out_json);
rwb_status rwb_cec_reduce(const rwb_graph_t* g, int k, rwb_relation_t** out);
/* {"size":k,"cover":[[v,...],...]} */
rwb_status rwb_clique_cover(const rwb_graph_t* g, char** out_json);

#ifdef __cplusplus
}
#endif

#endif /* RELWB_H */
