// Copyright 2026 The relwb authors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front door. Reads JSON files, dispatches through the C API,
// prints one JSON document per invocation on standard output. Exit codes:
// 0 decided, 2 input error, 3 bounded-search exhaustion.
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "relwb.h"

namespace {

struct CliError {
  rwb_status status;
  std::string message;
};

struct StrDel {
  void operator()(char* s) const { rwb_string_free(s); }
};
struct RelDel {
  void operator()(rwb_relation_t* p) const { rwb_relation_free(p); }
};
struct StructDel {
  void operator()(rwb_structure_t* p) const { rwb_structure_free(p); }
};
struct RepDel {
  void operator()(rwb_rep_t* p) const { rwb_representation_free(p); }
};
struct PGroupDel {
  void operator()(rwb_pgroup_t* p) const { rwb_pgroup_free(p); }
};
struct GroupDel {
  void operator()(rwb_group_t* p) const { rwb_group_free(p); }
};
struct GraphDel {
  void operator()(rwb_graph_t* p) const { rwb_graph_free(p); }
};

using StrPtr = std::unique_ptr<char, StrDel>;
using RelPtr = std::unique_ptr<rwb_relation_t, RelDel>;
using StructPtr = std::unique_ptr<rwb_structure_t, StructDel>;
using RepPtr = std::unique_ptr<rwb_rep_t, RepDel>;
using PGroupPtr = std::unique_ptr<rwb_pgroup_t, PGroupDel>;
using GroupPtr = std::unique_ptr<rwb_group_t, GroupDel>;
using GraphPtr = std::unique_ptr<rwb_graph_t, GraphDel>;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{RWB_ERR_PARSE, "cannot read file '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void check(rwb_status st, const std::string& path = "") {
  if (st == RWB_OK) return;
  std::string m = rwb_last_error_message();
  throw CliError{st, path.empty() ? m : path + ": " + m};
}

RelPtr load_relation(const std::string& path) {
  rwb_relation_t* r = nullptr;
  check(rwb_relation_parse(slurp(path).c_str(), &r), path);
  return RelPtr(r);
}
StructPtr load_structure(const std::string& path) {
  rwb_structure_t* s = nullptr;
  check(rwb_structure_parse(slurp(path).c_str(), &s), path);
  return StructPtr(s);
}
PGroupPtr load_pgroup(const std::string& path) {
  rwb_pgroup_t* p = nullptr;
  check(rwb_pgroup_parse(slurp(path).c_str(), &p), path);
  return PGroupPtr(p);
}
GroupPtr load_group(const std::string& path) {
  rwb_group_t* g = nullptr;
  check(rwb_group_parse(slurp(path).c_str(), &g), path);
  return GroupPtr(g);
}
GraphPtr load_graph(const std::string& path) {
  rwb_graph_t* g = nullptr;
  check(rwb_graph_parse(slurp(path).c_str(), &g), path);
  return GraphPtr(g);
}

const char* status_code_name(rwb_status st) {
  switch (st) {
    case RWB_ERR_PARSE: return "parse";
    case RWB_ERR_ARGUMENT: return "argument";
    case RWB_ERR_DIMENSION: return "dimension";
    case RWB_ERR_UNSUPPORTED: return "unsupported";
    case RWB_ERR_PRECONDITION: return "precondition";
    default: return "internal";
  }
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string human_hint(const std::string& js) {
  for (const char* key : {"\"verdict\":", "\"result\":", "\"ok\":"}) {
    const size_t at = js.find(key);
    if (at == std::string::npos) continue;
    size_t from = at + std::strlen(key);
    size_t to = js.find_first_of(",}", from);
    if (to == std::string::npos) to = js.size();
    std::string value = js.substr(from, to - from);
    if (value.size() >= 2 && value.front() == '"') value = value.substr(1, value.size() - 2);
    std::string name(key);
    return name.substr(1, name.size() - 3) + ": " + value;
  }
  return "done";
}

bool g_json_only = false;

int finish(char* out) {
  StrPtr guard(out);
  const std::string js(out);
  std::cout << js << "\n";
  if (!g_json_only) std::cerr << "relwb: " << human_hint(js) << "\n";
  return js.find("\"verdict\":\"none_up_to\"") != std::string::npos ? 3 : 0;
}

int emit_structure(rwb_structure_t* raw) {
  StructPtr s(raw);
  char* out = nullptr;
  check(rwb_structure_to_json(s.get(), &out));
  return finish(out);
}

int emit_relation(rwb_relation_t* raw) {
  RelPtr r(raw);
  char* out = nullptr;
  check(rwb_relation_to_json(r.get(), &out));
  return finish(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for binary relations, weak relation-algebra signatures and kernels"};
  app.require_subcommand(1);

  int threads = 1;
  bool strict_e2 = false;
  app.add_flag("--json", g_json_only, "machine output only (suppress the stderr summary)");
  app.add_option("--threads", threads, "worker threads for representation checking")
      ->check(CLI::PositiveNumber);
  app.add_flag("--compat-strict-e2", strict_e2,
               "strict reading of the variant-2 formal-sum composition");

  int exit_code = 0;
  auto run = [&exit_code](auto&& fn) {
    return [&exit_code, fn]() { exit_code = fn(); };
  };

  // rel
  auto* rel = app.add_subcommand("rel", "evaluate terms and check or search representations");
  rel->require_subcommand(1);
  {
    auto* eval = rel->add_subcommand("eval", "evaluate an s-expression term over Rel(X)");
    auto term = std::make_shared<std::string>();
    auto env = std::make_shared<std::string>();
    auto base = std::make_shared<int>(0);
    eval->add_option("--term", *term, "s-expression, e.g. (compose (kl x) y)")->required();
    eval->add_option("--env", *env, "JSON file mapping variables to relations");
    eval->add_option("--base", *base, "base size for variable-free terms");
    eval->callback(run([term, env, base] {
      std::string env_text;
      if (!env->empty()) env_text = slurp(*env);
      char* out = nullptr;
      check(rwb_eval_term(term->c_str(), env_text.empty() ? nullptr : env_text.c_str(),
                          *base, &out));
      return finish(out);
    }));
  }
  {
    auto* chk = rel->add_subcommand("check-rep", "verify a representation candidate");
    auto sfile = std::make_shared<std::string>();
    auto rfile = std::make_shared<std::string>();
    chk->add_option("--structure", *sfile, "structure JSON file")->required();
    chk->add_option("--rep", *rfile, "representation JSON file")->required();
    chk->callback(run([sfile, rfile, &threads] {
      StructPtr s = load_structure(*sfile);
      rwb_rep_t* rep_raw = nullptr;
      check(rwb_representation_parse(slurp(*rfile).c_str(), s.get(), &rep_raw), *rfile);
      RepPtr rep(rep_raw);
      char* out = nullptr;
      check(rwb_verify_representation(rep.get(), threads, &out));
      return finish(out);
    }));
  }
  {
    auto* sr = rel->add_subcommand("search-rep", "bounded brute-force representation search");
    auto sfile = std::make_shared<std::string>();
    auto gens = std::make_shared<std::string>();
    auto max_base = std::make_shared<int>(0);
    sr->add_option("--structure", *sfile, "structure JSON file")->required();
    sr->add_option("--max-base", *max_base, "largest base size to try")->required();
    sr->add_option("--generators", *gens, "comma-separated generator names");
    sr->callback(run([sfile, gens, max_base] {
      StructPtr s = load_structure(*sfile);
      char* out = nullptr;
      check(rwb_search_representation(s.get(), *max_base,
                                      gens->empty() ? nullptr : gens->c_str(), &out));
      return finish(out);
    }));
  }

  // construct
  auto* cons = app.add_subcommand("construct", "reduction structures from partial groups and groups");
  cons->require_subcommand(1);
  {
    auto* e0 = cons->add_subcommand("e0", "matrix-unit structure over a square partial group");
    auto pfile = std::make_shared<std::string>();
    e0->add_option("--pgroup", *pfile, "partial group JSON file")->required();
    e0->callback(run([pfile] {
      PGroupPtr p = load_pgroup(*pfile);
      rwb_structure_t* s = nullptr;
      check(rwb_construct_e0(p.get(), &s));
      return emit_structure(s);
    }));
  }
  for (int variant : {1, 2}) {
    auto* ev = cons->add_subcommand(variant == 1 ? "e1" : "e2",
                                    variant == 1
                                        ? "formal-sum expansion with barred singletons"
                                        : "formal-sum expansion with barred subsets");
    auto pfile = std::make_shared<std::string>();
    auto export_tables = std::make_shared<bool>(false);
    ev->add_option("--pgroup", *pfile, "partial group JSON file")->required();
    ev->add_flag("--export-tables", *export_tables, "include carrier and dense tables");
    ev->callback(run([pfile, export_tables, variant, &strict_e2] {
      PGroupPtr p = load_pgroup(*pfile);
      char* out = nullptr;
      check(rwb_construct_formal_sum(p.get(), variant, strict_e2 ? 1 : 0,
                                     *export_tables ? 1 : 0, &out));
      return finish(out);
    }));
  }
  {
    auto* b3 = cons->add_subcommand("b3", "group-labelled 3x3 matrix-unit semigroup");
    auto gfile = std::make_shared<std::string>();
    b3->add_option("--group", *gfile, "group JSON file")->required();
    b3->callback(run([gfile] {
      GroupPtr g = load_group(*gfile);
      rwb_structure_t* s = nullptr;
      check(rwb_construct_b3(g.get(), &s));
      return emit_structure(s);
    }));
  }
  {
    auto* th = cons->add_subcommand("theta", "standard representation of the b3 structure");
    auto gfile = std::make_shared<std::string>();
    th->add_option("--group", *gfile, "group JSON file")->required();
    th->callback(run([gfile] {
      GroupPtr g = load_group(*gfile);
      char* out = nullptr;
      check(rwb_construct_theta(g.get(), &out));
      return finish(out);
    }));
  }
  {
    auto* tp = cons->add_subcommand(
        "theta-plus", "representation of the formal-sum reduct from a group embedding");
    auto pfile = std::make_shared<std::string>();
    auto gfile = std::make_shared<std::string>();
    tp->add_option("--pgroup", *pfile, "partial group JSON file")->required();
    tp->add_option("--group", *gfile, "group JSON file; element names must cover the partial group")
        ->required();
    tp->callback(run([pfile, gfile] {
      PGroupPtr p = load_pgroup(*pfile);
      GroupPtr g = load_group(*gfile);
      char* out = nullptr;
      check(rwb_construct_theta_plus(p.get(), g.get(), &out));
      return finish(out);
    }));
  }

  // pgroup
  auto* pg = app.add_subcommand("pgroup", "square partial groups");
  pg->require_subcommand(1);
  {
    auto* val = pg->add_subcommand("validate", "check the square partial group axioms");
    auto pfile = std::make_shared<std::string>();
    val->add_option("--pgroup", *pfile, "partial group JSON file")->required();
    val->callback(run([pfile] {
      PGroupPtr p = load_pgroup(*pfile);
      char* out = nullptr;
      check(rwb_pgroup_validate(p.get(), &out));
      return finish(out);
    }));
  }
  {
    auto* emb = pg->add_subcommand("embed", "bounded completion to a finite group");
    auto pfile = std::make_shared<std::string>();
    auto max_order = std::make_shared<int>(0);
    emb->add_option("--pgroup", *pfile, "partial group JSON file")->required();
    emb->add_option("--max-order", *max_order, "largest group order to try")->required();
    emb->callback(run([pfile, max_order] {
      PGroupPtr p = load_pgroup(*pfile);
      char* out = nullptr;
      check(rwb_pgroup_embed(p.get(), *max_order, &out));
      return finish(out);
    }));
  }
  {
    auto* hom = pg->add_subcommand("homotopy", "H-embedding report for the canonical homotopy");
    auto pfile = std::make_shared<std::string>();
    auto gfile = std::make_shared<std::string>();
    auto target = std::make_shared<std::string>("e0");
    hom->add_option("--pgroup", *pfile, "partial group JSON file")->required();
    hom->add_option("--target", *target, "target structure: e0 or b3");
    hom->add_option("--group", *gfile, "group JSON file (required for --target b3)");
    hom->callback(run([pfile, gfile, target] {
      PGroupPtr p = load_pgroup(*pfile);
      GroupPtr g;
      if (!gfile->empty()) g = load_group(*gfile);
      char* out = nullptr;
      check(rwb_pgroup_homotopy(p.get(), target->c_str(), g.get(), &out));
      return finish(out);
    }));
  }

  // greens
  auto* gr = app.add_subcommand("greens", "Green's relations on finite composition tables");
  gr->require_subcommand(1);
  {
    auto* cls = gr->add_subcommand("classify", "L/R/H class partitions of a ;-table");
    auto sfile = std::make_shared<std::string>();
    cls->add_option("--structure", *sfile, "structure JSON file with a ; table")->required();
    cls->callback(run([sfile] {
      StructPtr s = load_structure(*sfile);
      char* out = nullptr;
      check(rwb_greens_classify(s.get(), &out));
      return finish(out);
    }));
  }
  {
    auto* rs = gr->add_subcommand("relsemigroup", "full semigroup of binary relations on n points");
    auto n = std::make_shared<int>(0);
    rs->add_option("--n", *n, "base size (1..3)")->required();
    rs->callback(run([n] {
      rwb_structure_t* s = nullptr;
      check(rwb_rel_semigroup(*n, &s));
      return emit_structure(s);
    }));
  }

  // kernel
  auto* ker = app.add_subcommand("kernel", "kernel decision, witnesses and clique edge covers");
  ker->require_subcommand(1);
  {
    auto* dec = ker->add_subcommand("decide", "is the relation a kernel of some relation?");
    auto rfile = std::make_shared<std::string>();
    dec->add_option("--relation", *rfile, "relation JSON file")->required();
    dec->callback(run([rfile] {
      RelPtr r = load_relation(*rfile);
      char* out = nullptr;
      check(rwb_kernel_decide(r.get(), &out));
      return finish(out);
    }));
  }
  {
    auto* wit = ker->add_subcommand("witness", "check kernel_left(witness) == relation");
    auto rfile = std::make_shared<std::string>();
    auto wfile = std::make_shared<std::string>();
    wit->add_option("--relation", *rfile, "relation JSON file")->required();
    wit->add_option("--witness", *wfile, "candidate witness relation JSON file")->required();
    wit->callback(run([rfile, wfile] {
      RelPtr r = load_relation(*rfile);
      RelPtr w = load_relation(*wfile);
      char* out = nullptr;
      check(rwb_kernel_witness_check(r.get(), w.get(), &out));
      return finish(out);
    }));
  }
  {
    auto* rep = ker->add_subcommand("lemma-report", "edge-cover condition versus the exact decision");
    auto rfile = std::make_shared<std::string>();
    rep->add_option("--relation", *rfile, "relation JSON file")->required();
    rep->callback(run([rfile] {
      RelPtr r = load_relation(*rfile);
      char* out = nullptr;
      check(rwb_kernel_lemma_report(r.get(), &out));
      return finish(out);
    }));
  }
  {
    auto* red = ker->add_subcommand("reduce-cec", "clique-edge-cover instance to kernel instance");
    auto gfile = std::make_shared<std::string>();
    auto k = std::make_shared<int>(0);
    red->add_option("--graph", *gfile, "loop-free graph JSON file")->required();
    red->add_option("--k", *k, "cover budget, 1..|E|")->required();
    red->callback(run([gfile, k] {
      GraphPtr g = load_graph(*gfile);
      rwb_relation_t* r = nullptr;
      check(rwb_cec_reduce(g.get(), *k, &r));
      return emit_relation(r);
    }));
  }
  {
    auto* cov = ker->add_subcommand("cover", "exact minimum clique edge cover");
    auto gfile = std::make_shared<std::string>();
    cov->add_option("--graph", *gfile, "graph JSON file")->required();
    cov->callback(run([gfile] {
      GraphPtr g = load_graph(*gfile);
      char* out = nullptr;
      check(rwb_clique_cover(g.get(), &out));
      return finish(out);
    }));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const CliError& e) {
    std::cout << "{\"error\":{\"code\":\"" << status_code_name(e.status) << "\",\"message\":\""
              << json_escape(e.message) << "\"}}\n";
    std::cerr << "relwb: error: " << e.message << "\n";
    return 2;
  }
  return exit_code;
}
