// Command-line surface over the headers: parse terms, enumerate and factor
// morphisms, render posets and covers, run checks, completions, contractions,
// Cech nerves, flagged nerves, and the acceptance suites.
//
// Exit codes: 0 success, 1 a check whose verdict is false, 2 input error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "thetacat/catalog.hpp"
#include "thetacat/completion.hpp"
#include "thetacat/e_nerve.hpp"
#include "thetacat/flags.hpp"
#include "thetacat/json_io.hpp"
#include "thetacat/ncat.hpp"
#include "thetacat/poset.hpp"
#include "thetacat/segal.hpp"
#include "thetacat/suite.hpp"
#include "thetacat/theta.hpp"
#include "thetacat/theta_set.hpp"

namespace {

using nlohmann::json;
using namespace thetacat;

void put(const json& j, bool pretty) {
  std::cout << (pretty ? j.dump(2) : j.dump()) << "\n";
}

// Catalog expression, or a groupoid JSON file when the argument names one.
NCatPtr load_category(const std::string& input) {
  if (std::filesystem::exists(input)) return groupoid_from_json(load_json_file(input));
  return parse_catalog(input);
}

void print_segal_rows(const SegalReport& R) {
  for (const auto& row : R.rows)
    std::printf("%-28s %6zu %6zu  %s\n", to_string(row.object).c_str(),
                row.lhs, row.rhs, row.status.c_str());
}

int cmd_hom(const std::string& s, const std::string& t, bool list, bool js) {
  ThetaObj S = parse_obj(s), T = parse_obj(t);
  auto mors = enumerate_morphisms(S, T);
  if (js) {
    json j;
    j["source"] = theta_obj_to_json(S);
    j["target"] = theta_obj_to_json(T);
    j["count"] = mors.size();
    if (list) {
      json l = json::array();
      for (const auto& m : mors) l.push_back(theta_mor_to_json(m));
      j["morphisms"] = std::move(l);
    }
    put(j, true);
  } else {
    std::cout << mors.size() << "\n";
    if (list)
      for (const auto& m : mors) put(theta_mor_to_json(m), false);
  }
  return 0;
}

int cmd_compose(const std::string& s, const std::string& m,
                const std::string& t, const std::string& ffile,
                const std::string& gfile, bool js) {
  ThetaObj S = parse_obj(s), M = parse_obj(m), T = parse_obj(t);
  ThetaMor f = theta_mor_from_json(load_json_file(ffile), S, M);
  ThetaMor g = theta_mor_from_json(load_json_file(gfile), M, T);
  put(theta_mor_to_json(compose(g, f)), js);
  return 0;
}

int cmd_factor(const std::string& s, const std::string& t,
               const std::string& mfile, bool js) {
  ThetaObj S = parse_obj(s), T = parse_obj(t);
  ThetaMor m = theta_mor_from_json(load_json_file(mfile), S, T);
  auto [act, cls] = factor_active_closed(m);
  json j;
  j["middle"] = theta_obj_to_json(act.target);
  j["active"] = theta_mor_to_json(act);
  j["closed"] = theta_mor_to_json(cls);
  put(j, js);
  return 0;
}

int cmd_poset(const std::string& t, bool full, bool dot) {
  ClosedSlicePoset P = closed_slice_poset(parse_obj(t), !full);
  if (dot) {
    std::cout << to_dot(P);
    return 0;
  }
  std::cout << "nodes " << P.nodes.size() << "\n";
  for (std::size_t k = 0; k < P.nodes.size(); ++k)
    std::cout << k << ": " << poset_node_label(P.nodes[k]) << "\n";
  return 0;
}

int cmd_cover(const std::string& t, bool js, bool dot) {
  SegalCover C = maximal_segal_cover(parse_obj(t));
  if (dot) {
    std::cout << complex_to_dot(C.diagram, "cover");
    return 0;
  }
  if (js) {
    put(complex_to_json(C.diagram), true);
    return 0;
  }
  std::cout << "vertices " << C.diagram.vertices.size() << " edges "
            << C.diagram.edges.size() << "\n";
  return 0;
}

int cmd_check_segal(const std::string& cat_name, const std::string& complex_file,
                    int bound, bool js) {
  ThetaSet F;
  if (!cat_name.empty()) {
    F = nerve(parse_catalog(cat_name), cat_name);
  } else {
    CellComplex K = complex_from_json(load_json_file(complex_file));
    if (!well_formed(K)) throw std::invalid_argument("malformed cell complex");
    int h = 0;
    for (const auto& v : K.vertices) h = std::max(h, v.height);
    F = complex_colimit(K, h);
  }
  SegalReport R = is_segal(F, bound);
  if (js)
    put(segal_report_to_json(R), true);
  else {
    print_segal_rows(R);
    std::cout << (R.ok ? "segal pass" : "segal fail") << "\n";
  }
  return R.ok ? 0 : 1;
}

int cmd_check_groupoid(const std::string& input, bool js) {
  NCatPtr C = load_category(input);
  bool ok = is_strict_groupoid(C);
  if (js) {
    json j;
    j["ok"] = ok;
    put(j, true);
  } else {
    std::cout << (ok ? "groupoid pass" : "groupoid fail") << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_check_flag(const std::string& cat_name, const std::string& file,
                   bool js) {
  bool ok = false;
  std::string why;
  if (!cat_name.empty()) {
    FlagReport fr = is_flagged(max_sub_flag(parse_catalog(cat_name)));
    ok = fr.ok;
    why = fr.what;
  } else {
    ok = set_flag_ok(set_flag_from_json(load_json_file(file)), &why);
  }
  if (js) {
    json j;
    j["ok"] = ok;
    if (!ok) j["why"] = why;
    put(j, true);
  } else {
    std::cout << (ok ? "flag pass" : "flag fail: " + why) << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_check_cover(const std::string& t, int bound, bool js) {
  SegalCover C = maximal_segal_cover(parse_obj(t));
  std::string why;
  bool ok = verify_cover_in_closed(C, bound, &why);
  if (js) {
    json j;
    j["ok"] = ok;
    if (!ok) j["why"] = why;
    put(j, true);
  } else {
    std::cout << (ok ? "cover pass" : "cover fail: " + why) << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_complete(const std::string& input, const std::string& t, int bound,
                 bool js) {
  NCatPtr C = load_category(input);
  ThetaObj T = parse_obj(t);
  if (T.height > C->level)
    throw std::invalid_argument("probe height exceeds the category level");
  T = pad(T, C->level);
  NatOptions nopt;
  nopt.extend_bound = bound;
  CompletionClasses cc = completion_classes(C, T, nopt);
  if (js) {
    json j;
    j["object"] = to_string(cc.object);
    j["classes"] = cc.partition.classes.size();
    j["partition"] = partition_to_json(cc.partition);
    j["witnesses"] = cc.witness_count;
    put(j, true);
  } else {
    std::cout << "classes " << cc.partition.classes.size() << "\n";
    put(partition_to_json(cc.partition), false);
  }
  return 0;
}

int cmd_contract(const std::string& t, bool js) {
  Contraction c = build_contraction(parse_obj(t));
  if (js) {
    json j;
    j["term"] = to_string(c.S);
    j["e30"] = c.e30_ok;
    j["strictly_functorial"] = c.strictly_functorial;
    j["functor"] = fun_to_json(c.H);
    put(j, true);
  } else {
    std::cout << "endpoints " << (c.e30_ok ? "pass" : "fail")
              << "\nstrictly-functorial " << (c.strictly_functorial ? "yes" : "no")
              << "\n";
  }
  return c.e30_ok ? 0 : 1;
}

int cmd_cech(const std::string& file, int bound, bool js) {
  SetFlag f = set_flag_from_json(load_json_file(file));
  std::string why;
  if (!set_flag_ok(f, &why)) throw std::invalid_argument("bad set flag: " + why);
  NCatPtr C = cech_cat(f);
  ThetaSet cover = cech_flag(f);
  bool seg = is_segal(cover, bound).ok;
  bool gob = is_groupoid_object(C);
  SetPartition P = set_colimit(cover);
  bool match = P.classes.size() == f.levels[1].size();
  bool ok = seg && gob && match;
  if (js) {
    json j;
    j["segal"] = seg;
    j["groupoid_object"] = gob;
    j["classes"] = P.classes.size();
    j["target"] = f.levels[1].size();
    j["table"] = tabulate_to_json(cover, enumerate_objects(cover.height, bound));
    put(j, true);
  } else {
    std::cout << "segal " << (seg ? "pass" : "fail") << "\ngroupoid-object "
              << (gob ? "pass" : "fail") << "\nclasses " << P.classes.size()
              << " target " << f.levels[1].size() << "\n";
  }
  return ok ? 0 : 1;
}

int cmd_flag_nerve(const std::string& cat_name, const std::string& t, int bound,
                   bool js) {
  FlaggedSeq seq = max_sub_flag(parse_catalog(cat_name));
  ThetaSet F = flagged_nerve(seq);
  std::vector<ThetaObj> objs;
  if (!t.empty()) {
    ThetaObj T = parse_obj(t);
    if (T.height > F.height)
      throw std::invalid_argument("probe height exceeds the flag level");
    objs.push_back(pad(T, F.height));
  } else
    objs = enumerate_objects(F.height, bound);
  if (js) {
    put(tabulate_to_json(F, objs), true);
  } else if (!t.empty()) {
    std::cout << F.card(objs[0]) << "\n";
  } else {
    for (const auto& T : objs)
      std::cout << to_string(T) << " " << F.card(T) << "\n";
  }
  return 0;
}

int cmd_suite(const std::string& name, int bound, unsigned seed) {
  SuiteOptions opt;
  opt.bound = bound;
  opt.seed = seed;
  auto results = run_suite(name, opt);
  std::size_t passed = 0;
  for (const auto& r : results) {
    std::printf("%s %2d %-36s %s\n", r.pass ? "PASS" : "FAIL", r.number,
                r.name.c_str(), r.detail.c_str());
    if (r.pass) ++passed;
  }
  std::printf("passed %zu of %zu\n", passed, results.size());
  return passed == results.size() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite higher-category calculator"};
  app.require_subcommand(1);
  int rc = 0;

  // hom
  std::string hom_s, hom_t;
  bool hom_list = false, hom_json = false;
  auto* hom = app.add_subcommand("hom", "count morphisms between two terms");
  hom->add_option("source", hom_s, "source term")->required();
  hom->add_option("target", hom_t, "target term")->required();
  hom->add_flag("--list", hom_list, "list each morphism");
  hom->add_flag("--json", hom_json, "JSON output");
  hom->callback([&] { rc = cmd_hom(hom_s, hom_t, hom_list, hom_json); });

  // compose
  std::string co_s, co_m, co_t, co_f, co_g;
  bool co_json = false;
  auto* co = app.add_subcommand("compose", "compose two morphisms g after f");
  co->add_option("source", co_s, "source term")->required();
  co->add_option("middle", co_m, "middle term")->required();
  co->add_option("target", co_t, "target term")->required();
  co->add_option("f", co_f, "morphism file source->middle")->required();
  co->add_option("g", co_g, "morphism file middle->target")->required();
  co->add_flag("--json", co_json, "pretty JSON output");
  co->callback([&] { rc = cmd_compose(co_s, co_m, co_t, co_f, co_g, co_json); });

  // factor
  std::string fa_s, fa_t, fa_m;
  bool fa_json = false;
  auto* fa = app.add_subcommand("factor", "active-closed factorization");
  fa->add_option("source", fa_s, "source term")->required();
  fa->add_option("target", fa_t, "target term")->required();
  fa->add_option("morphism", fa_m, "morphism file")->required();
  fa->add_flag("--json", fa_json, "pretty JSON output");
  fa->callback([&] { rc = cmd_factor(fa_s, fa_t, fa_m, fa_json); });

  // poset
  std::string po_t;
  bool po_full = false, po_dot = false;
  auto* po = app.add_subcommand("poset", "closed subobject poset of a term");
  po->add_option("term", po_t, "object term")->required();
  po->add_flag("--full", po_full, "all closed subobjects, not only cells");
  po->add_flag("--dot", po_dot, "DOT output");
  po->callback([&] { rc = cmd_poset(po_t, po_full, po_dot); });

  // cover
  std::string cv_t;
  bool cv_json = false, cv_dot = false;
  auto* cv = app.add_subcommand("cover", "canonical cell cover of a term");
  cv->add_option("term", cv_t, "object term")->required();
  cv->add_flag("--json", cv_json, "cell complex JSON");
  cv->add_flag("--dot", cv_dot, "DOT output");
  cv->callback([&] { rc = cmd_cover(cv_t, cv_json, cv_dot); });

  // check
  auto* ck = app.add_subcommand("check", "run a verdict-valued check");
  ck->require_subcommand(1);

  std::string cs_cat, cs_complex;
  int cs_bound = 6;
  bool cs_json = false;
  auto* cs = ck->add_subcommand("segal", "sheaf condition for the cell covers");
  auto* cs_a = cs->add_option("--catalog", cs_cat, "catalog expression");
  auto* cs_b = cs->add_option("--complex", cs_complex, "cell complex file");
  cs_a->excludes(cs_b);
  cs->add_option("--bound", cs_bound, "max nodes of probe terms");
  cs->add_flag("--json", cs_json, "JSON report");
  cs->callback([&] {
    if (cs_cat.empty() && cs_complex.empty())
      throw CLI::RequiredError("--catalog or --complex");
    rc = cmd_check_segal(cs_cat, cs_complex, cs_bound, cs_json);
  });

  std::string cg_cat, cg_file;
  bool cg_json = false;
  auto* cg = ck->add_subcommand("groupoid", "every arrow invertible");
  auto* cg_a = cg->add_option("--catalog", cg_cat, "catalog expression");
  auto* cg_b = cg->add_option("--file", cg_file, "groupoid JSON file");
  cg_a->excludes(cg_b);
  cg->add_flag("--json", cg_json, "JSON verdict");
  cg->callback([&] {
    if (cg_cat.empty() && cg_file.empty())
      throw CLI::RequiredError("--catalog or --file");
    rc = cmd_check_groupoid(cg_cat.empty() ? cg_file : cg_cat, cg_json);
  });

  std::string cf_cat, cf_file;
  bool cf_json = false;
  auto* cf = ck->add_subcommand("flag", "tower of surjections onto a category");
  auto* cf_a = cf->add_option("--catalog", cf_cat, "catalog expression");
  auto* cf_b = cf->add_option("--file", cf_file, "set flag JSON file");
  cf_a->excludes(cf_b);
  cf->add_flag("--json", cf_json, "JSON verdict");
  cf->callback([&] {
    if (cf_cat.empty() && cf_file.empty())
      throw CLI::RequiredError("--catalog or --file");
    rc = cmd_check_flag(cf_cat, cf_file, cf_json);
  });

  std::string cc_term;
  int cc_bound = 6;
  bool cc_json = false;
  auto* cc = ck->add_subcommand("cover", "cover is a colimit among closed maps");
  cc->add_option("term", cc_term, "object term")->required();
  cc->add_option("--bound", cc_bound, "max nodes of probe terms");
  cc->add_flag("--json", cc_json, "JSON verdict");
  cc->callback([&] { rc = cmd_check_cover(cc_term, cc_bound, cc_json); });

  // complete
  std::string cp_in, cp_t;
  int cp_bound = 6;
  bool cp_json = false;
  auto* cp = app.add_subcommand("complete", "classes of the completed presheaf");
  cp->add_option("category", cp_in, "catalog expression or groupoid file")->required();
  cp->add_option("term", cp_t, "probe term")->required();
  cp->add_option("--bound", cp_bound, "witness extension bound");
  cp->add_flag("--json", cp_json, "JSON report");
  cp->callback([&] { rc = cmd_complete(cp_in, cp_t, cp_bound, cp_json); });

  // contract
  std::string ct_t;
  bool ct_json = false;
  auto* ct = app.add_subcommand("contract", "build and verify the contraction");
  ct->add_option("term", ct_t, "object term")->required();
  ct->add_flag("--json", ct_json, "JSON report with the functor table");
  ct->callback([&] { rc = cmd_contract(ct_t, ct_json); });

  // cech
  std::string ce_file;
  int ce_bound = 4;
  bool ce_json = false;
  auto* ce = app.add_subcommand("cech", "Cech nerve of a set flag");
  ce->add_option("flag", ce_file, "set flag JSON file")->required();
  ce->add_option("--bound", ce_bound, "max nodes of probe terms");
  ce->add_flag("--json", ce_json, "JSON report with a cardinality table");
  ce->callback([&] { rc = cmd_cech(ce_file, ce_bound, ce_json); });

  // flag-nerve
  std::string fn_cat, fn_t;
  int fn_bound = 6;
  bool fn_json = false;
  auto* fn = app.add_subcommand("flag-nerve",
                                "nerve of the maximal subcategory flag");
  fn->add_option("category", fn_cat, "catalog expression")->required();
  fn->add_option("term", fn_t, "probe term (omit to tabulate)");
  fn->add_option("--bound", fn_bound, "max nodes when tabulating");
  fn->add_flag("--json", fn_json, "tabulated JSON");
  fn->callback([&] { rc = cmd_flag_nerve(fn_cat, fn_t, fn_bound, fn_json); });

  // suite
  std::string su_name;
  int su_bound = 6;
  unsigned su_seed = 0;
  auto* su = app.add_subcommand("suite", "run an acceptance suite");
  su->add_option("name", su_name, "core|segal|completion|flags|all")->required();
  su->add_option("--bound", su_bound, "max nodes of quantified terms");
  su->add_option("--seed", su_seed, "base seed for randomized criteria");
  su->callback([&] { rc = cmd_suite(su_name, su_bound, su_seed); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
