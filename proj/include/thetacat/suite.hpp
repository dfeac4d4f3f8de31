#pragma once

// The numbered acceptance properties, each checked against an independent
// oracle, grouped into named suites shared by the command-line runner and
// the standalone gate binary.  Every check quantifies object terms by a node
// budget (default 6) over heights up to 3 and reports exact counts.

#include <chrono>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "thetacat/catalog.hpp"
#include "thetacat/completion.hpp"
#include "thetacat/e_nerve.hpp"
#include "thetacat/flags.hpp"
#include "thetacat/nat.hpp"
#include "thetacat/segal.hpp"

namespace thetacat {

struct SuiteOptions {
  int bound = 6;      // max node count for quantified object terms
  int max_height = 3;
  unsigned seed = 0;  // base seed for the randomized round trip
};

struct CriterionResult {
  int number = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

namespace detail {

struct HomCache {
  std::map<std::pair<std::string, std::string>, std::vector<ThetaMor>> map;
  const std::vector<ThetaMor>& get(const ThetaObj& S, const ThetaObj& T) {
    auto key = std::make_pair(obj_key(S), obj_key(T));
    auto it = map.find(key);
    if (it == map.end()) it = map.emplace(key, enumerate_morphisms(S, T)).first;
    return it->second;
  }
};

inline std::string pair_label(const ThetaObj& S, const ThetaObj& T) {
  return obj_key(S) + " -> " + obj_key(T);
}

inline std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

inline NFunPtr suite_pick_fun(const NCatPtr& A, const NCatPtr& B,
                              const std::vector<std::size_t>& omap) {
  for (const auto& f : enumerate_functors(A, B))
    if (f->omap == omap) return f;
  throw std::logic_error("suite: no functor with the requested object map");
}

}  // namespace detail

// 1. identity and associativity laws of term composition, exhaustively on
//    every hom set within the node budget; associativity triples range over
//    object quadruples within twice the budget
inline CriterionResult criterion_category_laws(const SuiteOptions& opt) {
  CriterionResult r{1, "category laws", true, "", 0.0};
  detail::HomCache hom;
  std::size_t units = 0, triples = 0;
  for (int h = 1; h <= opt.max_height; ++h) {
    auto objs = enumerate_objects(h, opt.bound);
    std::vector<int> nodes;
    for (const auto& t : objs) nodes.push_back(static_cast<int>(node_count(t)));
    const std::size_t n = objs.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (const auto& f : hom.get(objs[i], objs[j])) {
          if (!(compose(identity(objs[j]), f) == f) ||
              !(compose(f, identity(objs[i])) == f)) {
            r.pass = false;
            r.detail = "unit law fails on " + detail::pair_label(objs[i], objs[j]);
            return r;
          }
          ++units;
        }
    const int cap = 2 * opt.bound;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (nodes[a] + nodes[b] + 2 > cap) continue;
        const auto& fs = hom.get(objs[a], objs[b]);
        for (std::size_t c = 0; c < n; ++c) {
          if (nodes[a] + nodes[b] + nodes[c] + 1 > cap) continue;
          const auto& gs = hom.get(objs[b], objs[c]);
          for (std::size_t d = 0; d < n; ++d) {
            if (nodes[a] + nodes[b] + nodes[c] + nodes[d] > cap) continue;
            const auto& hs = hom.get(objs[c], objs[d]);
            for (const auto& f : fs)
              for (const auto& g : gs) {
                ThetaMor gf = compose(g, f);
                for (const auto& k : hs) {
                  if (!(compose(k, gf) == compose(compose(k, g), f))) {
                    r.pass = false;
                    r.detail = "associativity fails over " +
                               detail::pair_label(objs[a], objs[d]);
                    return r;
                  }
                  ++triples;
                }
              }
          }
        }
      }
  }
  std::ostringstream os;
  os << units << " unit and " << triples << " associativity instances";
  r.detail = os.str();
  return r;
}

// 2. the active-closed factorization recomposes to its input and is the only
//    factorization of its kind through any intermediate term in the budget
inline CriterionResult criterion_factorization(const SuiteOptions& opt) {
  CriterionResult r{2, "active-closed factorization", true, "", 0.0};
  detail::HomCache hom;
  std::size_t factored = 0;
  for (int h = 1; h <= opt.max_height; ++h) {
    auto objs = enumerate_objects(h, opt.bound);
    std::map<std::string, std::vector<const ThetaMor*>> actives, closeds;
    auto actives_of = [&](const ThetaObj& S, const ThetaObj& W)
        -> const std::vector<const ThetaMor*>& {
      std::string key = obj_key(S) + "|" + obj_key(W);
      auto it = actives.find(key);
      if (it == actives.end()) {
        std::vector<const ThetaMor*> v;
        for (const auto& m : hom.get(S, W))
          if (is_active(m)) v.push_back(&m);
        it = actives.emplace(key, std::move(v)).first;
      }
      return it->second;
    };
    auto closeds_of = [&](const ThetaObj& W, const ThetaObj& T)
        -> const std::vector<const ThetaMor*>& {
      std::string key = obj_key(W) + "|" + obj_key(T);
      auto it = closeds.find(key);
      if (it == closeds.end()) {
        std::vector<const ThetaMor*> v;
        for (const auto& m : hom.get(W, T))
          if (is_closed(m)) v.push_back(&m);
        it = closeds.emplace(key, std::move(v)).first;
      }
      return it->second;
    };
    for (const auto& S : objs)
      for (const auto& T : objs) {
        const auto& ms = hom.get(S, T);
        for (const auto& m : ms) {
          auto [act, cls] = factor_active_closed(m);
          if (!is_active(act) || !is_closed(cls) || !(compose(cls, act) == m)) {
            r.pass = false;
            r.detail = "factorization breaks on " + detail::pair_label(S, T);
            return r;
          }
          ++factored;
        }
        // every possible factorization, counted: exactly one per morphism
        std::map<std::string, std::size_t> count;
        for (const auto& W : objs)
          for (const ThetaMor* a : actives_of(S, W))
            for (const ThetaMor* c : closeds_of(W, T))
              ++count[mor_key(compose(*c, *a))];
        for (const auto& m : ms)
          if (count[mor_key(m)] != 1) {
            r.pass = false;
            std::ostringstream os;
            os << "factorization count " << count[mor_key(m)] << " on "
               << detail::pair_label(S, T);
            r.detail = os.str();
            return r;
          }
      }
  }
  std::ostringstream os;
  os << factored << " morphisms factored uniquely";
  r.detail = os.str();
  return r;
}

// 3. term hom counts equal functor counts between the realized categories
inline CriterionResult criterion_hom_counts(const SuiteOptions& opt) {
  CriterionResult r{3, "hom-functor counts", true, "", 0.0};
  std::size_t pairs = 0;
  for (int h = 1; h <= opt.max_height; ++h) {
    auto objs = enumerate_objects(h, opt.bound);
    for (const auto& S : objs)
      for (const auto& T : objs) {
        std::size_t lhs = hom_count(S, T);
        std::size_t rhs = enumerate_functors(from_theta(S), from_theta(T)).size();
        if (lhs != rhs) {
          std::ostringstream os;
          os << detail::pair_label(S, T) << ": " << lhs << " vs " << rhs;
          r.pass = false;
          r.detail = os.str();
          return r;
        }
        ++pairs;
      }
  }
  std::ostringstream os;
  os << pairs << " hom sets matched";
  r.detail = os.str();
  return r;
}

// 4. completion formula: the power law for simplex pairs, the full presheaf
//    match with hand-built codiscrete completions, and the one-cell count of
//    the completed 2-cell against a hand count over its completed hom
inline CriterionResult criterion_completion_formula(const SuiteOptions& opt) {
  CriterionResult r{4, "completion formula", true, "", 0.0};
  for (std::size_t p = 0; p <= 4; ++p)
    for (std::size_t q = 0; q <= 4; ++q)
      if (e_card(simplex(p), simplex(q)) != detail::ipow(p + 1, q + 1)) {
        std::ostringstream os;
        os << "power law fails at p=" << p << " q=" << q;
        r.pass = false;
        r.detail = os.str();
        return r;
      }
  for (std::size_t p = 1; p <= 2; ++p) {
    ThetaSet E = e_nerve(simplex(p));
    ThetaSet N = nerve(codiscrete_cat(p + 1), "codisc");
    for (const auto& S : enumerate_objects(1, opt.bound))
      if (E.card(S) != N.card(S)) {
        r.pass = false;
        r.detail = "codiscrete completion mismatch at " + obj_key(S);
        return r;
      }
  }
  // one-cells of the completed 2-cell: one per ordered vertex pair and
  // object of the completed hom (the codiscrete completion of the arrow)
  std::size_t hom_objects =
      nerve(codiscrete_cat(2), "codisc").card(cell(0, 1));
  std::size_t oracle = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) oracle += (a == b) ? 1 : hom_objects;
  std::size_t got = e_card(cell(2), cell(1, 2));
  if (got != oracle || got != 6) {
    std::ostringstream os;
    os << "completed 2-cell has " << got << " one-cells, oracle " << oracle;
    r.pass = false;
    r.detail = os.str();
    return r;
  }
  r.detail = "power law, codiscrete match, and 2-cell hand count agree";
  return r;
}

// 5. restriction along the completion unit is a bijection onto functors into
//    every cataloged strict groupoid
inline CriterionResult criterion_completion_universal(const SuiteOptions& opt) {
  CriterionResult r{5, "completion universal property", true, "", 0.0};
  std::size_t instances = 0;
  for (int h = 1; h <= opt.max_height; ++h) {
    auto gs = catalog_groupoids(h);
    for (const auto& T : enumerate_objects(h, opt.bound)) {
      ThetaSet E = e_nerve(T);
      std::size_t u = e_unit_element(T, identity(T));
      std::string tk = obj_key(T);
      NatOptions nopt{opt.bound, 4, {{T, {u}}}};
      for (const auto& e : gs) {
        std::size_t funs = enumerate_functors(from_theta(T), e.cat).size();
        NatResult W = natural_transformations(E, nerve(e.cat, e.name), nopt);
        std::set<std::size_t> images;
        for (const auto& el : W.elements)
          images.insert(el.queried.at(tk).at(u));
        if (W.elements.size() != funs || images.size() != funs) {
          std::ostringstream os;
          os << obj_key(T) << " into " << e.name << ": " << W.elements.size()
             << " maps, " << images.size() << " restrictions, " << funs
             << " functors";
          r.pass = false;
          r.detail = os.str();
          return r;
        }
        ++instances;
      }
    }
  }
  std::ostringstream os;
  os << instances << " restriction bijections";
  r.detail = os.str();
  return r;
}

// terms whose completions are swept by the Segal and collapse checks
inline std::vector<ThetaObj> suite_terms(int height) {
  switch (height) {
    case 1:
      return {cell(0, 1), simplex(1), simplex(2), simplex(3)};
    case 2:
      return {cell(0, 2), cell(1, 2), cell(2), pad(simplex(2), 2),
              ThetaObj{2, {cell(1), cell(1)}}};
    case 3:
      return {cell(0, 3), cell(2, 3), cell(3),
              ThetaObj{3, {ThetaObj{2, {cell(1), cell(1)}}}},
              pad(simplex(2), 3)};
    default:
      throw arity_error("suite_terms: height out of range");
  }
}

// 6. catalog nerves and completions satisfy the Segal condition; the spine
//    colimit fails it at the 2-simplex with cardinalities 7 against 8
inline CriterionResult criterion_segal(const SuiteOptions& opt) {
  CriterionResult r{6, "segal condition", true, "", 0.0};
  std::size_t passed = 0;
  for (int h = 1; h <= opt.max_height; ++h) {
    for (const auto& e : catalog_categories(h)) {
      SegalReport R = is_segal(nerve(e.cat, e.name), opt.bound);
      if (!R.ok) {
        r.pass = false;
        r.detail = "nerve of " + e.name + " is not a sheaf for the cover";
        return r;
      }
      ++passed;
    }
    for (const auto& T : suite_terms(h)) {
      SegalReport R = is_segal(e_nerve(T), opt.bound);
      if (!R.ok) {
        r.pass = false;
        r.detail = "completion of " + obj_key(T) + " fails the condition";
        return r;
      }
      ++passed;
    }
  }
  ThetaObj c0 = cell(0, 1), c1 = cell(1, 1);
  CellComplex spine;
  spine.vertices = {c1, c0, c1};
  spine.edges.push_back({1, 0, ThetaMor{c0, c1, {1}, {}}});
  spine.edges.push_back({1, 2, ThetaMor{c0, c1, {0}, {}}});
  ThetaSet X = complex_colimit(spine, 1);
  SegalReport R = is_segal(X, {simplex(2)});
  std::size_t lhs = R.rows.empty() ? 0 : R.rows[0].lhs;
  std::size_t rhs = R.rows.empty() ? 0 : R.rows[0].rhs;
  if (R.ok || lhs != 7 || rhs != 8) {
    std::ostringstream os;
    os << "spine defect expected 7 vs 8, saw " << lhs << " vs " << rhs;
    r.pass = false;
    r.detail = os.str();
    return r;
  }
  std::ostringstream os;
  os << passed << " sheaf checks, spine defect 7 vs 8";
  r.detail = os.str();
  return r;
}

// 7. the contraction onto the initial object exists with exact endpoint
//    tables for every term at heights one and two
inline CriterionResult criterion_contraction(const SuiteOptions& opt) {
  CriterionResult r{7, "contraction boundary conditions", true, "", 0.0};
  std::size_t built = 0, strict = 0;
  for (int h = 1; h <= 2; ++h)
    for (const auto& S : enumerate_objects(h, opt.bound)) {
      Contraction c = build_contraction(S);
      if (!c.e30_ok) {
        r.pass = false;
        r.detail = "endpoint tables fail at " + obj_key(S);
        return r;
      }
      ++built;
      if (c.strictly_functorial) ++strict;
    }
  std::ostringstream os;
  os << built << " contractions verified (" << strict
     << " strictly functorial)";
  r.detail = os.str();
  return r;
}

// 8. completion classes at the point agree with the two-sided-inverse
//    isomorphism classes on every cataloged level-one category
inline CriterionResult criterion_iso_classes(const SuiteOptions& opt) {
  (void)opt;
  CriterionResult r{8, "completion matches isomorphism classes", true, "", 0.0};
  for (const auto& e : catalog_categories(1)) {
    CompletionClasses cc = completion_classes(e.cat, cell(0, 1));
    SetPartition oracle = iso_class_partition(e.cat);
    if (cc.partition.classes != oracle.classes) {
      std::ostringstream os;
      os << e.name << ": " << cc.partition.classes.size() << " classes vs "
         << oracle.classes.size();
      r.pass = false;
      r.detail = os.str();
      return r;
    }
  }
  r.detail = std::to_string(catalog_categories(1).size()) +
             " categories partitioned identically";
  return r;
}

// 9. every completion collapses to a single class at the point
inline CriterionResult criterion_groupoid_collapse(const SuiteOptions& opt) {
  CriterionResult r{9, "completion collapse", true, "", 0.0};
  NatOptions nopt{opt.bound, 4};
  std::size_t collapsed = 0;
  for (int h = 1; h <= opt.max_height; ++h)
    for (const auto& T : enumerate_objects(h, opt.bound)) {
      CompletionClasses cc =
          completion_classes(e_nerve(T), cell(0, h), nopt);
      if (cc.partition.classes.size() != 1) {
        std::ostringstream os;
        os << obj_key(T) << " has " << cc.partition.classes.size()
           << " classes";
        r.pass = false;
        r.detail = os.str();
        return r;
      }
      ++collapsed;
    }
  std::ostringstream os;
  os << collapsed << " completions collapse to a point";
  r.detail = os.str();
  return r;
}

// the flag catalog: every maximal-subcategory ladder plus handmade flags
inline std::vector<std::pair<std::string, FlaggedSeq>> catalog_flags(
    int level) {
  std::vector<std::pair<std::string, FlaggedSeq>> out;
  for (const auto& e : catalog_categories(level))
    out.emplace_back("max_sub(" + e.name + ")", max_sub_flag(e.cat));
  if (level == 1) {
    FlaggedSeq objects;
    objects.n = 1;
    objects.cats = {discrete_cat(2, 1), from_theta(simplex(1))};
    objects.maps = {
        detail::suite_pick_fun(objects.cats[0], objects.cats[1], {0, 1})};
    out.emplace_back("two objects over the arrow", objects);
    FlaggedSeq wide;
    wide.n = 1;
    wide.cats = {discrete_cat(3, 1), from_theta(simplex(1))};
    wide.maps = {
        detail::suite_pick_fun(wide.cats[0], wide.cats[1], {0, 0, 1})};
    out.emplace_back("three objects over the arrow", wide);
  }
  return out;
}

// 10. ladder enumeration and the iterated-pullback enumeration of flagged
//     functors agree on every cataloged flag at every term in the budget
inline CriterionResult criterion_flagged_consistency(const SuiteOptions& opt) {
  CriterionResult r{10, "flagged nerve consistency", true, "", 0.0};
  std::size_t compared = 0;
  for (int h = 1; h <= opt.max_height; ++h)
    for (const auto& [name, seq] : catalog_flags(h))
      for (const auto& T : enumerate_objects(h, opt.bound)) {
        auto [ladder, pullback] = flagged_nerve_counts(seq, T);
        if (ladder != pullback) {
          std::ostringstream os;
          os << name << " at " << obj_key(T) << ": " << ladder << " vs "
             << pullback;
          r.pass = false;
          r.detail = os.str();
          return r;
        }
        ++compared;
      }
  std::ostringstream os;
  os << compared << " enumeration pairs agree";
  r.detail = os.str();
  return r;
}

// 11. randomized round trip: covers of sets and of groupoids produce Segal
//     groupoid objects whose colimit recovers the base exactly
inline CriterionResult criterion_cech_round_trip(const SuiteOptions& opt) {
  CriterionResult r{11, "cech round trip", true, "", 0.0};
  NatOptions presheaf_opt{4, 4};
  for (unsigned k = 0; k < 20; ++k) {
    std::mt19937 rng(opt.seed + k);
    int n = 1 + static_cast<int>(k % 2);
    auto fail = [&](const std::string& what) {
      std::ostringstream os;
      os << "seed " << (opt.seed + k) << ": " << what;
      r.pass = false;
      r.detail = os.str();
      return r;
    };

    SetFlag f = random_set_flag(rng, n);
    ThetaSet cover = cech_flag(f);
    if (!is_segal(cover, opt.bound).ok) return fail("set cover not Segal");
    if (!is_groupoid_object(cech_cat(f)))
      return fail("set cover category not a groupoid");
    if (!is_groupoid_object(cover, presheaf_opt).ok)
      return fail("set cover fails inversion surjectivity");
    SetPartition P = set_colimit(cover);
    if (P.classes.size() != f.levels[1].size())
      return fail("set colimit misses the target cardinality");
    std::multiset<std::size_t> fibers, sizes;
    for (const auto& name : f.levels[1]) {
      std::size_t c = 0;
      for (const auto& [src, dst] : f.maps[0])
        if (dst == name) ++c;
      fibers.insert(c);
    }
    for (const auto& cl : P.classes) sizes.insert(cl.size());
    if (fibers != sizes) return fail("set colimit fiber sizes differ");

    NCatPtr G = random_groupoid(rng);
    auto fm = random_essentially_surjective(rng, G);
    ThetaSet gcover = cech_groupoid(fm, G);
    if (!is_segal(gcover, opt.bound).ok)
      return fail("groupoid cover not Segal");
    if (!is_groupoid_object(cech_groupoid_cat(fm, G)))
      return fail("groupoid cover category not a groupoid");
    if (!is_groupoid_object(gcover, presheaf_opt).ok)
      return fail("groupoid cover fails inversion surjectivity");
    if (set_colimit(gcover).classes.size() !=
        iso_class_partition(G).classes.size())
      return fail("groupoid colimit misses the class count");
  }
  r.detail = "20 seeds recovered their targets";
  return r;
}

// 12. the maximal-subcategory ladder of every cataloged category is flagged
//     and its flagged nerve reproduces the plain nerve
inline CriterionResult criterion_max_sub_flag(const SuiteOptions& opt) {
  CriterionResult r{12, "maximal subcategory flag", true, "", 0.0};
  std::size_t agreed = 0;
  for (int h = 1; h <= opt.max_height; ++h)
    for (const auto& e : catalog_categories(h)) {
      FlaggedSeq seq = max_sub_flag(e.cat);
      FlagReport fr = is_flagged(seq);
      if (!fr.ok) {
        r.pass = false;
        r.detail = "max_sub(" + e.name + ") rejected: " + fr.what;
        return r;
      }
      ThetaSet F = flagged_nerve(seq);
      ThetaSet N = nerve(e.cat, e.name);
      for (const auto& T : enumerate_objects(h, opt.bound)) {
        if (F.card(T) != N.card(T)) {
          std::ostringstream os;
          os << "max_sub(" << e.name << ") at " << obj_key(T) << ": "
             << F.card(T) << " vs " << N.card(T);
          r.pass = false;
          r.detail = os.str();
          return r;
        }
        ++agreed;
      }
    }
  std::ostringstream os;
  os << agreed << " cardinalities agree";
  r.detail = os.str();
  return r;
}

inline CriterionResult run_criterion(int number, const SuiteOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  switch (number) {
    case 1: r = criterion_category_laws(opt); break;
    case 2: r = criterion_factorization(opt); break;
    case 3: r = criterion_hom_counts(opt); break;
    case 4: r = criterion_completion_formula(opt); break;
    case 5: r = criterion_completion_universal(opt); break;
    case 6: r = criterion_segal(opt); break;
    case 7: r = criterion_contraction(opt); break;
    case 8: r = criterion_iso_classes(opt); break;
    case 9: r = criterion_groupoid_collapse(opt); break;
    case 10: r = criterion_flagged_consistency(opt); break;
    case 11: r = criterion_cech_round_trip(opt); break;
    case 12: r = criterion_max_sub_flag(opt); break;
    default: throw std::invalid_argument("suite: no such criterion");
  }
  auto t1 = std::chrono::steady_clock::now();
  r.seconds = std::chrono::duration<double>(t1 - t0).count();
  return r;
}

inline const std::vector<int>& suite_group(const std::string& name) {
  static const std::map<std::string, std::vector<int>> groups = {
      {"core", {1, 2, 3}},
      {"segal", {6}},
      {"completion", {4, 5, 7, 8, 9}},
      {"flags", {10, 11, 12}},
      {"all", {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}}};
  auto it = groups.find(name);
  if (it == groups.end())
    throw std::invalid_argument("suite: unknown suite '" + name + "'");
  return it->second;
}

inline std::vector<CriterionResult> run_suite(const std::string& name,
                                              const SuiteOptions& opt) {
  std::vector<CriterionResult> out;
  for (int k : suite_group(name)) out.push_back(run_criterion(k, opt));
  return out;
}

}  // namespace thetacat
