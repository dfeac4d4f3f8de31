#include <algorithm>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "thetacat/completion.hpp"
#include "thetacat/flags.hpp"
#include "thetacat/segal.hpp"

using namespace thetacat;

namespace {

NFunPtr pick_by_omap(const NCatPtr& A, const NCatPtr& B,
                     const std::vector<std::size_t>& omap) {
  for (const auto& F : enumerate_functors(A, B))
    if (F->omap == omap) return F;
  throw std::logic_error("pick_by_omap: no such functor");
}

NCatPtr z2_groupoid() {
  NCatPtr h = set_cat(2);
  NCat g;
  g.level = 1;
  g.size = 1;
  g.names = {"*"};
  g.homs = {h};
  g.ids = {0};
  NFun t;
  t.src = product_cat({h, h}, 0);
  t.dst = h;
  t.omap = {0, 1, 1, 0};
  g.comps = {detail::make_fun(std::move(t))};
  return detail::make_cat(std::move(g));
}

SetFlag two_fiber_flag() {
  SetFlag f;
  f.levels = {{"a", "b", "c"}, {"x", "y"}};
  f.maps = {{{"a", "x"}, {"b", "x"}, {"c", "y"}}};
  return f;
}

}  // namespace

TEST_CASE("cell surjectivity of functors") {
  NCatPtr arrow = from_theta(simplex(1));
  NCatPtr disc2 = discrete_cat(2, 1);

  NFunPtr idf = identity_fun(from_theta(simplex(2)));
  CHECK(k_surjective(idf, 0));
  CHECK(k_surjective(idf, 1));
  CHECK(i_connective(idf, 1));

  NFunPtr incl01 = pick_by_omap(disc2, arrow, {0, 1});
  CHECK(k_surjective(incl01, 0));
  CHECK_FALSE(k_surjective(incl01, 1));

  CHECK_FALSE(k_surjective(constant_fun(terminal_cat(1), disc2, 0), 0));
  CHECK_FALSE(i_connective(object_functor(walking_iso(), 0), 0));

  // fillers are strict: the missing arrow 0 -> 1 fails the lifting test even
  // though the target is equivalent to a point
  NFunPtr into_iso = pick_by_omap(disc2, walking_iso(), {0, 1});
  CHECK(k_surjective(into_iso, 0));
  CHECK_FALSE(k_surjective(into_iso, 1));

  CHECK_THROWS_AS(k_surjective(idf, 2), arity_error);
}

TEST_CASE("flag validation") {
  for (const NCatPtr& C :
       {walking_iso(), from_theta(simplex(2)), walking_retraction(),
        walking_idempotent(), discrete_cat(3, 1), pad_cat(walking_iso(), 2),
        from_theta(cell(2)), suspend(walking_iso())}) {
    FlagReport r = is_flagged(max_sub_flag(C));
    CHECK(r.ok);
  }

  FlaggedSeq empty_first;
  empty_first.n = 1;
  empty_first.cats = {empty_cat(1), walking_iso()};
  empty_first.maps = {empty_source_fun(empty_cat(1), walking_iso())};
  FlagReport r = is_flagged(empty_first);
  CHECK_FALSE(r.ok);
  CHECK(r.i == 0);
  CHECK(r.j == 1);
  CHECK(r.k == 0);

  FlaggedSeq objects_flag;
  objects_flag.n = 1;
  objects_flag.cats = {discrete_cat(2, 1), from_theta(simplex(1))};
  objects_flag.maps = {
      pick_by_omap(objects_flag.cats[0], objects_flag.cats[1], {0, 1})};
  CHECK(is_flagged(objects_flag).ok);

  FlaggedSeq not_truncated;
  not_truncated.n = 1;
  not_truncated.cats = {walking_iso(), walking_iso()};
  not_truncated.maps = {identity_fun(walking_iso())};
  FlagReport r2 = is_flagged(not_truncated);
  CHECK_FALSE(r2.ok);
  CHECK(r2.i == 0);
  CHECK(r2.what == "entry is not an i-category");
}

TEST_CASE("flagged nerve values") {
  FlaggedSeq seq;
  seq.n = 1;
  seq.cats = {discrete_cat(2, 1), from_theta(simplex(1))};
  seq.maps = {pick_by_omap(seq.cats[0], seq.cats[1], {0, 1})};
  ThetaSet F = flagged_nerve(seq);
  CHECK(F.card(cell(0, 1)) == 2);
  CHECK(F.card(cell(1)) == 3);
  CHECK(F.card(simplex(2)) == 4);
  CHECK(set_colimit(F).classes.size() == 1);
  CHECK(is_segal(F, 4).ok);
  CHECK_THROWS_AS(F.card(point()), arity_error);

  // two objects over one endpoint: values leave the plain nerve behind
  FlaggedSeq wide;
  wide.n = 1;
  wide.cats = {discrete_cat(3, 1), from_theta(simplex(1))};
  wide.maps = {pick_by_omap(wide.cats[0], wide.cats[1], {0, 0, 1})};
  CHECK(is_flagged(wide).ok);
  ThetaSet W = flagged_nerve(wide);
  CHECK(W.card(cell(0, 1)) == 3);
  CHECK(W.card(cell(1)) == 7);
  CHECK(W.card(simplex(2)) == 15);
  CHECK(nerve(wide.cats[1]).card(cell(1)) == 3);
  CHECK(is_segal(W, 4).ok);
  CHECK(set_colimit(W).classes.size() == 1);

  auto counts = flagged_nerve_counts(wide, simplex(3));
  CHECK(counts.first == counts.second);
}

TEST_CASE("maximal subcategory flag reproduces the nerve") {
  for (const NCatPtr& C : {walking_iso(), walking_retraction(),
                           from_theta(simplex(2)), discrete_cat(3, 1)}) {
    FlaggedSeq seq = max_sub_flag(C);
    ThetaSet F = flagged_nerve(seq);
    ThetaSet N = nerve(C);
    for (const ThetaObj& T : {cell(0, 1), cell(1), simplex(2)})
      CHECK(F.card(T) == N.card(T));
  }
  for (const NCatPtr& C : {pad_cat(walking_iso(), 2), from_theta(cell(2)),
                           suspend(walking_iso())}) {
    FlaggedSeq seq = max_sub_flag(C);
    ThetaSet F = flagged_nerve(seq);
    ThetaSet N = nerve(C);
    for (const ThetaObj& T :
         {cell(0, 2), cell(1, 2), cell(2), pad(simplex(2), 2)})
      CHECK(F.card(T) == N.card(T));
  }
}

TEST_CASE("set flag validation") {
  std::string why;
  CHECK(set_flag_ok(two_fiber_flag(), &why));

  SetFlag not_surj;
  not_surj.levels = {{"a"}, {"x", "y"}};
  not_surj.maps = {{{"a", "x"}}};
  CHECK_FALSE(set_flag_ok(not_surj, &why));
  CHECK(why == "first map is not surjective");
  CHECK_THROWS_AS(cech_cat(not_surj), std::invalid_argument);

  SetFlag not_bij;
  not_bij.levels = {{"a", "b"}, {"x", "y"}, {"z"}};
  not_bij.maps = {{{"a", "x"}, {"b", "y"}}, {{"x", "z"}, {"y", "z"}}};
  CHECK_FALSE(set_flag_ok(not_bij, &why));

  SetFlag partial;
  partial.levels = {{"a", "b"}, {"x"}};
  partial.maps = {{{"a", "x"}}};
  CHECK_FALSE(set_flag_ok(partial, &why));
}

TEST_CASE("cech nerve of a set flag") {
  SetFlag f = two_fiber_flag();
  NCatPtr C = cech_cat(f);
  CHECK(validate_ncat(C));
  CHECK(is_strict_groupoid(C));
  ThetaSet F = cech_flag(f);
  CHECK(F.card(cell(0, 1)) == 3);
  CHECK(F.card(cell(1)) == 5);
  CHECK(F.card(simplex(2)) == 9);
  CHECK(is_segal(F, 4).ok);
  CHECK(is_groupoid_object(cech_flag(f), NatOptions{4, 4}).ok);

  // round trip: the colimit recovers the base and classes match the fibers
  SetPartition P = set_colimit(F);
  CHECK(P.classes.size() == 2);
  std::vector<std::size_t> sizes;
  for (const auto& cl : P.classes) sizes.push_back(cl.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::size_t>{1, 2});

  SetFlag idf;
  idf.levels = {{"a", "b"}, {"p", "q"}};
  idf.maps = {{{"a", "p"}, {"b", "q"}}};
  ThetaSet D = cech_flag(idf);
  CHECK(D.card(cell(1)) == 2);
  CHECK(D.card(simplex(2)) == 2);
  CHECK(set_colimit(D).classes.size() == 2);

  SetFlag f2;
  f2.levels = {{"a", "b", "c"}, {"x", "y"}, {"u", "v"}};
  f2.maps = {{{"a", "x"}, {"b", "x"}, {"c", "y"}}, {{"x", "u"}, {"y", "v"}}};
  NCatPtr C2 = cech_cat(f2);
  CHECK(C2->level == 2);
  CHECK(validate_ncat(C2));
  ThetaSet F2 = cech_flag(f2);
  CHECK(F2.card(cell(0, 2)) == 3);
  CHECK(F2.card(cell(1, 2)) == 5);
  CHECK(F2.card(cell(2)) == 5);
  CHECK(is_segal(F2, 4).ok);
  CHECK(set_colimit(F2).classes.size() == 2);
}

TEST_CASE("cech nerve of a map into a groupoid") {
  NCatPtr Z2 = z2_groupoid();
  CHECK(validate_ncat(Z2));
  CHECK(is_strict_groupoid(Z2));

  ThetaSet F = cech_groupoid({0}, Z2);
  CHECK(F.card(cell(0, 1)) == 1);
  CHECK(F.card(cell(1)) == 2);
  CHECK(F.card(simplex(2)) == 4);
  CHECK(is_segal(F, 4).ok);
  CHECK(set_colimit(F).classes.size() == 1);

  NCatPtr G = cech_groupoid_cat({0, 0, 1}, walking_iso());
  CHECK(validate_ncat(G));
  CHECK(is_strict_groupoid(G));
  ThetaSet H = cech_groupoid({0, 0, 1}, walking_iso());
  CHECK(H.card(cell(1)) == 9);
  CHECK(set_colimit(H).classes.size() == 1);
  CHECK(is_groupoid_object(H, NatOptions{4, 4}).ok);

  // over a discrete target the construction degenerates to the set case
  ThetaSet D = cech_groupoid({0, 0, 1}, discrete_cat(2, 1));
  ThetaSet E = cech_flag(two_fiber_flag());
  for (const ThetaObj& T : {cell(0, 1), cell(1), simplex(2), simplex(3)})
    CHECK(D.card(T) == E.card(T));

  CHECK_THROWS_AS(cech_groupoid({0}, from_theta(simplex(1))),
                  std::invalid_argument);
  CHECK_THROWS_AS(cech_groupoid({5}, Z2), std::invalid_argument);
}
