#include <algorithm>
#include <cstddef>
#include <vector>

#include "doctest.h"
#include "thetacat/e_nerve.hpp"

using namespace thetacat;

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("completion of simplices is codiscrete") {
  // |E([p])([q])| = (p+1)^(q+1): an element is a bare vertex map
  for (std::size_t p = 0; p <= 4; ++p)
    for (std::size_t q = 0; q <= 4; ++q)
      CHECK(e_card(simplex(p), simplex(q)) == ipow(p + 1, q + 1));

  // and the whole presheaf matches the nerve of the codiscrete category
  for (std::size_t p = 1; p <= 2; ++p) {
    ThetaSet E = e_nerve(simplex(p));
    ThetaSet N = nerve(codiscrete_cat(p + 1), "codisc");
    for (const auto& S : enumerate_objects(1, 5)) CHECK(E.card(S) == N.card(S));
  }
}

TEST_CASE("completion cardinalities at height two and three") {
  ThetaObj c2 = cell(2);
  CHECK(e_card(c2, cell(0, 2)) == 2);
  CHECK(e_card(c2, cell(1, 2)) == 6);
  CHECK(e_card(c2, c2) == 10);
  CHECK(e_card(c2, pad(simplex(2), 2)) == 18);
  CHECK(e_card(c2, pad(simplex(3), 2)) == 54);

  ThetaObj c3 = cell(3);
  CHECK(e_card(c3, cell(0, 3)) == 2);
  CHECK(e_card(c3, cell(1, 3)) == 6);
  CHECK(e_card(c3, cell(2, 3)) == 14);
  CHECK(e_card(c3, c3) == 22);

  // mixed probe: crossing data multiplies over the probe edges, one factor
  // of |E(c_1)(c_1)| = 4 per change of the vertex map
  CHECK(e_card(c2, ThetaObj{2, {cell(1), cell(1)}}) == 2 + 4 * 4 + 2 * 16);
}

TEST_CASE("constant elements are fixed by every action") {
  for (const ThetaObj& T :
       {simplex(2), cell(2), ThetaObj{2, {cell(1), ThetaObj{1, {}}}}}) {
    for (const auto& S : enumerate_objects(T.height, 4))
      for (const auto& Sp : enumerate_objects(T.height, 4))
        for (const auto& m : enumerate_morphisms(Sp, S))
          for (int o = 0; o <= static_cast<int>(T.width()); ++o)
            CHECK(e_act(T, m, e_const_element(T, S, o)) ==
                  e_const_element(T, Sp, o));
  }
}

TEST_CASE("unit elements are natural in the probe") {
  // the action along any morphism carries the unit of the identity to the
  // unit of that morphism; this exercises the action on every class
  for (const ThetaObj& T : {simplex(1), simplex(3), cell(2), cell(3),
                            ThetaObj{2, {cell(1), ThetaObj{1, {}}}}}) {
    std::size_t u = e_unit_element(T, identity(T));
    for (const auto& S : enumerate_objects(T.height, 4))
      for (const auto& m : enumerate_morphisms(S, T))
        CHECK(e_unit_element(T, m) == e_act(T, m, u));
  }
  // units over distinct morphisms stay distinct: the inclusion is levelwise
  // injective
  ThetaObj c2 = cell(2);
  std::vector<std::size_t> seen;
  for (const auto& m : enumerate_morphisms(c2, c2))
    seen.push_back(e_unit_element(c2, m));
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
  CHECK(seen.size() == 5);
}

TEST_CASE("completion presheaf laws") {
  // height 1: no crossing data, the action is exact on every morphism
  CHECK(check_presheaf_laws(e_nerve(simplex(1)), 5).ok);
  CHECK(check_presheaf_laws(e_nerve(simplex(2)), 4).ok);

  // height 2 and 3: exact on the tame class
  CHECK(check_presheaf_laws(e_nerve(cell(2)), 4, true).ok);
  CHECK(check_presheaf_laws(e_nerve(ThetaObj{2, {cell(1), cell(1)}}), 4, true)
            .ok);
  CHECK(check_presheaf_laws(e_nerve(cell(3)), 4, true).ok);
}

TEST_CASE("completion satisfies the gluing count on the spine") {
  ThetaObj c0 = cell(0, 2), c1 = cell(1, 2);
  CellComplex K;
  K.vertices = {c1, c0, c1};
  K.edges.push_back({1, 0, ThetaMor{c0, c1, {1}, {}}});
  K.edges.push_back({1, 2, ThetaMor{c0, c1, {0}, {}}});
  ThetaSet E = e_nerve(cell(2));
  CHECK(eval_complex(E, K) == E.card(pad(simplex(2), 2)));
}

TEST_CASE("completions are connected when the term is") {
  CHECK(set_colimit(e_nerve(simplex(1))).classes.size() == 1);
  CHECK(set_colimit(e_nerve(simplex(3))).classes.size() == 1);
  CHECK(set_colimit(e_nerve(cell(2))).classes.size() == 1);
  CHECK(set_colimit(e_nerve(cell(3))).classes.size() == 1);
}
