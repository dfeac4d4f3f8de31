#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "thetacat/theta_set.hpp"

using namespace thetacat;

namespace {

// The walking composable pair: two edges glued at a shared endpoint.
CellComplex spine_complex() {
  ThetaObj c0 = cell(0, 1), c1 = cell(1, 1);
  CellComplex K;
  K.vertices = {c1, c0, c1};
  K.edges.push_back({1, 0, ThetaMor{c0, c1, {1}, {}}});
  K.edges.push_back({1, 2, ThetaMor{c0, c1, {0}, {}}});
  return K;
}

// Counts distinct values reachable at c_0; an independent connectivity oracle
// for set_colimit on nerves: classes = object classes under arrow spans.
std::size_t nerve_component_count(const NCatPtr& C) {
  std::vector<std::size_t> parent(C->size);
  for (std::size_t i = 0; i < C->size; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find =
      [&](std::size_t i) -> std::size_t {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (std::size_t a = 0; a < C->size; ++a)
    for (std::size_t b = 0; b < C->size; ++b)
      if (C->level == 0 || C->hom(a, b)->size > 0) {
        std::size_t ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < C->size; ++i) roots.insert(find(i));
  return roots.size();
}

}  // namespace

TEST_CASE("tameness classifies interval spans") {
  ThetaObj c1 = cell(1), s3 = simplex(3);
  CHECK(is_tame(identity(s3)));
  CHECK(is_tame(ThetaMor{c1, s3, {0, 2}, {}}));
  CHECK(is_tame(ThetaMor{c1, s3, {1, 3}, {}}));
  CHECK_FALSE(is_tame(ThetaMor{c1, s3, {0, 3}, {}}));
  for (const auto& m : closed_morphisms_into(cell(2))) CHECK(is_tame(m));
  for (const auto& m : enumerate_morphisms(simplex(2), simplex(2)))
    CHECK(is_tame(m));  // spans into a 2-wide target never exceed 2
}

TEST_CASE("representable presheaves") {
  ThetaSet F = representable(simplex(2));
  CHECK(F.card(cell(1)) == 6);
  CHECK(F.card(simplex(2)) == 10);
  CHECK(F.card(cell(0, 1)) == 3);
  CHECK(F.label(cell(0, 1), 0).size() > 0);
  CHECK(check_presheaf_laws(F, 4).ok);

  ThetaSet G = representable(cell(2));
  CHECK(G.card(cell(2)) == 5);
  CHECK(check_presheaf_laws(G, 4).ok);
}

TEST_CASE("nerves of strict categories") {
  ThetaSet F = nerve(from_theta(simplex(2)));
  CHECK(F.card(cell(1)) == 6);
  CHECK(F.card(cell(0, 1)) == 3);
  // nerve of a term category agrees with the representable at every probe
  ThetaSet Y = representable(simplex(2));
  for (const auto& T : enumerate_objects(1, 5))
    CHECK(F.card(T) == Y.card(T));

  ThetaSet W = nerve(walking_iso(), "iso");
  CHECK(W.card(cell(1)) == 4);
  CHECK(W.card(cell(0, 1)) == 2);
  CHECK(check_presheaf_laws(W, 4).ok);

  ThetaSet R = nerve(walking_retraction(), "retr");
  CHECK(check_presheaf_laws(R, 4).ok);

  ThetaSet T1 = nerve(terminal_cat(1));
  for (const auto& T : enumerate_objects(1, 4)) CHECK(T1.card(T) == 1);

  ThetaSet C2 = nerve(from_theta(cell(2)));
  CHECK(C2.card(cell(2)) == 5);
  CHECK(check_presheaf_laws(C2, 4).ok);
}

TEST_CASE("pointwise products") {
  NCatPtr I = from_theta(simplex(1));
  ThetaSet A = nerve(I, "I");
  ThetaSet P = theta_set_product(A, A);
  CHECK(P.card(cell(1)) == 9);
  CHECK(P.card(cell(0, 1)) == 4);
  CHECK(check_presheaf_laws(P, 4).ok);

  // agrees with the nerve of the product category at every probe
  ThetaSet NP = nerve(product_cat({I, I}, 1), "IxI");
  for (const auto& T : enumerate_objects(1, 5))
    CHECK(P.card(T) == NP.card(T));

  ThetaSet One = nerve(terminal_cat(1));
  ThetaSet Q = theta_set_product(A, One);
  for (const auto& T : enumerate_objects(1, 4))
    CHECK(Q.card(T) == A.card(T));
}

TEST_CASE("memoization caches evaluations") {
  auto counter = std::make_shared<std::size_t>(0);
  ThetaSet F;
  F.height = 1;
  F.name = "probe";
  F.card = [counter](const ThetaObj&) {
    ++*counter;
    return std::size_t{1};
  };
  F.act = [](const ThetaMor&, std::size_t) { return std::size_t{0}; };
  F.label = [](const ThetaObj&, std::size_t) { return std::string("*"); };
  ThetaSet M = memoized(F);
  CHECK(M.card(cell(1)) == 1);
  CHECK(M.card(cell(1)) == 1);
  CHECK(*counter == 1);
}

TEST_CASE("complex evaluation counts compatible families") {
  CellComplex K = spine_complex();
  REQUIRE(well_formed(K));

  ThetaSet N2 = nerve(from_theta(simplex(2)));
  CHECK(eval_complex(N2, K) == 10);  // composable pairs in the 2-simplex

  ThetaSet W = nerve(walking_iso(), "iso");
  CHECK(eval_complex(W, K) == 8);  // 2 objects, all 4 arrows composable

  // single vertex, no edges: families = values
  CellComplex single;
  single.vertices = {cell(1)};
  CHECK(eval_complex(N2, single) == N2.card(cell(1)));

  // two disjoint points: product of values
  CellComplex two;
  two.vertices = {cell(0, 1), cell(0, 1)};
  CHECK(eval_complex(N2, two) == 9);

  // empty complex: exactly one empty family
  CellComplex empty;
  CHECK(eval_complex(N2, empty) == 1);
}

TEST_CASE("colimit presheaf of a complex") {
  CellComplex K = spine_complex();
  ThetaSet X = complex_colimit(K, 1);
  CHECK(X.card(cell(0, 1)) == 3);
  CHECK(X.card(cell(1)) == 5);
  CHECK(X.card(simplex(2)) == 7);
  CHECK(check_presheaf_laws(X, 4).ok);

  // the value at [2] sits strictly below the compatible-family count of 8:
  // the formal gluing carries no composite of the two generating edges

  // single representable vertex: colimit is the representable itself
  CellComplex single;
  single.vertices = {cell(1)};
  ThetaSet Y1 = complex_colimit(single, 1);
  ThetaSet Y = representable(cell(1));
  for (const auto& T : enumerate_objects(1, 4)) {
    CHECK(Y1.card(T) == Y.card(T));
  }
}

TEST_CASE("set colimits at the point") {
  CHECK(set_colimit(nerve(from_theta(simplex(1)))).classes.size() == 1);
  CHECK(set_colimit(nerve(from_theta(simplex(3)))).classes.size() == 1);
  CHECK(set_colimit(nerve(discrete_cat(3, 1))).classes.size() == 3);
  CHECK(set_colimit(nerve(walking_iso())).classes.size() == 1);
  CHECK(set_colimit(representable(simplex(2))).classes.size() == 1);

  // height 2: the gluing relation runs along the top cell
  CHECK(set_colimit(nerve(from_theta(cell(2)))).classes.size() == 1);
  CHECK(set_colimit(nerve(pad_cat(discrete_cat(2, 1), 2))).classes.size() ==
        2);
  CHECK(set_colimit(nerve(pad_cat(walking_iso(), 2))).classes.size() == 1);

  // colimit class count equals the component count of the source category
  for (const NCatPtr& C :
       {from_theta(simplex(2)), discrete_cat(4, 1), walking_retraction(),
        product_cat({discrete_cat(2, 1), from_theta(simplex(1))}, 1)}) {
    CHECK(set_colimit(nerve(C)).classes.size() == nerve_component_count(C));
  }

  SetPartition P = set_colimit(nerve(discrete_cat(2, 1)));
  CHECK(P.total == 2);
  CHECK(P.class_of[0] == 0);
  CHECK(P.class_of[1] == 1);
  CHECK(P.classes[0] == std::vector<std::size_t>{0});
}

TEST_CASE("law audit rejects a broken action") {
  ThetaSet F;
  F.height = 1;
  F.name = "broken";
  F.card = [](const ThetaObj&) { return std::size_t{2}; };
  F.act = [](const ThetaMor&, std::size_t) { return std::size_t{0}; };
  F.label = [](const ThetaObj&, std::size_t k) { return std::to_string(k); };
  LawReport R = check_presheaf_laws(F, 2);
  CHECK_FALSE(R.ok);
  CHECK(R.detail.find("identity") != std::string::npos);
}
