#include <string>
#include <vector>

#include "doctest.h"
#include "thetacat/e_nerve.hpp"
#include "thetacat/segal.hpp"

using namespace thetacat;

namespace {

CellComplex spine_complex() {
  ThetaObj c0 = cell(0, 1), c1 = cell(1, 1);
  CellComplex K;
  K.vertices = {c1, c0, c1};
  K.edges.push_back({1, 0, ThetaMor{c0, c1, {1}, {}}});
  K.edges.push_back({1, 2, ThetaMor{c0, c1, {0}, {}}});
  return K;
}

// Drop one vertex from a cover diagram, reindexing the surviving edges.
SegalCover drop_vertex(const SegalCover& C, std::size_t v) {
  SegalCover D;
  D.target = C.target;
  std::vector<std::size_t> remap(C.diagram.vertices.size());
  for (std::size_t k = 0, w = 0; k < C.diagram.vertices.size(); ++k) {
    remap[k] = w;
    if (k == v) continue;
    D.diagram.vertices.push_back(C.diagram.vertices[k]);
    D.cocone.push_back(C.cocone[k]);
    ++w;
  }
  for (const auto& e : C.diagram.edges) {
    if (e.from == v || e.to == v) continue;
    D.diagram.edges.push_back({remap[e.from], remap[e.to], e.mor});
  }
  return D;
}

}  // namespace

TEST_CASE("maximal covers enumerate cells and connectings") {
  SegalCover C = maximal_segal_cover(simplex(2));
  CHECK(C.diagram.vertices.size() == 5);  // three points, two edges
  CHECK(C.diagram.edges.size() == 4);     // each edge has two endpoints
  CHECK(well_formed(C.diagram));
  for (std::size_t v = 0; v < C.cocone.size(); ++v) {
    CHECK(is_closed(C.cocone[v]));
    CHECK(C.cocone[v].source == C.diagram.vertices[v]);
    CHECK(C.cocone[v].target == C.target);
  }
  // cocone commutes over every diagram edge
  for (const auto& e : C.diagram.edges)
    CHECK(compose(C.cocone[e.to], e.mor) == C.cocone[e.from]);

  SegalCover C2 = maximal_segal_cover(cell(2));
  CHECK(C2.diagram.vertices.size() == 5);  // 2 points, 2 edges, 1 two-cell
  CHECK(well_formed(C2.diagram));

  SegalCover Cpt = maximal_segal_cover(point());
  CHECK(Cpt.diagram.vertices.size() == 1);
  CHECK(Cpt.diagram.edges.empty());
}

TEST_CASE("nerves satisfy the Segal condition") {
  CHECK(is_segal(nerve(from_theta(simplex(2))), 5).ok);
  CHECK(is_segal(nerve(walking_retraction(), "retr"), 5).ok);
  CHECK(is_segal(nerve(walking_iso(), "iso"), 5).ok);
  CHECK(is_segal(representable(simplex(2)), 5).ok);
  CHECK(is_segal(nerve(from_theta(cell(2))), 4).ok);
  CHECK(is_segal(representable(cell(2)), 4).ok);
}

TEST_CASE("completions satisfy the Segal condition") {
  CHECK(is_segal(e_nerve(simplex(2)), 5).ok);
  CHECK(is_segal(e_nerve(cell(2)), 4).ok);
  CHECK(is_segal(e_nerve(cell(3)), 4).ok);
}

TEST_CASE("the glued spine fails the Segal condition at the 2-simplex") {
  ThetaSet X = complex_colimit(spine_complex(), 1);
  SegalReport R = is_segal(X, std::vector<ThetaObj>{simplex(2)});
  CHECK_FALSE(R.ok);
  REQUIRE(R.rows.size() == 1);
  CHECK(R.rows[0].lhs == 7);
  CHECK(R.rows[0].rhs == 8);
  CHECK(R.rows[0].status == "missing family");

  // smaller probes are fine: the defect is exactly the absent composite
  CHECK(is_segal(X, std::vector<ThetaObj>{cell(0, 1), cell(1)}).ok);
}

TEST_CASE("covers are colimits among closed maps") {
  std::string why;
  for (const ThetaObj& T :
       {simplex(2), simplex(3), cell(1), ThetaObj{1, {}}}) {
    SegalCover C = maximal_segal_cover(T);
    CHECK_MESSAGE(verify_cover_in_closed(C, 5, &why), why);
  }
  SegalCover C2 = maximal_segal_cover(cell(2));
  CHECK_MESSAGE(verify_cover_in_closed(C2, 4, &why), why);

  // removing the shared endpoint of the two edges breaks the gluing
  SegalCover C = maximal_segal_cover(simplex(2));
  for (std::size_t v = 0; v < C.diagram.vertices.size(); ++v) {
    if (C.diagram.vertices[v].width() != 0) continue;
    if (C.cocone[v].sigma[0] != 1) continue;  // the middle point
    CHECK_FALSE(verify_cover_in_closed(drop_vertex(C, v), 3));
  }

  // dropping a connecting edge overcounts families
  SegalCover D = maximal_segal_cover(simplex(2));
  REQUIRE(!D.diagram.edges.empty());
  D.diagram.edges.pop_back();
  CHECK_FALSE(verify_cover_in_closed(D, 3));
}
