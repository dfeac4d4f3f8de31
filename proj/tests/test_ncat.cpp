#include <doctest.h>

#include <map>
#include <set>
#include <vector>

#include "thetacat/ncat.hpp"

using namespace thetacat;

namespace {

// Independent level-1 functor count: raw tables checked directly against the
// composition tables, no shared machinery with enumerate_functors.
std::size_t count_functors_level1(const NCatPtr& A, const NCatPtr& B) {
  REQUIRE(A->level == 1);
  REQUIRE(B->level == 1);
  const std::size_t n = A->size;
  std::size_t total = 0;

  std::vector<std::size_t> omap(n, 0);
  bool done = (B->size == 0 && n > 0);
  while (!done) {
    // hom tables, one per ordered pair, odometer over all raw maps
    std::vector<std::vector<std::size_t>> tab(n * n);
    bool dead = false;
    for (std::size_t a = 0; a < n && !dead; ++a)
      for (std::size_t b = 0; b < n && !dead; ++b) {
        if (A->hom(a, b)->size > 0 && B->hom(omap[a], omap[b])->size == 0)
          dead = true;
        tab[a * n + b].assign(A->hom(a, b)->size, 0);
      }
    if (!dead) {
      std::vector<std::size_t> flat;  // (pair, elt) slots in order
      std::vector<std::size_t> radix;
      for (std::size_t p = 0; p < n * n; ++p)
        for (std::size_t e = 0; e < tab[p].size(); ++e) {
          flat.push_back(p);
          radix.push_back(B->hom(omap[p / n], omap[p % n])->size);
        }
      std::vector<std::size_t> pick(flat.size(), 0);
      for (;;) {
        {
          std::size_t s = 0;
          for (std::size_t p = 0; p < n * n; ++p)
            for (std::size_t e = 0; e < tab[p].size(); ++e) tab[p][e] = pick[s++];
        }
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a)
          if (tab[a * n + a][A->ids[a]] != B->ids[omap[a]]) ok = false;
        for (std::size_t a = 0; a < n && ok; ++a)
          for (std::size_t b = 0; b < n && ok; ++b)
            for (std::size_t c = 0; c < n && ok; ++c) {
              const auto& gset = A->hom(b, c);
              const auto& fset = A->hom(a, b);
              for (std::size_t g = 0; g < gset->size && ok; ++g)
                for (std::size_t f = 0; f < fset->size && ok; ++f) {
                  std::size_t gf =
                      A->comp(a, b, c)->omap[g * fset->size + f];
                  std::size_t im = B->comp(omap[a], omap[b], omap[c])->omap
                      [tab[b * n + c][g] *
                           B->hom(omap[a], omap[b])->size +
                       tab[a * n + b][f]];
                  if (tab[a * n + c][gf] != im) ok = false;
                }
            }
        if (ok) ++total;
        std::size_t k = pick.size();
        while (k > 0 && ++pick[k - 1] == radix[k - 1]) {
          pick[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
    std::size_t k = n;
    while (k > 0 && ++omap[k - 1] == B->size) {
      omap[k - 1] = 0;
      --k;
    }
    if (k == 0 || n == 0) done = true;
  }
  return total;
}

}  // namespace

TEST_CASE("basic builders validate") {
  for (int lv = 0; lv <= 3; ++lv) {
    CHECK(validate_ncat(terminal_cat(lv)));
    CHECK(validate_ncat(empty_cat(lv)));
    CHECK(terminal_cat(lv)->size == 1);
    CHECK(empty_cat(lv)->size == 0);
    CHECK(terminal_cat(lv).get() == terminal_cat(lv).get());
  }
  CHECK(validate_ncat(set_cat(3)));
  CHECK(validate_ncat(walking_iso()));
  CHECK(validate_ncat(walking_idempotent()));
  CHECK(validate_ncat(walking_retraction()));
  CHECK(validate_ncat(codiscrete_cat(3)));
  CHECK(validate_ncat(discrete_cat(3, 2)));
  for (int k = 0; k <= 3; ++k) {
    CHECK(validate_ncat(boundary_cell(k)));
    CHECK(validate_ncat(cell_cat(k)));
    CHECK(validate_nfun(cell_incl(k)));
  }
  CHECK(validate_nfun(cell_incl(2, 3)));
}

TEST_CASE("term categories realize terms") {
  for (std::size_t p = 0; p <= 3; ++p) {
    NCatPtr C = from_theta(simplex(p));
    CHECK(C->size == p + 1);
    CHECK(validate_ncat(C));
  }
  // all height-2 terms on few nodes validate
  for (const auto& T : enumerate_objects(2, 4)) {
    NCatPtr C = from_theta(T);
    CHECK(validate_ncat(C));
    CHECK(is_gaunt(C));
  }
  // mixed-height term: one composite pair of 1-cells carries a 2-cell
  ThetaObj mixed = parse_obj("[2]([1]([0]),[0])");
  NCatPtr M = from_theta(mixed);
  CHECK(M->size == 3);
  NCatPtr h02 = M->hom(0, 2);
  CHECK(h02->size == 2);
  CHECK(h02->hom(0, 1)->size == 1);
  CHECK(h02->hom(1, 0)->size == 0);
  // padding normalizes: the padded term-category is the padded category
  CHECK(from_theta(cell(1, 3))->uid == pad_cat(from_theta(cell(1)), 3)->uid);
  CHECK(from_theta(pad(simplex(2), 2))->uid ==
        pad_cat(from_theta(simplex(2)), 2)->uid);
  CHECK(from_theta(cell(0, 2))->uid == terminal_cat(2)->uid);
  // suspension gives cells
  CHECK(cat_equal(suspend(terminal_cat(0)), from_theta(cell(1))));
  CHECK(cat_equal(suspend(from_theta(cell(1))), from_theta(cell(2))));
  CHECK(cat_equal(suspend(discrete_cat(2, 1)), boundary_cell(2)));
}

TEST_CASE("term morphisms are functors and compose") {
  auto check_pair = [](const ThetaObj& S, const ThetaObj& T) {
    for (const auto& m : enumerate_morphisms(S, T))
      CHECK(validate_nfun(from_theta_mor(m)));
  };
  check_pair(cell(1), simplex(2));
  check_pair(simplex(2), simplex(1));
  check_pair(cell(2), cell(2));
  check_pair(parse_obj("[2]([1]([0]),[0])"), cell(2, 2));

  auto check_chain = [](const ThetaObj& S, const ThetaObj& T,
                        const ThetaObj& U) {
    for (const auto& f : enumerate_morphisms(S, T))
      for (const auto& g : enumerate_morphisms(T, U)) {
        NFunPtr lhs = from_theta_mor(compose(g, f));
        NFunPtr rhs = compose_fun(from_theta_mor(g), from_theta_mor(f));
        CHECK(fun_tables_equal(lhs, rhs));
      }
  };
  check_chain(cell(1), simplex(2), simplex(1));
  check_chain(cell(2), cell(2), cell(2));
  check_chain(parse_obj("[2]([1]([0]),[0])"), cell(2, 2), cell(2, 2));

  CHECK(fun_tables_equal(from_theta_mor(identity(cell(2))),
                         identity_fun(from_theta(cell(2)))));

  // distinct term morphisms give distinct functors
  auto ms = enumerate_morphisms(cell(2), cell(2));
  for (std::size_t i = 0; i < ms.size(); ++i)
    for (std::size_t j = i + 1; j < ms.size(); ++j)
      CHECK(!fun_tables_equal(from_theta_mor(ms[i]), from_theta_mor(ms[j])));
}

TEST_CASE("functor enumeration agrees with term hom sets") {
  auto full = [](const ThetaObj& S, const ThetaObj& T) {
    CHECK(enumerate_functors(from_theta(S), from_theta(T)).size() ==
          hom_count(S, T));
  };
  full(cell(1), cell(1));
  full(cell(1), simplex(2));
  full(simplex(2), cell(1));
  full(simplex(2), simplex(2));
  full(cell(2), cell(2));
  full(cell(2), parse_obj("[2]([1]([0]),[0])"));
  full(parse_obj("[2]([1]([0]),[0])"), cell(2, 2));
}

TEST_CASE("functor enumeration agrees with raw level-1 tables") {
  auto cross = [](const NCatPtr& A, const NCatPtr& B) {
    CHECK(enumerate_functors(A, B).size() == count_functors_level1(A, B));
    for (const auto& F : enumerate_functors(A, B)) CHECK(validate_nfun(F));
  };
  cross(walking_iso(), walking_iso());
  cross(walking_iso(), walking_retraction());
  cross(walking_retraction(), walking_retraction());
  cross(walking_idempotent(), walking_retraction());
  cross(walking_retraction(), walking_idempotent());
  cross(from_theta(simplex(2)), from_theta(simplex(2)));
  cross(from_theta(simplex(1)), walking_iso());
  cross(codiscrete_cat(3), walking_iso());
}

TEST_CASE("frozen functor counts") {
  // squares of the object set
  CHECK(enumerate_functors(boundary_cell(1), from_theta(simplex(2))).size() ==
        9);
  CHECK(enumerate_functors(boundary_cell(1), walking_retraction()).size() == 4);
  // an isomorphism must land on an identity in a gaunt target
  CHECK(enumerate_functors(walking_iso(), from_theta(simplex(1))).size() == 2);
  // parallel-pair boundary into the walking 2-cell
  CHECK(enumerate_functors(boundary_cell(2), from_theta(cell(2))).size() == 6);
}

TEST_CASE("products") {
  NCatPtr A = from_theta(simplex(2));
  CHECK(product_cat({A}, 1).get() == A.get());
  NCatPtr P = product_cat({walking_iso(), walking_iso()}, 1);
  CHECK(P->size == 4);
  CHECK(validate_ncat(P));
  CHECK(is_strict_groupoid(P));
  NCatPtr Q = product_cat({from_theta(cell(2)), from_theta(cell(2))}, 2);
  CHECK(Q->size == 4);
  CHECK(validate_ncat(Q));
  CHECK(product_cat({walking_iso(), walking_iso()}, 1)->uid == P->uid);
  // pairing and reindexing round trip
  NFunPtr d = pair_fun(identity_fun(A), identity_fun(A));
  CHECK(validate_nfun(d));
  NFunPtr pr = product_reindex_functor(d->dst, rs_leaf({0}));
  CHECK(validate_nfun(pr));
  CHECK(fun_tables_equal(compose_fun(pr, d), identity_fun(A)));
}

TEST_CASE("maximal subcategories") {
  NCatPtr C2 = from_theta(cell(2));
  CHECK(truncate_max_sub(C2, 2)->uid == C2->uid);
  NCatPtr T1 = truncate_max_sub(C2, 1);
  CHECK(validate_ncat(T1));
  CHECK(T1->hom(0, 1)->size == 2);       // both boundary 1-cells survive
  CHECK(T1->hom(0, 1)->hom(0, 1)->size == 0);  // the 2-cell does not
  NCatPtr T0 = truncate_max_sub(C2, 0);
  CHECK(validate_ncat(T0));
  CHECK(T0->hom(0, 1)->size == 0);
  CHECK(cat_equal(truncate_max_sub(from_theta(simplex(1)), 0),
                  discrete_cat(2, 1)));
  CHECK(cat_equal(truncate_max_sub(truncate_max_sub(C2, 1), 1), T1));
  // tower inclusions are functors and compose up to the identity level
  NFunPtr i0 = tower_incl(C2, 0);
  NFunPtr i1 = tower_incl(C2, 1);
  CHECK(validate_nfun(i0));
  CHECK(validate_nfun(i1));
  CHECK(i1->dst->uid == C2->uid);
  CHECK(validate_nfun(compose_fun(i1, i0)));
  NCatPtr M = from_theta(parse_obj("[2]([1]([0]),[0])"));
  CHECK(validate_nfun(tower_incl(M, 0)));
  CHECK(validate_nfun(tower_incl(M, 1)));
}

TEST_CASE("invertibility predicates") {
  CHECK(is_strict_groupoid(walking_iso()));
  CHECK(is_strict_groupoid(codiscrete_cat(3)));
  CHECK(is_strict_groupoid(terminal_cat(2)));
  CHECK(is_strict_groupoid(discrete_cat(3, 2)));
  CHECK(is_strict_groupoid(pad_cat(walking_iso(), 2)));
  CHECK(!is_strict_groupoid(from_theta(simplex(1))));
  CHECK(!is_strict_groupoid(walking_idempotent()));
  CHECK(!is_strict_groupoid(walking_retraction()));
  CHECK(!is_strict_groupoid(suspend(walking_iso())));

  CHECK(!is_gaunt(walking_iso()));
  CHECK(!is_gaunt(codiscrete_cat(3)));
  CHECK(is_gaunt(terminal_cat(2)));
  CHECK(is_gaunt(walking_idempotent()));
  CHECK(is_gaunt(walking_retraction()));
  CHECK(is_gaunt(from_theta(cell(3))));
  CHECK(!is_gaunt(suspend(walking_iso())));
}
