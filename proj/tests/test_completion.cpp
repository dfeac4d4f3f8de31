#include <string>
#include <vector>

#include "doctest.h"
#include "thetacat/completion.hpp"

using namespace thetacat;

TEST_CASE("iso-class oracle") {
  CHECK(iso_class_partition(walking_iso()).classes.size() == 1);
  CHECK(iso_class_partition(discrete_cat(3, 1)).classes.size() == 3);
  CHECK(iso_class_partition(walking_retraction()).classes.size() == 2);
  CHECK(iso_class_partition(walking_idempotent()).classes.size() == 1);
  CHECK(iso_class_partition(from_theta(simplex(2))).classes.size() == 3);
  CHECK(iso_class_partition(codiscrete_cat(3)).classes.size() == 1);
  CHECK(iso_class_partition(product_cat({walking_iso(), discrete_cat(2, 1)}, 1))
            .classes.size() == 2);
}

TEST_CASE("completion classes agree with the iso-class oracle") {
  ThetaObj c0 = cell(0, 1);
  for (const NCatPtr& C :
       {walking_iso(), from_theta(simplex(1)), walking_retraction(),
        walking_idempotent(), discrete_cat(2, 1), discrete_cat(3, 1),
        codiscrete_cat(3), from_theta(simplex(2))}) {
    CompletionClasses R = completion_classes(C, c0);
    SetPartition O = iso_class_partition(C);
    CHECK(R.partition.classes == O.classes);
    CHECK(R.partition.class_of == O.class_of);
  }
}

TEST_CASE("general witness route matches the cylinder route") {
  NatOptions opt{4, 4};
  for (const NCatPtr& C :
       {walking_iso(), from_theta(simplex(1)), walking_retraction()}) {
    for (const ThetaObj& T : {cell(0, 1), cell(1)}) {
      CompletionClasses via_cyl = completion_classes(C, T);
      CompletionClasses via_nat = completion_classes(nerve(C), T, opt);
      CHECK(via_cyl.partition.classes == via_nat.partition.classes);
    }
  }
}

TEST_CASE("completion classes at higher cells") {
  // arrows of the walking arrow collapse only through genuine isos
  CompletionClasses R = completion_classes(from_theta(simplex(1)), cell(1));
  CHECK(R.partition.classes.size() == 3);
  // every pair of functors into the walking iso is connected by a witness
  CompletionClasses R2 = completion_classes(walking_iso(), cell(1));
  CHECK(R2.partition.classes.size() == 1);
}

TEST_CASE("completed presheaves collapse to a point") {
  NatOptions opt{4, 4};
  for (const ThetaObj& T : {simplex(1), simplex(2)}) {
    CompletionClasses R = completion_classes(e_nerve(T), cell(0, 1), opt);
    CHECK(R.partition.classes.size() == 1);
  }
  CompletionClasses R2 = completion_classes(e_nerve(cell(2)), cell(0, 2), opt);
  CHECK(R2.partition.classes.size() == 1);
}

TEST_CASE("contractions verify endpoint conditions") {
  for (const ThetaObj& S :
       {ThetaObj{1, {}}, simplex(1), simplex(2), simplex(3)}) {
    Contraction c = build_contraction(S);
    CHECK(c.e30_ok);
    CHECK(c.strictly_functorial);
    CHECK(validate_nfun(c.H));
  }
  // height 2, trivial hom categories: still a strict functor
  for (const ThetaObj& S : {pad(simplex(2), 2), pad(simplex(1), 2)}) {
    Contraction c = build_contraction(S);
    CHECK(c.e30_ok);
    CHECK(c.strictly_functorial);
  }
  // height 2 with a nontrivial hom category: the endpoint conditions hold
  // but the interchange square genuinely fails; the witness names it
  for (const ThetaObj& S : {cell(2), ThetaObj{2, {cell(1), ThetaObj{1, {}}}}}) {
    Contraction c = build_contraction(S);
    CHECK(c.e30_ok);
    CHECK_FALSE(c.strictly_functorial);
    CHECK(c.witness.find("composition square") != std::string::npos);
    CHECK_FALSE(validate_nfun(c.H));
  }
  // height 0 degenerate case
  Contraction c0 = build_contraction(point());
  CHECK(c0.e30_ok);
}

TEST_CASE("groupoid objects by nerve presentation") {
  CHECK(is_groupoid_object(walking_iso()));
  CHECK(is_groupoid_object(discrete_cat(3, 1)));
  CHECK(is_groupoid_object(pad_cat(walking_iso(), 2)));
  CHECK_FALSE(is_groupoid_object(from_theta(simplex(1))));
  CHECK_FALSE(is_groupoid_object(walking_idempotent()));
  CHECK_FALSE(is_groupoid_object(suspend(walking_iso())));
}

TEST_CASE("groupoid objects by presheaf presentation") {
  NatOptions opt{4, 4};
  CHECK(is_groupoid_object(e_nerve(simplex(1)), opt).ok);
  CHECK(is_groupoid_object(e_nerve(simplex(2)), opt).ok);
  CHECK(is_groupoid_object(e_nerve(cell(2)), opt).ok);
  CHECK(is_groupoid_object(nerve(walking_iso(), "iso"), opt).ok);
  CHECK(is_groupoid_object(nerve(pad_cat(walking_iso(), 2), "iso2"), opt).ok);

  GroupoidObjectReport bad =
      is_groupoid_object(nerve(from_theta(simplex(1)), "arrow"), opt);
  CHECK_FALSE(bad.ok);
  CHECK(bad.failing_dim == 1);
}
