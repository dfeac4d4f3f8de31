#pragma once

// Canonical covers by cells and the Segal condition: a presheaf satisfies it
// when its value at T maps bijectively onto compatible families over the
// cells-only closed cover of T.  The checker reports per-object counts and a
// defect status; an independent probe verifies that the cover is a genuine
// colimit in the closed subcategory.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetacat/poset.hpp"
#include "thetacat/theta_set.hpp"

namespace thetacat {

struct SegalCover {
  ThetaObj target;
  CellComplex diagram;           // vertices: cell sources; edges: connectings
  std::vector<ThetaMor> cocone;  // per vertex, the closed map into target
};

inline SegalCover maximal_segal_cover(const ThetaObj& T) {
  ClosedSlicePoset P = closed_slice_poset(T, true);
  SegalCover C;
  C.target = T;
  for (const auto& m : P.nodes) {
    C.diagram.vertices.push_back(m.source);
    C.cocone.push_back(m);
  }
  for (auto [a, b] : P.hasse_edges()) {
    auto h = P.connecting(a, b);
    if (!h) throw std::logic_error("cover: missing connecting morphism");
    C.diagram.edges.push_back({a, b, *h});
  }
  return C;
}

struct SegalRow {
  ThetaObj object;
  std::size_t lhs = 0;  // value cardinality
  std::size_t rhs = 0;  // compatible-family count over the cover
  std::string status;   // ok | missing family | duplicate family | stray image
};

struct SegalReport {
  bool ok = true;
  std::vector<SegalRow> rows;
};

inline SegalReport is_segal(const ThetaSet& F,
                            const std::vector<ThetaObj>& objs) {
  SegalReport R;
  for (const auto& T : objs) {
    SegalCover C = maximal_segal_cover(T);
    auto families = limit_families(F, C.diagram);
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t k = 0; k < families.size(); ++k) index[families[k]] = k;

    SegalRow row;
    row.object = T;
    row.lhs = F.card(T);
    row.rhs = families.size();
    row.status = "ok";

    std::vector<bool> hit(families.size(), false);
    for (std::size_t x = 0; x < row.lhs && row.status == "ok"; ++x) {
      std::vector<std::size_t> tuple(C.cocone.size());
      for (std::size_t v = 0; v < C.cocone.size(); ++v)
        tuple[v] = F.act(C.cocone[v], x);
      auto it = index.find(tuple);
      if (it == index.end())
        row.status = "stray image";  // value restricts incompatibly
      else if (hit[it->second])
        row.status = "duplicate family";
      else
        hit[it->second] = true;
    }
    if (row.status == "ok" && row.lhs < row.rhs) row.status = "missing family";
    if (row.status != "ok") R.ok = false;
    R.rows.push_back(std::move(row));
  }
  return R;
}

inline SegalReport is_segal(const ThetaSet& F, int bound) {
  return is_segal(F, enumerate_objects(F.height, bound));
}

// The cover is a colimit among closed morphisms: for every probe U, maps out
// of the target biject with compatible families of closed maps out of the
// vertices.  Failure detail lands in *why when provided.
inline bool verify_cover_in_closed(const SegalCover& C, int bound,
                                   std::string* why = nullptr) {
  const int h = C.target.height;
  for (const auto& U : enumerate_objects(h, bound)) {
    struct Cls {
      ThetaObj U;
      std::map<std::string, std::vector<ThetaMor>> lists;
      std::map<std::string, std::map<std::string, std::size_t>> index;
      const std::vector<ThetaMor>& get(const ThetaObj& V) {
        std::string key = obj_key(V);
        auto it = lists.find(key);
        if (it != lists.end()) return it->second;
        std::vector<ThetaMor> ms;
        for (auto& m : enumerate_morphisms(V, U))
          if (is_closed(m)) ms.push_back(std::move(m));
        auto& idx = index[key];
        for (std::size_t k = 0; k < ms.size(); ++k) idx[mor_key(ms[k])] = k;
        return lists[key] = std::move(ms);
      }
    };
    auto cls = std::make_shared<Cls>();
    cls->U = U;
    ThetaSet Y;
    Y.height = h;
    Y.name = "closed-hom";
    Y.card = [cls](const ThetaObj& V) { return cls->get(V).size(); };
    Y.act = [cls](const ThetaMor& m, std::size_t k) {
      ThetaMor g = compose(cls->get(m.target)[k], m);
      cls->get(m.source);
      return cls->index[obj_key(m.source)].at(mor_key(g));
    };
    Y.label = [cls](const ThetaObj& V, std::size_t k) {
      return to_string(cls->get(V)[k]);
    };

    auto families = limit_families(Y, C.diagram);
    std::map<std::vector<std::size_t>, std::size_t> index;
    for (std::size_t k = 0; k < families.size(); ++k) index[families[k]] = k;

    const auto& lhs = cls->get(C.target);
    if (lhs.size() != families.size()) {
      if (why)
        *why = "count mismatch at probe " + to_string(U) + ": " +
               std::to_string(lhs.size()) + " vs " +
               std::to_string(families.size());
      return false;
    }
    std::vector<bool> hit(families.size(), false);
    for (const auto& hmor : lhs) {
      std::vector<std::size_t> tuple(C.cocone.size());
      for (std::size_t v = 0; v < C.cocone.size(); ++v) {
        ThetaMor g = compose(hmor, C.cocone[v]);
        cls->get(C.diagram.vertices[v]);
        tuple[v] = cls->index[obj_key(C.diagram.vertices[v])].at(mor_key(g));
      }
      auto it = index.find(tuple);
      if (it == index.end() || hit[it->second]) {
        if (why) *why = "image defect at probe " + to_string(U);
        return false;
      }
      hit[it->second] = true;
    }
  }
  return true;
}

}  // namespace thetacat
