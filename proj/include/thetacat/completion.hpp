#pragma once

// Univalent completion at the level of components: two values of a presheaf
// at T are identified when some witness over T against the completed top
// cell restricts to them at the two endpoints.  For nerves of level-1
// categories the witnesses are plain functors out of a cylinder; in general
// they are presheaf maps computed on the generating cells.  An independent
// invertible-arrow oracle provides the expected partition, and an explicit
// contraction functor realizes the collapse of completed terms.

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetacat/e_nerve.hpp"
#include "thetacat/nat.hpp"
#include "thetacat/ncat.hpp"
#include "thetacat/theta_set.hpp"

namespace thetacat {

// ---------------------------------------------------------------------------
// Independent oracle: strict isomorphism classes of objects.

inline SetPartition iso_class_partition(const NCatPtr& C) {
  SetPartition P;
  P.total = C->size;
  std::vector<std::size_t> parent(P.total);
  for (std::size_t i = 0; i < P.total; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find =
      [&](std::size_t i) -> std::size_t {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  if (C->level > 0) {
    for (std::size_t a = 0; a < C->size; ++a)
      for (std::size_t b = 0; b < C->size; ++b) {
        const NCatPtr& ab = C->hom(a, b);
        const NCatPtr& ba = C->hom(b, a);
        bool linked = false;
        for (std::size_t g = 0; g < ab->size && !linked; ++g)
          for (std::size_t h = 0; h < ba->size && !linked; ++h) {
            std::size_t hg = C->comp(a, b, a)->omap[h * ab->size + g];
            std::size_t gh = C->comp(b, a, b)->omap[g * ba->size + h];
            linked = hg == C->ids[a] && gh == C->ids[b];
          }
        if (linked) {
          std::size_t ra = find(a), rb = find(b);
          if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
        }
      }
  }
  P.class_of.assign(P.total, 0);
  std::map<std::size_t, std::size_t> root_to_class;
  for (std::size_t i = 0; i < P.total; ++i) {
    std::size_t r = find(i);
    auto it = root_to_class.find(r);
    if (it == root_to_class.end()) {
      it = root_to_class.emplace(r, P.classes.size()).first;
      P.classes.emplace_back();
    }
    P.classes[it->second].push_back(i);
    P.class_of[i] = it->second;
  }
  return P;
}

// ---------------------------------------------------------------------------
// Completion classes: the value at T modulo endpoint restriction of
// witnesses against the completed top cell.

struct CompletionClasses {
  ThetaObj object;
  SetPartition partition;        // on F(T); class_of is the unit map
  std::size_t witness_count = 0;
};

namespace detail {

inline SetPartition partition_from_pairs(
    std::size_t total,
    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  SetPartition P;
  P.total = total;
  std::vector<std::size_t> parent(total);
  for (std::size_t i = 0; i < total; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find =
      [&](std::size_t i) -> std::size_t {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (auto [a, b] : pairs) {
    std::size_t ra = find(a), rb = find(b);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  P.class_of.assign(total, 0);
  std::map<std::size_t, std::size_t> root_to_class;
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t r = find(i);
    auto it = root_to_class.find(r);
    if (it == root_to_class.end()) {
      it = root_to_class.emplace(r, P.classes.size()).first;
      P.classes.emplace_back();
    }
    P.classes[it->second].push_back(i);
    P.class_of[i] = it->second;
  }
  return P;
}

}  // namespace detail

// General route: witnesses are presheaf maps y(T) x E(c_n) -> F, restricted
// at the two endpoint sections over the identity of T.
inline CompletionClasses completion_classes(const ThetaSet& F,
                                            const ThetaObj& T,
                                            NatOptions opt = {}) {
  const int n = F.height;
  if (T.height != n)
    throw arity_error("completion_classes: object height mismatch");
  if (static_cast<int>(node_count(T)) > opt.extend_bound)
    opt.extend_bound = static_cast<int>(node_count(T));
  ThetaObj cn = cell(n, n);
  ThetaSet G = theta_set_product(representable(T), e_nerve(cn));

  auto homs = enumerate_morphisms(T, T);
  std::string idk = mor_key(identity(T));
  std::size_t idT = homs.size();
  for (std::size_t k = 0; k < homs.size(); ++k)
    if (mor_key(homs[k]) == idk) idT = k;
  if (idT == homs.size())
    throw std::logic_error("completion_classes: identity not enumerated");
  std::size_t ce = e_card(cn, T);
  std::size_t p0 = idT * ce + static_cast<std::size_t>(e_const_element(cn, T, 0));
  std::size_t p1 = idT * ce + static_cast<std::size_t>(e_const_element(cn, T, 1));

  opt.queries.push_back({T, {p0, p1}});
  NatResult W = natural_transformations(G, F, opt);

  std::vector<std::pair<std::size_t, std::size_t>> glue;
  std::string tk = obj_key(T);
  for (const auto& el : W.elements)
    glue.emplace_back(el.queried.at(tk).at(p0), el.queried.at(tk).at(p1));

  CompletionClasses R;
  R.object = T;
  R.witness_count = W.elements.size();
  R.partition = detail::partition_from_pairs(F.card(T), glue);
  return R;
}

// Nerve shortcut at height 1: witnesses are functors out of the cylinder
// from_theta(T) x walking_iso, restricted along the two constant sections.
inline CompletionClasses completion_classes(const NCatPtr& C,
                                            const ThetaObj& T,
                                            NatOptions opt = {}) {
  if (C->level == 1 && T.height == 1) {
    NCatPtr TT = from_theta(T);
    NCatPtr P = product_cat({TT, walking_iso()}, 1);
    const auto& ws = enumerate_functors(P, C);
    const auto& fs = enumerate_functors(TT, C);
    NFunPtr sec0 = pair_fun(identity_fun(TT), constant_fun(TT, walking_iso(), 0));
    NFunPtr sec1 = pair_fun(identity_fun(TT), constant_fun(TT, walking_iso(), 1));
    auto restrict_at = [&](const NFunPtr& w, const NFunPtr& sec) {
      NFunPtr r = compose_fun(w, sec);
      for (std::size_t k = 0; k < fs.size(); ++k)
        if (fun_tables_equal(fs[k], r)) return k;
      throw std::logic_error("completion_classes: restriction not found");
    };
    std::vector<std::pair<std::size_t, std::size_t>> glue;
    for (const auto& w : ws)
      glue.emplace_back(restrict_at(w, sec0), restrict_at(w, sec1));
    CompletionClasses R;
    R.object = T;
    R.witness_count = ws.size();
    R.partition = detail::partition_from_pairs(fs.size(), glue);
    return R;
  }
  return completion_classes(nerve(C), T, opt);
}

// ---------------------------------------------------------------------------
// Contraction of a term onto its initial object: an explicit homotopy from
// the constant functor to the identity, presented over the completed cell.

struct Contraction {
  ThetaObj S;
  NCatPtr P;   // product(cell-category, term-category)
  NFunPtr H;   // P -> term-category
  bool e30_ok = false;             // endpoint restrictions are const0 and id
  bool strictly_functorial = false;
  std::string witness;             // first functor-law failure, if any
};

namespace detail {

inline NFunPtr contraction_fun(const ThetaObj& S) {
  static std::map<std::string, NFunPtr> memo;
  std::lock_guard<std::recursive_mutex> lk(builder_lock());
  std::string key = obj_key(S);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  const int n = S.height;
  NCatPtr SC = from_theta(S);
  NCatPtr IC = from_theta(cell(n, n));
  NCatPtr P = product_cat({IC, SC}, n);
  if (n == 0) return memo[key] = constant_fun(P, SC, 0);

  const std::vector<NCatPtr> pf = {IC, SC};
  NFun h;
  h.src = P;
  h.dst = SC;
  h.omap.resize(P->size);
  for (std::size_t o = 0; o < P->size; ++o) {
    auto uv = decode_product(pf, o);
    h.omap[o] = uv[0] == 0 ? 0 : uv[1];
  }
  for (std::size_t a = 0; a < P->size; ++a) {
    auto ux = decode_product(pf, a);
    for (std::size_t b = 0; b < P->size; ++b) {
      auto vy = decode_product(pf, b);
      const NCatPtr& hp = P->hom(a, b);
      const NCatPtr& hd = SC->hom(h.omap[a], h.omap[b]);
      if (hp->size == 0) {
        h.hmaps.push_back(empty_source_fun(hp, hd));
        continue;
      }
      const std::size_t u = ux[0], x = ux[1];
      const std::size_t v = vy[0], y = vy[1];
      if (u == 0 && v == 0) {
        h.hmaps.push_back(constant_fun(hp, hd, 0));
      } else if (u == 1 && v == 1) {
        h.hmaps.push_back(product_reindex_functor(hp, rs_leaf({1})));
      } else {
        // u == 0, v == 1: fan out over the target interval (0, y]
        std::vector<NFunPtr> comps;
        for (std::size_t i = 1; i <= y; ++i) {
          NCatPtr child = from_theta(S.children[i - 1]);
          if (i <= x) {
            comps.push_back(constant_fun(hp, child, 0));
          } else {
            std::vector<std::size_t> path =
                y - x == 1 ? std::vector<std::size_t>{1}
                           : std::vector<std::size_t>{1, i - x - 1};
            NFunPtr pr = product_reindex_functor(
                hp, rs_node({rs_leaf({0}), rs_leaf(path)}));
            comps.push_back(compose_fun(contraction_fun(S.children[i - 1]), pr));
          }
        }
        h.hmaps.push_back(fanout_fun(hp, comps));
      }
    }
  }
  return memo[key] = make_fun(std::move(h));
}

// First functor-law failure, rendered as a readable witness; empty if none.
inline std::string functor_law_witness(const NFunPtr& F) {
  const NCatPtr& A = F->src;
  const NCatPtr& B = F->dst;
  if (A->level == 0) return "";
  for (std::size_t a = 0; a < A->size; ++a)
    if (F->hmap(a, a)->omap[A->ids[a]] != B->ids[F->omap[a]])
      return "identity image at object " + std::to_string(a);
  for (std::size_t a = 0; a < A->size; ++a)
    for (std::size_t b = 0; b < A->size; ++b)
      for (std::size_t c = 0; c < A->size; ++c) {
        if (A->hom(a, b)->size == 0 || A->hom(b, c)->size == 0) continue;
        NFunPtr lhs = compose_fun(F->hmap(a, c), A->comp(a, b, c));
        NFunPtr rhs = compose_fun(
            B->comp(F->omap[a], F->omap[b], F->omap[c]),
            prodfun({F->hmap(b, c), F->hmap(a, b)}, A->level - 1));
        if (!fun_tables_equal(lhs, rhs))
          return "composition square at objects (" + std::to_string(a) + "," +
                 std::to_string(b) + "," + std::to_string(c) + ")";
      }
  for (std::size_t a = 0; a < A->size; ++a)
    for (std::size_t b = 0; b < A->size; ++b) {
      std::string w = functor_law_witness(F->hmap(a, b));
      if (!w.empty())
        return "hom(" + std::to_string(a) + "," + std::to_string(b) + "): " + w;
    }
  return "";
}

}  // namespace detail

inline Contraction build_contraction(const ThetaObj& S) {
  Contraction c;
  c.S = S;
  c.H = detail::contraction_fun(S);
  c.P = c.H->src;
  const int n = S.height;
  NCatPtr SC = from_theta(S);
  NCatPtr IC = from_theta(cell(n, n));
  if (n == 0) {
    c.e30_ok = c.H->omap == std::vector<std::size_t>{0};
    c.strictly_functorial = true;
    return c;
  }
  NFunPtr sec0 = pair_fun(constant_fun(SC, IC, 0), identity_fun(SC));
  NFunPtr sec1 = pair_fun(constant_fun(SC, IC, 1), identity_fun(SC));
  c.e30_ok =
      fun_tables_equal(compose_fun(c.H, sec0), constant_fun(SC, SC, 0)) &&
      fun_tables_equal(compose_fun(c.H, sec1), identity_fun(SC));
  c.witness = detail::functor_law_witness(c.H);
  c.strictly_functorial = c.witness.empty();
  return c;
}

// ---------------------------------------------------------------------------
// Groupoid objects.

// Nerve presentation: every morphism is strictly invertible.
inline bool is_groupoid_object(const NCatPtr& C) {
  return is_strict_groupoid(C);
}

struct GroupoidObjectReport {
  bool ok = true;
  int failing_dim = -1;
};

namespace detail {

// from_theta(cell(i,i)) -> i-fold suspension tower over the walking iso,
// sending the top cell to the generating invertible cell.
inline NFunPtr invertible_cell_generator(int i) {
  static std::map<int, NFunPtr> memo;
  std::lock_guard<std::recursive_mutex> lk(builder_lock());
  auto it = memo.find(i);
  if (it != memo.end()) return it->second;
  NCatPtr D = walking_iso();
  for (int k = 2; k <= i; ++k) D = suspend(D);
  NCatPtr SRC = from_theta(cell(i, i));
  NFun g;
  g.src = SRC;
  g.dst = D;
  g.omap = {0, 1};
  g.hmaps.resize(4);
  g.hmaps[0 * 2 + 0] = identity_fun(SRC->hom(0, 0));
  g.hmaps[1 * 2 + 1] = identity_fun(SRC->hom(1, 1));
  g.hmaps[1 * 2 + 0] = empty_source_fun(SRC->hom(1, 0), D->hom(1, 0));
  if (i == 1)
    g.hmaps[0 * 2 + 1] = identity_fun(SRC->hom(0, 1));
  else
    g.hmaps[0 * 2 + 1] = invertible_cell_generator(i - 1);
  return memo[i] = make_fun(std::move(g));
}

}  // namespace detail

// Presheaf presentation: every generating cell bounds against the walking
// invertible cell of its dimension, witnessed by presheaf maps hitting all
// of the value surjectively.
inline GroupoidObjectReport is_groupoid_object(const ThetaSet& F,
                                               NatOptions opt = NatOptions{4,
                                                                           4}) {
  GroupoidObjectReport R;
  const int n = F.height;
  for (int i = 1; i <= n; ++i) {
    NCatPtr D = walking_iso();
    for (int k = 2; k <= i; ++k) D = suspend(D);
    NCatPtr G = pad_cat(D, n);
    NFunPtr gen = pad_fun(detail::invertible_cell_generator(i), n);
    const auto& funs = enumerate_functors(from_theta(cell(i, n)), G);
    std::size_t gidx = funs.size();
    for (std::size_t k = 0; k < funs.size(); ++k)
      if (fun_tables_equal(funs[k], gen)) gidx = k;
    if (gidx == funs.size())
      throw std::logic_error("groupoid object: generator not enumerated");

    NatResult W = natural_transformations(nerve(G, "inv"), F, opt);
    std::set<std::size_t> images;
    std::string ck = obj_key(cell(i, n));
    for (const auto& el : W.elements)
      images.insert(el.component.at(ck)[gidx]);
    if (images.size() != F.card(cell(i, n))) {
      R.ok = false;
      R.failing_dim = i;
      return R;
    }
  }
  return R;
}

}  // namespace thetacat
