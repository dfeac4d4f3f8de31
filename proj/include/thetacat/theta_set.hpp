#pragma once

// Set-valued presheaves on the term category, represented as evaluators:
// card(T) gives the size of the value at T, act(m, k) the index-level
// contravariant action, label(T, k) a printable element name.  Values are
// memoized per object; everything is bounded-exhaustive.

#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "thetacat/ncat.hpp"
#include "thetacat/theta.hpp"

namespace thetacat {

struct ThetaSet {
  int height = 0;
  std::string name;
  std::function<std::size_t(const ThetaObj&)> card;
  // act(m, k): the image of element k of F(m.target) under F(m), an index
  // into F(m.source)
  std::function<std::size_t(const ThetaMor&, std::size_t)> act;
  std::function<std::string(const ThetaObj&, std::size_t)> label;
};

// Every interval of the top map spans at most two target edges, recursively.
// Tame morphisms include all closed morphisms and generate everything under
// composition; action rules with direction-dependent data are exercised on
// this class.
inline bool is_tame(const ThetaMor& m) {
  for (std::size_t i = 1; i < m.sigma.size(); ++i)
    if (m.sigma[i] - m.sigma[i - 1] > 2) return false;
  for (const auto& t : m.taus)
    if (!is_tame(t)) return false;
  return true;
}

inline ThetaSet memoized(ThetaSet F) {
  struct Cache {
    std::map<std::string, std::size_t> cards;
    std::map<std::string, std::vector<long long>> acts;
  };
  auto c = std::make_shared<Cache>();
  auto base_card = F.card;
  auto base_act = F.act;
  ThetaSet R = F;
  R.card = [c, base_card](const ThetaObj& T) {
    std::string key = obj_key(T);
    auto it = c->cards.find(key);
    if (it != c->cards.end()) return it->second;
    return c->cards[key] = base_card(T);
  };
  auto card_fn = R.card;
  R.act = [c, base_act, card_fn](const ThetaMor& m, std::size_t k) {
    std::string key = mor_key(m);
    auto it = c->acts.find(key);
    if (it == c->acts.end())
      it = c->acts
               .emplace(key,
                        std::vector<long long>(card_fn(m.target), -1))
               .first;
    auto& v = it->second;
    if (v[k] < 0) v[k] = static_cast<long long>(base_act(m, k));
    return static_cast<std::size_t>(v[k]);
  };
  return R;
}

// ---------------------------------------------------------------------------
// Representable presheaf: T maps to Hom(T, t0), action by precomposition.

inline ThetaSet representable(const ThetaObj& t0) {
  struct Cache {
    ThetaObj t0;
    std::map<std::string, std::vector<ThetaMor>> lists;
    std::map<std::string, std::map<std::string, std::size_t>> index;
    const std::vector<ThetaMor>& get(const ThetaObj& T) {
      std::string key = obj_key(T);
      auto it = lists.find(key);
      if (it != lists.end()) return it->second;
      auto ms = enumerate_morphisms(T, t0);
      auto& idx = index[key];
      for (std::size_t k = 0; k < ms.size(); ++k) idx[mor_key(ms[k])] = k;
      return lists[key] = std::move(ms);
    }
  };
  auto c = std::make_shared<Cache>();
  c->t0 = t0;
  ThetaSet F;
  F.height = t0.height;
  F.name = "y(" + to_string(t0) + ")";
  F.card = [c](const ThetaObj& T) { return c->get(T).size(); };
  F.act = [c](const ThetaMor& m, std::size_t k) {
    ThetaMor g = compose(c->get(m.target)[k], m);
    c->get(m.source);
    return c->index[obj_key(m.source)].at(mor_key(g));
  };
  F.label = [c](const ThetaObj& T, std::size_t k) {
    return to_string(c->get(T)[k]);
  };
  return F;
}

// ---------------------------------------------------------------------------
// Nerve of a finite strict n-category, action by precomposition.

inline ThetaSet nerve(const NCatPtr& C, std::string name = "") {
  ThetaSet F;
  F.height = C->level;
  F.name = name.empty() ? "nerve" : std::move(name);
  F.card = [C](const ThetaObj& T) {
    if (T.height != C->level) throw arity_error("nerve: height mismatch");
    return enumerate_functors(from_theta(T), C).size();
  };
  F.act = [C](const ThetaMor& m, std::size_t k) {
    const auto& tl = enumerate_functors(from_theta(m.target), C);
    const auto& sl = enumerate_functors(from_theta(m.source), C);
    NFunPtr G = compose_fun(tl[k], from_theta_mor(m));
    for (std::size_t i = 0; i < sl.size(); ++i)
      if (fun_tables_equal(sl[i], G)) return i;
    throw std::logic_error("nerve action: image not found");
  };
  F.label = [C](const ThetaObj& T, std::size_t k) {
    const auto& tl = enumerate_functors(from_theta(T), C);
    std::string s = "(";
    for (std::size_t a = 0; a < tl[k]->omap.size(); ++a)
      s += (a ? "," : "") + C->names[tl[k]->omap[a]];
    return s + ")";
  };
  return memoized(F);
}

// ---------------------------------------------------------------------------
// Pointwise product.

inline ThetaSet theta_set_product(const ThetaSet& A, const ThetaSet& B) {
  if (A.height != B.height)
    throw arity_error("theta_set_product: height mismatch");
  auto a = std::make_shared<ThetaSet>(A);
  auto b = std::make_shared<ThetaSet>(B);
  ThetaSet F;
  F.height = A.height;
  F.name = A.name + "*" + B.name;
  F.card = [a, b](const ThetaObj& T) { return a->card(T) * b->card(T); };
  F.act = [a, b](const ThetaMor& m, std::size_t k) {
    std::size_t nb = b->card(m.target);
    std::size_t ka = k / nb, kb = k % nb;
    return a->act(m, ka) * b->card(m.source) + b->act(m, kb);
  };
  F.label = [a, b](const ThetaObj& T, std::size_t k) {
    std::size_t nb = b->card(T);
    return "(" + a->label(T, k / nb) + "," + b->label(T, k % nb) + ")";
  };
  return F;
}

// ---------------------------------------------------------------------------
// Finite diagrams of representables.

struct ComplexEdge {
  std::size_t from = 0, to = 0;
  ThetaMor mor;  // vertices[from] -> vertices[to]
};

struct CellComplex {
  std::vector<ThetaObj> vertices;
  std::vector<ComplexEdge> edges;
};

inline bool well_formed(const CellComplex& K) {
  for (const auto& v : K.vertices)
    if (!well_formed(v)) return false;
  for (const auto& e : K.edges) {
    if (e.from >= K.vertices.size() || e.to >= K.vertices.size()) return false;
    if (e.mor.source != K.vertices[e.from]) return false;
    if (e.mor.target != K.vertices[e.to]) return false;
    if (!well_formed(e.mor)) return false;
  }
  return true;
}

// Compatible families: one element per vertex with x_from = F(mor)(x_to)
// along every edge.  This is the value of F on the formal colimit.
inline std::vector<std::vector<std::size_t>> limit_families(
    const ThetaSet& F, const CellComplex& K) {
  const std::size_t nv = K.vertices.size();
  std::vector<std::vector<std::size_t>> out;
  if (nv == 0) {
    out.push_back({});
    return out;
  }
  std::vector<std::size_t> cards(nv);
  for (std::size_t v = 0; v < nv; ++v) cards[v] = F.card(K.vertices[v]);
  std::vector<std::vector<std::size_t>> ready(nv);
  for (std::size_t ei = 0; ei < K.edges.size(); ++ei)
    ready[std::max(K.edges[ei].from, K.edges[ei].to)].push_back(ei);
  std::vector<std::size_t> x(nv, 0);
  std::size_t v = 0;
  for (;;) {
    if (x[v] == cards[v]) {
      x[v] = 0;
      if (v == 0) break;
      --v;
      ++x[v];
      continue;
    }
    bool ok = true;
    for (std::size_t ei : ready[v]) {
      const auto& e = K.edges[ei];
      if (F.act(e.mor, x[e.to]) != x[e.from]) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      ++x[v];
      continue;
    }
    if (v + 1 == nv) {
      out.push_back(x);
      ++x[v];
    } else {
      ++v;
    }
  }
  return out;
}

inline std::size_t eval_complex(const ThetaSet& F, const CellComplex& K) {
  return limit_families(F, K).size();
}

// The presheaf colimit of the diagram of representables: at each object,
// maps into the vertices glued along the edges, action by precomposition.
inline ThetaSet complex_colimit(const CellComplex& K, int height) {
  for (const auto& v : K.vertices)
    if (v.height != height)
      throw arity_error("complex_colimit: vertex height mismatch");
  struct Table {
    std::vector<std::vector<ThetaMor>> homs;
    std::vector<std::map<std::string, std::size_t>> local;
    std::vector<std::size_t> base;
    std::vector<std::size_t> class_of;
    std::vector<std::pair<std::size_t, std::size_t>> rep;  // class -> (v, i)
  };
  struct Cache {
    CellComplex K;
    std::map<std::string, Table> tabs;
    Table& get(const ThetaObj& T) {
      std::string key = obj_key(T);
      auto it = tabs.find(key);
      if (it != tabs.end()) return it->second;
      Table t;
      const std::size_t nv = K.vertices.size();
      t.homs.resize(nv);
      t.local.resize(nv);
      t.base.resize(nv);
      std::size_t total = 0;
      for (std::size_t v = 0; v < nv; ++v) {
        t.homs[v] = enumerate_morphisms(T, K.vertices[v]);
        t.base[v] = total;
        for (std::size_t i = 0; i < t.homs[v].size(); ++i)
          t.local[v][mor_key(t.homs[v][i])] = i;
        total += t.homs[v].size();
      }
      std::vector<std::size_t> parent(total);
      for (std::size_t i = 0; i < total; ++i) parent[i] = i;
      std::function<std::size_t(std::size_t)> find =
          [&](std::size_t i) -> std::size_t {
        while (parent[i] != i) {
          parent[i] = parent[parent[i]];
          i = parent[i];
        }
        return i;
      };
      for (const auto& e : K.edges)
        for (std::size_t i = 0; i < t.homs[e.from].size(); ++i) {
          ThetaMor g = compose(e.mor, t.homs[e.from][i]);
          std::size_t j = t.local[e.to].at(mor_key(g));
          std::size_t a = find(t.base[e.from] + i), b = find(t.base[e.to] + j);
          if (a != b) parent[std::max(a, b)] = std::min(a, b);
        }
      t.class_of.assign(total, 0);
      std::map<std::size_t, std::size_t> root_to_class;
      for (std::size_t g = 0; g < total; ++g) {
        std::size_t r = find(g);
        auto rit = root_to_class.find(r);
        if (rit == root_to_class.end()) {
          rit = root_to_class.emplace(r, t.rep.size()).first;
          std::size_t v = 0;
          while (v + 1 < nv && t.base[v + 1] <= g) ++v;
          t.rep.emplace_back(v, g - t.base[v]);
        }
        t.class_of[g] = rit->second;
      }
      return tabs[key] = std::move(t);
    }
  };
  auto c = std::make_shared<Cache>();
  c->K = K;
  ThetaSet F;
  F.height = height;
  F.name = "colim";
  F.card = [c](const ThetaObj& T) { return c->get(T).rep.size(); };
  F.act = [c](const ThetaMor& m, std::size_t k) {
    Table& tt = c->get(m.target);
    auto [v, i] = tt.rep[k];
    ThetaMor g = compose(tt.homs[v][i], m);
    Table& ts = c->get(m.source);
    return ts.class_of[ts.base[v] + ts.local[v].at(mor_key(g))];
  };
  F.label = [c](const ThetaObj& T, std::size_t k) {
    Table& t = c->get(T);
    auto [v, i] = t.rep[k];
    return "v" + std::to_string(v) + ":" + to_string(t.homs[v][i]);
  };
  return F;
}

// ---------------------------------------------------------------------------
// Set-level colimit: value at the point modulo gluing along the top cell.

struct SetPartition {
  std::size_t total = 0;
  std::vector<std::vector<std::size_t>> classes;  // each ascending, by min
  std::vector<std::size_t> class_of;
};

inline SetPartition set_colimit(const ThetaSet& F) {
  const int n = F.height;
  ThetaObj c0 = cell(0, n), cn = cell(n, n);
  ThetaMor e0{c0, cn, {0}, {}}, e1{c0, cn, {1}, {}};
  SetPartition P;
  P.total = F.card(c0);
  std::vector<std::size_t> parent(P.total);
  for (std::size_t i = 0; i < P.total; ++i) parent[i] = i;
  std::function<std::size_t(std::size_t)> find =
      [&](std::size_t i) -> std::size_t {
    while (parent[i] != i) {
      parent[i] = parent[parent[i]];
      i = parent[i];
    }
    return i;
  };
  const std::size_t ncells = F.card(cn);
  for (std::size_t z = 0; z < ncells; ++z) {
    std::size_t a = find(F.act(e0, z)), b = find(F.act(e1, z));
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
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
// Presheaf-law audit over a finite object set.

struct LawReport {
  bool ok = true;
  std::string detail;
};

inline LawReport check_presheaf_laws(const ThetaSet& F,
                                     const std::vector<ThetaObj>& objs,
                                     bool tame_only = false) {
  LawReport R;
  for (const auto& T : objs) {
    ThetaMor id = identity(T);
    std::size_t n = F.card(T);
    for (std::size_t x = 0; x < n; ++x)
      if (F.act(id, x) != x) {
        R.ok = false;
        R.detail = "identity action fails at " + to_string(T);
        return R;
      }
  }
  for (const auto& S : objs)
    for (const auto& T : objs)
      for (const auto& m : enumerate_morphisms(S, T)) {
        if (tame_only && !is_tame(m)) continue;
        std::size_t nT = F.card(T), nS = F.card(S);
        for (std::size_t x = 0; x < nT; ++x)
          if (F.act(m, x) >= nS) {
            R.ok = false;
            R.detail = "action out of range along " + to_string(m);
            return R;
          }
      }
  for (const auto& S : objs)
    for (const auto& T : objs)
      for (const auto& f : enumerate_morphisms(S, T)) {
        if (tame_only && !is_tame(f)) continue;
        for (const auto& U : objs)
          for (const auto& g : enumerate_morphisms(T, U)) {
            if (tame_only && !is_tame(g)) continue;
            ThetaMor gf = compose(g, f);
            if (tame_only && !is_tame(gf)) continue;
            std::size_t nU = F.card(U);
            for (std::size_t x = 0; x < nU; ++x)
              if (F.act(gf, x) != F.act(f, F.act(g, x))) {
                R.ok = false;
                R.detail = "composition law fails: " + to_string(g) +
                           " after " + to_string(f);
                return R;
              }
          }
      }
  return R;
}

inline LawReport check_presheaf_laws(const ThetaSet& F, int bound,
                                     bool tame_only = false) {
  return check_presheaf_laws(F, enumerate_objects(F.height, bound), tame_only);
}

}  // namespace thetacat
