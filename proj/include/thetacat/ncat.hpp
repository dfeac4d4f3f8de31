#pragma once

// Finite strict n-categories as recursively enriched structures: a level-n
// category has a finite object set and level-(n-1) hom categories, with
// composition functors hom(b,c) x hom(a,b) -> hom(a,c).  Level 0 is a bare
// finite set.
//
// Values are immutable and shared; builders memoize so that structurally
// reused pieces (hom products, padded copies, term categories) are
// pointer-identical.  Composition functors always have source exactly
// product_cat({hom(b,c), hom(a,b)}), which the memoization makes stable.

#include <algorithm>
#include <array>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "thetacat/theta.hpp"

namespace thetacat {

struct NCat;
struct NFun;
using NCatPtr = std::shared_ptr<const NCat>;
using NFunPtr = std::shared_ptr<const NFun>;

struct NCat {
  int level = 0;
  std::size_t size = 0;
  std::vector<std::string> names;   // size entries, display only
  std::vector<NCatPtr> homs;        // size*size entries when level > 0
  std::vector<std::size_t> ids;     // size entries when level > 0
  std::vector<NFunPtr> comps;       // size^3 entries when level > 0
  // Set when built as a product; lets functor combinators address factors.
  std::optional<std::vector<NCatPtr>> factors;
  std::uint64_t uid = 0;

  const NCatPtr& hom(std::size_t a, std::size_t b) const {
    return homs[a * size + b];
  }
  const NFunPtr& comp(std::size_t a, std::size_t b, std::size_t c) const {
    return comps[(a * size + b) * size + c];
  }
};

struct NFun {
  NCatPtr src, dst;
  std::vector<std::size_t> omap;   // src->size entries
  std::vector<NFunPtr> hmaps;      // src->size^2 entries when level > 0
  std::uint64_t uid = 0;

  const NFunPtr& hmap(std::size_t a, std::size_t b) const {
    return hmaps[a * src->size + b];
  }
};

namespace detail {

inline std::recursive_mutex& builder_lock() {
  static std::recursive_mutex m;
  return m;
}

inline std::uint64_t next_uid() {
  static std::uint64_t n = 0;
  return ++n;
}

inline NCatPtr make_cat(NCat&& c) {
  c.uid = next_uid();
  return std::make_shared<const NCat>(std::move(c));
}

inline NFunPtr make_fun(NFun&& f) {
  f.uid = next_uid();
  return std::make_shared<const NFun>(std::move(f));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Mixed-radix object encoding for products (first factor most significant)

inline std::vector<std::size_t> decode_product(
    const std::vector<NCatPtr>& factors, std::size_t idx) {
  std::vector<std::size_t> comp(factors.size(), 0);
  for (std::size_t k = factors.size(); k-- > 0;) {
    comp[k] = idx % factors[k]->size;
    idx /= factors[k]->size;
  }
  return comp;
}

inline std::size_t encode_product(const std::vector<NCatPtr>& factors,
                                  const std::vector<std::size_t>& comp) {
  std::size_t idx = 0;
  for (std::size_t k = 0; k < factors.size(); ++k)
    idx = idx * factors[k]->size + comp[k];
  return idx;
}

// ---------------------------------------------------------------------------
// Basic categories

NCatPtr product_cat(std::vector<NCatPtr> factors, int level);

inline NCatPtr empty_cat(int level) {
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static std::map<int, NCatPtr> memo;
  auto it = memo.find(level);
  if (it != memo.end()) return it->second;
  NCat c;
  c.level = level;
  c.size = 0;
  return memo[level] = detail::make_cat(std::move(c));
}

// The terminal level-n category, also the empty product at that level.
inline NCatPtr terminal_cat(int level) {
  return product_cat({}, level);
}

inline NCatPtr set_cat(std::size_t k, std::vector<std::string> names = {}) {
  NCat c;
  c.level = 0;
  c.size = k;
  if (names.empty())
    for (std::size_t i = 0; i < k; ++i) c.names.push_back(std::to_string(i));
  else
    c.names = std::move(names);
  return detail::make_cat(std::move(c));
}

// ---------------------------------------------------------------------------
// Functor combinators

inline NFunPtr identity_fun(const NCatPtr& C) {
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static std::map<std::uint64_t, NFunPtr> memo;
  auto it = memo.find(C->uid);
  if (it != memo.end()) return it->second;
  NFun f;
  f.src = C;
  f.dst = C;
  f.omap.resize(C->size);
  for (std::size_t i = 0; i < C->size; ++i) f.omap[i] = i;
  if (C->level > 0)
    for (std::size_t a = 0; a < C->size; ++a)
      for (std::size_t b = 0; b < C->size; ++b)
        f.hmaps.push_back(identity_fun(C->hom(a, b)));
  return memo[C->uid] = detail::make_fun(std::move(f));
}

// The unique functor from an empty category.
inline NFunPtr empty_source_fun(const NCatPtr& A, const NCatPtr& D) {
  NFun f;
  f.src = A;
  f.dst = D;
  return detail::make_fun(std::move(f));
}

// Everything to `obj` and, recursively, to its identities.
inline NFunPtr constant_fun(const NCatPtr& A, const NCatPtr& D,
                            std::size_t obj) {
  NFun f;
  f.src = A;
  f.dst = D;
  f.omap.assign(A->size, obj);
  if (A->level > 0)
    for (std::size_t a = 0; a < A->size; ++a)
      for (std::size_t b = 0; b < A->size; ++b)
        f.hmaps.push_back(
            constant_fun(A->hom(a, b), D->hom(obj, obj), D->ids[obj]));
  return detail::make_fun(std::move(f));
}

inline NFunPtr object_functor(const NCatPtr& D, std::size_t obj) {
  return constant_fun(terminal_cat(D->level), D, obj);
}

// F after G.  Memoized by operand identity: searches re-compose the same
// functors many times.
inline NFunPtr compose_fun(const NFunPtr& F, const NFunPtr& G) {
  if (F->src->uid != G->dst->uid)
    throw std::logic_error("compose_fun: middle category mismatch");
  static std::map<std::pair<std::uint64_t, std::uint64_t>, NFunPtr> memo;
  std::lock_guard<std::recursive_mutex> lk(detail::builder_lock());
  const auto key = std::make_pair(F->uid, G->uid);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  NFun r;
  r.src = G->src;
  r.dst = F->dst;
  r.omap.resize(G->src->size);
  for (std::size_t i = 0; i < r.omap.size(); ++i)
    r.omap[i] = F->omap[G->omap[i]];
  if (G->src->level > 0)
    for (std::size_t a = 0; a < G->src->size; ++a)
      for (std::size_t b = 0; b < G->src->size; ++b)
        r.hmaps.push_back(compose_fun(F->hmap(G->omap[a], G->omap[b]),
                                      G->hmap(a, b)));
  return memo[key] = detail::make_fun(std::move(r));
}

// <F,G>: X -> product({F.dst, G.dst}).
inline NFunPtr pair_fun(const NFunPtr& F, const NFunPtr& G) {
  if (F->src->uid != G->src->uid)
    throw std::logic_error("pair_fun: source mismatch");
  NCatPtr dst = product_cat({F->dst, G->dst}, F->dst->level);
  NFun r;
  r.src = F->src;
  r.dst = dst;
  r.omap.resize(F->src->size);
  for (std::size_t i = 0; i < r.omap.size(); ++i)
    r.omap[i] = encode_product({F->dst, G->dst}, {F->omap[i], G->omap[i]});
  if (F->src->level > 0)
    for (std::size_t a = 0; a < F->src->size; ++a)
      for (std::size_t b = 0; b < F->src->size; ++b)
        r.hmaps.push_back(pair_fun(F->hmap(a, b), G->hmap(a, b)));
  return detail::make_fun(std::move(r));
}

// <F_0,..,F_{k-1}>: common source into product({F_k.dst}).  The source is
// passed explicitly so the empty fanout (into the terminal product) works.
inline NFunPtr fanout_fun(const NCatPtr& src, const std::vector<NFunPtr>& funs) {
  if (funs.size() == 1) return funs[0];
  const int level = src->level;
  std::vector<NCatPtr> df;
  for (const auto& f : funs) {
    if (f->src->uid != src->uid)
      throw std::logic_error("fanout_fun: source mismatch");
    df.push_back(f->dst);
  }
  NCatPtr dst = product_cat(df, level);
  if (funs.empty())
    return src->size == 0 ? empty_source_fun(src, dst)
                          : constant_fun(src, dst, 0);
  NFun r;
  r.src = src;
  r.dst = dst;
  r.omap.resize(src->size);
  for (std::size_t i = 0; i < src->size; ++i) {
    std::vector<std::size_t> comp(funs.size());
    for (std::size_t k = 0; k < funs.size(); ++k) comp[k] = funs[k]->omap[i];
    r.omap[i] = encode_product(df, comp);
  }
  if (level > 0)
    for (std::size_t a = 0; a < src->size; ++a)
      for (std::size_t b = 0; b < src->size; ++b) {
        std::vector<NFunPtr> hs;
        for (const auto& f : funs) hs.push_back(f->hmap(a, b));
        r.hmaps.push_back(fanout_fun(src->hom(a, b), hs));
      }
  return detail::make_fun(std::move(r));
}

// Componentwise product of functors: product({F_k.src}) -> product({F_k.dst}).
// Memoized by operand identity, like compose_fun.
inline NFunPtr prodfun(const std::vector<NFunPtr>& funs, int level) {
  if (funs.size() == 1) return funs[0];
  if (funs.empty()) return identity_fun(terminal_cat(level));
  static std::map<std::pair<int, std::vector<std::uint64_t>>, NFunPtr> memo;
  std::lock_guard<std::recursive_mutex> lk(detail::builder_lock());
  std::pair<int, std::vector<std::uint64_t>> key;
  key.first = level;
  key.second.reserve(funs.size());
  for (const auto& f : funs) key.second.push_back(f->uid);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::vector<NCatPtr> sf, df;
  for (const auto& f : funs) {
    sf.push_back(f->src);
    df.push_back(f->dst);
  }
  NFun r;
  r.src = product_cat(sf, level);
  r.dst = product_cat(df, level);
  r.omap.resize(r.src->size);
  for (std::size_t i = 0; i < r.src->size; ++i) {
    auto comp = decode_product(sf, i);
    for (std::size_t k = 0; k < funs.size(); ++k)
      comp[k] = funs[k]->omap[comp[k]];
    r.omap[i] = encode_product(df, comp);
  }
  if (level > 0)
    for (std::size_t a = 0; a < r.src->size; ++a)
      for (std::size_t b = 0; b < r.src->size; ++b) {
        auto ca = decode_product(sf, a), cb = decode_product(sf, b);
        std::vector<NFunPtr> hs;
        for (std::size_t k = 0; k < funs.size(); ++k)
          hs.push_back(funs[k]->hmap(ca[k], cb[k]));
        r.hmaps.push_back(prodfun(hs, level - 1));
      }
  return memo[key] = detail::make_fun(std::move(r));
}

// ---------------------------------------------------------------------------
// Reindexing functors between iterated products
//
// A shape is a tree whose leaves are factor paths into the (annotated)
// source product; the induced functor permutes, projects, duplicates and
// reassociates factors.  Hom categories of products mirror the annotation,
// so the same shape reindexes every hom level.

struct ReindexShape {
  bool leaf = false;
  std::vector<std::size_t> path;      // leaf payload
  std::vector<ReindexShape> kids;     // node payload
};

inline ReindexShape rs_leaf(std::vector<std::size_t> path) {
  ReindexShape s;
  s.leaf = true;
  s.path = std::move(path);
  return s;
}

inline ReindexShape rs_node(std::vector<ReindexShape> kids) {
  ReindexShape s;
  s.kids = std::move(kids);
  return s;
}

inline NCatPtr subcat_path(const NCatPtr& C,
                           const std::vector<std::size_t>& path) {
  NCatPtr cur = C;
  for (std::size_t d : path) {
    if (!cur->factors) throw std::logic_error("subcat_path: not a product");
    cur = (*cur->factors)[d];
  }
  return cur;
}

inline std::size_t value_at_path(const NCatPtr& C, std::size_t idx,
                                 const std::vector<std::size_t>& path) {
  NCatPtr cur = C;
  for (std::size_t d : path) {
    if (!cur->factors) throw std::logic_error("value_at_path: not a product");
    auto comp = decode_product(*cur->factors, idx);
    idx = comp[d];
    cur = (*cur->factors)[d];
  }
  return idx;
}

namespace detail {

inline NCatPtr shape_dst(const NCatPtr& src, const ReindexShape& s) {
  if (s.leaf) return subcat_path(src, s.path);
  std::vector<NCatPtr> kids;
  for (const auto& k : s.kids) kids.push_back(shape_dst(src, k));
  return product_cat(kids, src->level);
}

inline std::size_t shape_value(const NCatPtr& src, std::size_t idx,
                               const ReindexShape& s) {
  if (s.leaf) return value_at_path(src, idx, s.path);
  std::vector<NCatPtr> kids;
  std::vector<std::size_t> vals;
  for (const auto& k : s.kids) {
    kids.push_back(shape_dst(src, k));
    vals.push_back(shape_value(src, idx, k));
  }
  return encode_product(kids, vals);
}

}  // namespace detail

inline NFunPtr product_reindex_functor(const NCatPtr& src,
                                       const ReindexShape& shape) {
  NFun r;
  r.src = src;
  r.dst = detail::shape_dst(src, shape);
  r.omap.resize(src->size);
  for (std::size_t i = 0; i < src->size; ++i)
    r.omap[i] = detail::shape_value(src, i, shape);
  if (src->level > 0)
    for (std::size_t a = 0; a < src->size; ++a)
      for (std::size_t b = 0; b < src->size; ++b)
        r.hmaps.push_back(product_reindex_functor(src->hom(a, b), shape));
  return detail::make_fun(std::move(r));
}

// src (a product with the given factor list; a lone category counts as the
// singleton product of itself) -> product({entry.fun->dst}), where each
// target factor is fed from one source slot.
struct MapEntry {
  std::size_t slot;
  NFunPtr fun;
};

inline NFunPtr product_map_functor(const NCatPtr& src,
                                   const std::vector<NCatPtr>& src_factors,
                                   const std::vector<MapEntry>& entries,
                                   int level) {
  std::vector<NCatPtr> df;
  for (const auto& e : entries) df.push_back(e.fun->dst);
  NFun r;
  r.src = src;
  r.dst = product_cat(df, level);
  r.omap.resize(src->size);
  for (std::size_t i = 0; i < src->size; ++i) {
    auto comp = decode_product(src_factors, i);
    std::vector<std::size_t> vals;
    for (const auto& e : entries) vals.push_back(e.fun->omap[comp[e.slot]]);
    r.omap[i] = encode_product(df, vals);
  }
  if (level > 0)
    for (std::size_t a = 0; a < src->size; ++a)
      for (std::size_t b = 0; b < src->size; ++b) {
        auto ca = decode_product(src_factors, a);
        auto cb = decode_product(src_factors, b);
        std::vector<NCatPtr> hf;
        for (std::size_t k = 0; k < src_factors.size(); ++k)
          hf.push_back(src_factors[k]->hom(ca[k], cb[k]));
        std::vector<MapEntry> he;
        for (const auto& e : entries)
          he.push_back({e.slot, e.fun->hmap(ca[e.slot], cb[e.slot])});
        r.hmaps.push_back(
            product_map_functor(src->hom(a, b), hf, he, level - 1));
      }
  return detail::make_fun(std::move(r));
}

// ---------------------------------------------------------------------------
// Products

inline NCatPtr product_cat(std::vector<NCatPtr> factors, int level) {
  for (const auto& f : factors)
    if (f->level != level)
      throw arity_error("product_cat: factor level mismatch");
  if (factors.size() == 1) return factors[0];

  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static std::map<std::pair<int, std::vector<std::uint64_t>>, NCatPtr> memo;
  std::vector<std::uint64_t> key;
  for (const auto& f : factors) key.push_back(f->uid);
  auto it = memo.find({level, key});
  if (it != memo.end()) return it->second;

  NCat c;
  c.level = level;
  c.size = 1;
  for (const auto& f : factors) c.size *= f->size;
  c.factors = factors;
  for (std::size_t i = 0; i < c.size; ++i) {
    auto comp = decode_product(factors, i);
    std::string nm = "(";
    for (std::size_t k = 0; k < factors.size(); ++k)
      nm += (k ? "," : "") + factors[k]->names[comp[k]];
    c.names.push_back(nm + ")");
  }
  if (factors.empty()) c.names = {"*"};

  if (level > 0 && c.size > 0) {
    for (std::size_t a = 0; a < c.size; ++a) {
      auto ca = decode_product(factors, a);
      for (std::size_t b = 0; b < c.size; ++b) {
        auto cb = decode_product(factors, b);
        std::vector<NCatPtr> hf;
        for (std::size_t k = 0; k < factors.size(); ++k)
          hf.push_back(factors[k]->hom(ca[k], cb[k]));
        c.homs.push_back(product_cat(hf, level - 1));
      }
    }
    for (std::size_t a = 0; a < c.size; ++a) {
      auto ca = decode_product(factors, a);
      std::vector<std::size_t> idc;
      std::vector<NCatPtr> hf;
      for (std::size_t k = 0; k < factors.size(); ++k) {
        idc.push_back(factors[k]->ids[ca[k]]);
        hf.push_back(factors[k]->hom(ca[k], ca[k]));
      }
      c.ids.push_back(encode_product(hf, idc));
    }
  } else if (level > 0) {
    // size 0: no homs/ids/comps needed beyond empty vectors
  }

  NCatPtr P = detail::make_cat(std::move(c));
  memo[{level, key}] = P;

  if (level > 0 && P->size > 0) {
    // comps: transpose the paired homs factorwise, then compose factorwise
    NCat patched = *P;
    for (std::size_t a = 0; a < P->size; ++a) {
      auto ca = decode_product(factors, a);
      for (std::size_t b = 0; b < P->size; ++b) {
        auto cb = decode_product(factors, b);
        for (std::size_t cc = 0; cc < P->size; ++cc) {
          auto cv = decode_product(factors, cc);
          NCatPtr P2 =
              product_cat({P->hom(b, cc), P->hom(a, b)}, level - 1);
          if (P2->size == 0) {
            patched.comps.push_back(empty_source_fun(P2, P->hom(a, cc)));
            continue;
          }
          if (factors.empty()) {
            patched.comps.push_back(
                product_reindex_functor(P2, rs_node({})));
            continue;
          }
          std::vector<ReindexShape> outer;
          std::vector<NFunPtr> comps_k;
          for (std::size_t k = 0; k < factors.size(); ++k) {
            outer.push_back(rs_node({rs_leaf({0, k}), rs_leaf({1, k})}));
            comps_k.push_back(factors[k]->comp(ca[k], cb[k], cv[k]));
          }
          NFunPtr rex = product_reindex_functor(P2, rs_node(outer));
          patched.comps.push_back(
              compose_fun(prodfun(comps_k, level - 1), rex));
        }
      }
    }
    patched.uid = P->uid;
    NCatPtr full = std::make_shared<const NCat>(std::move(patched));
    memo[{level, key}] = full;
    return full;
  }
  return P;
}

// ---------------------------------------------------------------------------
// Equality

// Table equality for functors with identical (pointer) endpoints.
inline bool fun_tables_equal(const NFunPtr& F, const NFunPtr& G) {
  if (F->uid == G->uid) return true;
  if (F->src->uid != G->src->uid || F->dst->uid != G->dst->uid) return false;
  if (F->omap != G->omap) return false;
  for (std::size_t k = 0; k < F->hmaps.size(); ++k)
    if (!fun_tables_equal(F->hmaps[k], G->hmaps[k])) return false;
  return true;
}

inline bool fun_deep_equal(const NFunPtr& F, const NFunPtr& G) {
  if (F->omap != G->omap) return false;
  if (F->hmaps.size() != G->hmaps.size()) return false;
  for (std::size_t k = 0; k < F->hmaps.size(); ++k)
    if (!fun_deep_equal(F->hmaps[k], G->hmaps[k])) return false;
  return true;
}

// Structural equality of all numeric tables; names and provenance ignored.
inline bool cat_equal(const NCatPtr& A, const NCatPtr& B) {
  if (A->uid == B->uid) return true;
  if (A->level != B->level || A->size != B->size) return false;
  if (A->ids != B->ids) return false;
  for (std::size_t k = 0; k < A->homs.size(); ++k)
    if (!cat_equal(A->homs[k], B->homs[k])) return false;
  for (std::size_t k = 0; k < A->comps.size(); ++k)
    if (!fun_deep_equal(A->comps[k], B->comps[k])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Suspension, padding

inline NCatPtr suspend(const NCatPtr& C) {
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static std::map<std::uint64_t, NCatPtr> memo;
  auto it = memo.find(C->uid);
  if (it != memo.end()) return it->second;
  const int L = C->level;
  NCat s;
  s.level = L + 1;
  s.size = 2;
  s.names = {"0", "1"};
  NCatPtr T = terminal_cat(L), E = empty_cat(L);
  s.homs = {T, C, E, T};  // (0,0) (0,1) (1,0) (1,1)
  s.ids = {0, 0};
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      for (std::size_t c = 0; c < 2; ++c) {
        NCatPtr bc = s.homs[b * 2 + c], ab = s.homs[a * 2 + b];
        NCatPtr P2 = product_cat({bc, ab}, L);
        NCatPtr ac = s.homs[a * 2 + c];
        if (P2->size == 0) {
          s.comps.push_back(empty_source_fun(P2, ac));
        } else if (a == 0 && b == 0 && c == 1) {
          s.comps.push_back(product_reindex_functor(P2, rs_leaf({0})));
        } else if (a == 0 && b == 1 && c == 1) {
          s.comps.push_back(product_reindex_functor(P2, rs_leaf({1})));
        } else {
          s.comps.push_back(product_reindex_functor(P2, rs_node({})));
        }
      }
  return memo[C->uid] = detail::make_cat(std::move(s));
}

inline NFunPtr suspend_fun(const NFunPtr& F) {
  NCatPtr S = suspend(F->src), D = suspend(F->dst);
  NFun r;
  r.src = S;
  r.dst = D;
  r.omap = {0, 1};
  r.hmaps = {identity_fun(terminal_cat(F->src->level)), F,
             empty_source_fun(empty_cat(F->src->level), D->hom(1, 0)),
             identity_fun(terminal_cat(F->src->level))};
  return detail::make_fun(std::move(r));
}

NFunPtr pad1_fun(const NFunPtr& F);

// Raises the level by one by inserting only identities on top: a level-0 set
// becomes the discrete category, a product pads factorwise.
inline NCatPtr pad1(const NCatPtr& C) {
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static std::map<std::uint64_t, NCatPtr> memo;
  auto it = memo.find(C->uid);
  if (it != memo.end()) return it->second;
  NCatPtr result;
  if (C->factors) {
    std::vector<NCatPtr> pf;
    for (const auto& f : *C->factors) pf.push_back(pad1(f));
    result = product_cat(pf, C->level + 1);
  } else if (C->level == 0) {
    NCat d;
    d.level = 1;
    d.size = C->size;
    d.names = C->names;
    for (std::size_t a = 0; a < d.size; ++a)
      for (std::size_t b = 0; b < d.size; ++b)
        d.homs.push_back(a == b ? terminal_cat(0) : empty_cat(0));
    d.ids.assign(d.size, 0);
    for (std::size_t a = 0; a < d.size; ++a)
      for (std::size_t b = 0; b < d.size; ++b)
        for (std::size_t c = 0; c < d.size; ++c) {
          NCatPtr P2 =
              product_cat({d.homs[b * d.size + c], d.homs[a * d.size + b]}, 0);
          NCatPtr ac = d.homs[a * d.size + c];
          if (P2->size == 0)
            d.comps.push_back(empty_source_fun(P2, ac));
          else
            d.comps.push_back(product_reindex_functor(P2, rs_node({})));
        }
    result = detail::make_cat(std::move(d));
  } else {
    NCat p;
    p.level = C->level + 1;
    p.size = C->size;
    p.names = C->names;
    for (const auto& h : C->homs) p.homs.push_back(pad1(h));
    p.ids = C->ids;
    for (const auto& cf : C->comps) p.comps.push_back(pad1_fun(cf));
    result = detail::make_cat(std::move(p));
  }
  return memo[C->uid] = result;
}

inline NFunPtr pad1_fun(const NFunPtr& F) {
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static std::map<std::uint64_t, NFunPtr> memo;
  auto it = memo.find(F->uid);
  if (it != memo.end()) return it->second;
  NCatPtr S = pad1(F->src), D = pad1(F->dst);
  NFun r;
  r.src = S;
  r.dst = D;
  r.omap = F->omap;
  if (F->src->level == 0) {
    // one-object homs map to identities, empty homs by the unique functor
    for (std::size_t a = 0; a < S->size; ++a)
      for (std::size_t b = 0; b < S->size; ++b) {
        NCatPtr sh = S->hom(a, b);
        NCatPtr dh = D->hom(F->omap[a], F->omap[b]);
        if (sh->size == 0)
          r.hmaps.push_back(empty_source_fun(sh, dh));
        else
          r.hmaps.push_back(constant_fun(sh, dh, D->ids[F->omap[a]]));
      }
  } else {
    for (const auto& h : F->hmaps) r.hmaps.push_back(pad1_fun(h));
  }
  return memo[F->uid] = detail::make_fun(std::move(r));
}

inline NCatPtr pad_cat(NCatPtr C, int level) {
  if (level < C->level) throw arity_error("pad_cat: level below category");
  while (C->level < level) C = pad1(C);
  return C;
}

inline NFunPtr pad_fun(NFunPtr F, int level) {
  while (F->src->level < level) F = pad1_fun(F);
  return F;
}

inline NCatPtr discrete_cat(std::size_t k, int level,
                            std::vector<std::string> names = {}) {
  return pad_cat(set_cat(k, std::move(names)), level);
}

// ---------------------------------------------------------------------------
// Term categories
//
// from_theta(T) realizes a term as a strict n-category: objects 0..p, hom(a,b)
// the product of the child categories strictly between, composition by
// interval concatenation.  Padded terms produce padded categories, pointer
// compatibly with pad_cat.

namespace detail {

inline int min_height(const ThetaObj& t) {
  int h = 0;
  for (const auto& c : t.children) h = std::max(h, min_height(c) + 1);
  return h;
}

inline ThetaObj unpad(const ThetaObj& t) {
  if (t.children.empty()) return point();
  std::vector<ThetaObj> kids;
  int h = 0;
  for (const auto& c : t.children) {
    kids.push_back(unpad(c));
    h = std::max(h, kids.back().height);
  }
  ThetaObj r{h + 1, {}};
  for (auto& k : kids) r.children.push_back(pad(k, h));
  return r;
}

}  // namespace detail

inline NCatPtr from_theta(const ThetaObj& T) {
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static std::map<std::string, NCatPtr> memo;
  std::string key = obj_key(T);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  NCatPtr result;
  if (T.height == 0) {
    result = terminal_cat(0);
  } else if (detail::min_height(T) < T.height) {
    result = pad_cat(from_theta(detail::unpad(T)), T.height);
  } else {
    const int n = T.height;
    const std::size_t p = T.width();
    std::vector<NCatPtr> kid;
    for (const auto& c : T.children) kid.push_back(from_theta(c));
    NCat c;
    c.level = n;
    c.size = p + 1;
    for (std::size_t a = 0; a <= p; ++a) c.names.push_back(std::to_string(a));
    for (std::size_t a = 0; a <= p; ++a)
      for (std::size_t b = 0; b <= p; ++b) {
        if (a > b) {
          c.homs.push_back(empty_cat(n - 1));
        } else {
          std::vector<NCatPtr> fs(kid.begin() + static_cast<long>(a),
                                  kid.begin() + static_cast<long>(b));
          c.homs.push_back(product_cat(fs, n - 1));
        }
      }
    c.ids.assign(p + 1, 0);
    for (std::size_t a = 0; a <= p; ++a)
      for (std::size_t b = 0; b <= p; ++b)
        for (std::size_t d = 0; d <= p; ++d) {
          NCatPtr bc = c.homs[b * (p + 1) + d], ab = c.homs[a * (p + 1) + b];
          NCatPtr P2 = product_cat({bc, ab}, n - 1);
          NCatPtr ac = c.homs[a * (p + 1) + d];
          if (P2->size == 0) {
            c.comps.push_back(empty_source_fun(P2, ac));
            continue;
          }
          // a <= b <= d here; target factors are i in (a, d]
          if (d == a) {
            c.comps.push_back(product_reindex_functor(P2, rs_node({})));
            continue;
          }
          auto path_of = [&](std::size_t i) -> std::vector<std::size_t> {
            if (i > b) {
              if (d - b == 1) return {0};
              return {0, i - b - 1};
            }
            if (b - a == 1) return {1};
            return {1, i - a - 1};
          };
          if (d - a == 1) {
            c.comps.push_back(
                product_reindex_functor(P2, rs_leaf(path_of(d))));
          } else {
            std::vector<ReindexShape> kidsh;
            for (std::size_t i = a + 1; i <= d; ++i)
              kidsh.push_back(rs_leaf(path_of(i)));
            c.comps.push_back(
                product_reindex_functor(P2, rs_node(kidsh)));
          }
        }
    result = detail::make_cat(std::move(c));
  }
  return memo[key] = result;
}

inline NFunPtr from_theta_mor(const ThetaMor& m) {
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static std::map<std::string, NFunPtr> memo;
  std::string key = mor_key(m);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  NCatPtr A = from_theta(m.source), B = from_theta(m.target);
  NFun r;
  r.src = A;
  r.dst = B;
  if (m.source.height == 0) {
    r.omap = {0};
    return memo[key] = detail::make_fun(std::move(r));
  }
  const std::size_t p = m.source.width();
  for (int v : m.sigma) r.omap.push_back(static_cast<std::size_t>(v));
  for (std::size_t a = 0; a <= p; ++a)
    for (std::size_t b = 0; b <= p; ++b) {
      if (a > b) {
        r.hmaps.push_back(empty_source_fun(A->hom(a, b), B->hom(r.omap[a], r.omap[b])));
        continue;
      }
      if (a == b) {
        r.hmaps.push_back(identity_fun(A->hom(a, a)));
        continue;
      }
      const int sa = m.sigma[a], sb = m.sigma[b];
      std::vector<NCatPtr> sf;
      for (std::size_t j = a + 1; j <= b; ++j)
        sf.push_back(from_theta(m.source.children[j - 1]));
      std::vector<MapEntry> entries;
      for (int i = sa + 1; i <= sb; ++i) {
        // unique j in (a,b] with sigma(j-1) < i <= sigma(j)
        std::size_t j = 0;
        for (std::size_t jj = a + 1; jj <= b; ++jj)
          if (m.sigma[jj - 1] < i && i <= m.sigma[jj]) {
            j = jj;
            break;
          }
        entries.push_back(
            {j - (a + 1), from_theta_mor(*find_tau(m, static_cast<int>(j), i))});
      }
      r.hmaps.push_back(
          product_map_functor(A->hom(a, b), sf, entries, m.source.height - 1));
    }
  return memo[key] = detail::make_fun(std::move(r));
}

// ---------------------------------------------------------------------------
// Named catalog categories

// All homs terminal: every object uniquely isomorphic to every other.
inline NCatPtr codiscrete_cat(std::size_t k) {
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static std::map<std::size_t, NCatPtr> memo;
  auto it = memo.find(k);
  if (it != memo.end()) return it->second;
  NCat c;
  c.level = 1;
  c.size = k;
  for (std::size_t i = 0; i < k; ++i) c.names.push_back(std::to_string(i));
  for (std::size_t i = 0; i < k * k; ++i) c.homs.push_back(terminal_cat(0));
  c.ids.assign(k, 0);
  for (std::size_t i = 0; i < k * k * k; ++i) {
    NCatPtr P2 = product_cat({terminal_cat(0), terminal_cat(0)}, 0);
    c.comps.push_back(product_reindex_functor(P2, rs_node({})));
  }
  return memo[k] = detail::make_cat(std::move(c));
}

inline NCatPtr walking_iso() { return codiscrete_cat(2); }

inline NCatPtr walking_idempotent() {
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static NCatPtr memo;
  if (memo) return memo;
  NCat c;
  c.level = 1;
  c.size = 1;
  c.names = {"x"};
  NCatPtr h = set_cat(2, {"id", "e"});
  c.homs = {h};
  c.ids = {0};
  NCatPtr P2 = product_cat({h, h}, 0);
  NFun cf;
  cf.src = P2;
  cf.dst = h;
  cf.omap = {0, 1, 1, 1};  // id.id=id, id.e=e, e.id=e, e.e=e
  c.comps = {detail::make_fun(std::move(cf))};
  return memo = detail::make_cat(std::move(c));
}

inline NCatPtr walking_retraction() {
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static NCatPtr memo;
  if (memo) return memo;
  NCat c;
  c.level = 1;
  c.size = 2;
  c.names = {"0", "1"};
  NCatPtr h00 = set_cat(1, {"id0"});
  NCatPtr h01 = set_cat(1, {"s"});
  NCatPtr h10 = set_cat(1, {"r"});
  NCatPtr h11 = set_cat(2, {"id1", "e"});
  c.homs = {h00, h01, h10, h11};
  c.ids = {0, 0};
  auto table = [&](NCatPtr bc, NCatPtr ab, NCatPtr ac,
                   std::vector<std::size_t> omap) {
    NFun f;
    f.src = product_cat({bc, ab}, 0);
    f.dst = ac;
    f.omap = std::move(omap);
    return detail::make_fun(std::move(f));
  };
  // order (a,b,c) row-major; pair (g,f) encoded g*|ab|+f
  c.comps = {
      table(h00, h00, h00, {0}),        // (0,0,0) id0.id0
      table(h01, h00, h01, {0}),        // (0,0,1) s.id0=s
      table(h10, h01, h00, {0}),        // (0,1,0) r.s=id0
      table(h11, h01, h01, {0, 0}),     // (0,1,1) id1.s=s, e.s=s
      table(h00, h10, h10, {0}),        // (1,0,0) id0.r=r
      table(h01, h10, h11, {1}),        // (1,0,1) s.r=e
      table(h10, h11, h10, {0, 0}),     // (1,1,0) r.id1=r, r.e=r
      table(h11, h11, h11, {0, 1, 1, 1}),  // (1,1,1)
  };
  return memo = detail::make_cat(std::move(c));
}

// boundary_cell(0) is empty, boundary_cell(1) two discrete points, and
// each further boundary is a suspension.
inline NCatPtr boundary_cell(int k) {
  if (k == 0) return empty_cat(0);
  if (k == 1) {
    std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
    static NCatPtr memo;
    if (!memo) memo = pad1(set_cat(2));
    return memo;
  }
  return suspend(boundary_cell(k - 1));
}

inline NCatPtr boundary_cell(int k, int level) {
  return pad_cat(boundary_cell(k), level);
}

inline NCatPtr cell_cat(int k, int level = -1) {
  return from_theta(cell(k, level));
}

// The boundary inclusion into the walking k-cell.
inline NFunPtr cell_incl(int k) {
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static std::map<int, NFunPtr> memo;
  auto it = memo.find(k);
  if (it != memo.end()) return it->second;
  NFunPtr result;
  if (k == 0) {
    result = empty_source_fun(empty_cat(0), terminal_cat(0));
  } else {
    NCatPtr S = boundary_cell(k), D = cell_cat(k);
    NFun r;
    r.src = S;
    r.dst = D;
    r.omap = {0, 1};
    NFunPtr inner = k == 1 ? identity_fun(terminal_cat(0)) : cell_incl(k - 1);
    r.hmaps = {identity_fun(terminal_cat(k - 1)),
               // hom(0,1) of the boundary includes into hom(0,1) of the cell
               k == 1 ? empty_source_fun(S->hom(0, 1), D->hom(0, 1)) : inner,
               empty_source_fun(S->hom(1, 0), D->hom(1, 0)),
               identity_fun(terminal_cat(k - 1))};
    result = detail::make_fun(std::move(r));
  }
  return memo[k] = result;
}

inline NFunPtr cell_incl(int k, int level) {
  return pad_fun(cell_incl(k), level);
}

// ---------------------------------------------------------------------------
// Maximal subcategories

NFunPtr truncate_fun(const NFunPtr& F, int i);

// The maximal sub-i-category at the ambient level: all cells up to dimension
// i kept, everything above replaced by identities.
inline NCatPtr truncate_max_sub(const NCatPtr& C, int i) {
  if (i >= C->level || C->level == 0) return C;
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static std::map<std::pair<std::uint64_t, int>, NCatPtr> memo;
  auto it = memo.find({C->uid, i});
  if (it != memo.end()) return it->second;
  NCatPtr result;
  if (C->factors) {
    std::vector<NCatPtr> tf;
    for (const auto& f : *C->factors) tf.push_back(truncate_max_sub(f, i));
    result = product_cat(tf, C->level);
  } else if (i == 0) {
    NCat d;
    d.level = C->level;
    d.size = C->size;
    d.names = C->names;
    for (std::size_t a = 0; a < d.size; ++a)
      for (std::size_t b = 0; b < d.size; ++b)
        d.homs.push_back(a == b ? terminal_cat(C->level - 1)
                                : empty_cat(C->level - 1));
    d.ids.assign(d.size, 0);
    for (std::size_t a = 0; a < d.size; ++a)
      for (std::size_t b = 0; b < d.size; ++b)
        for (std::size_t c = 0; c < d.size; ++c) {
          NCatPtr P2 = product_cat(
              {d.homs[b * d.size + c], d.homs[a * d.size + b]}, C->level - 1);
          NCatPtr ac = d.homs[a * d.size + c];
          if (P2->size == 0)
            d.comps.push_back(empty_source_fun(P2, ac));
          else
            d.comps.push_back(product_reindex_functor(P2, rs_node({})));
        }
    result = detail::make_cat(std::move(d));
  } else {
    NCat t;
    t.level = C->level;
    t.size = C->size;
    t.names = C->names;
    for (const auto& h : C->homs) t.homs.push_back(truncate_max_sub(h, i - 1));
    t.ids = C->ids;  // object sets at every level are preserved
    for (const auto& cf : C->comps) t.comps.push_back(truncate_fun(cf, i - 1));
    result = detail::make_cat(std::move(t));
  }
  return memo[{C->uid, i}] = result;
}

inline NFunPtr truncate_fun(const NFunPtr& F, int i) {
  if (i >= F->src->level || F->src->level == 0) return F;
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static std::map<std::pair<std::uint64_t, int>, NFunPtr> memo;
  auto it = memo.find({F->uid, i});
  if (it != memo.end()) return it->second;
  NCatPtr S = truncate_max_sub(F->src, i), D = truncate_max_sub(F->dst, i);
  NFun r;
  r.src = S;
  r.dst = D;
  r.omap = F->omap;
  if (i == 0) {
    for (std::size_t a = 0; a < S->size; ++a)
      for (std::size_t b = 0; b < S->size; ++b) {
        NCatPtr sh = S->hom(a, b);
        NCatPtr dh = D->hom(F->omap[a], F->omap[b]);
        if (sh->size == 0)
          r.hmaps.push_back(empty_source_fun(sh, dh));
        else
          r.hmaps.push_back(constant_fun(sh, dh, D->ids[F->omap[a]]));
      }
  } else {
    for (const auto& h : F->hmaps) r.hmaps.push_back(truncate_fun(h, i - 1));
  }
  return memo[{F->uid, i}] = detail::make_fun(std::move(r));
}

// Inclusion of the maximal sub-i-category into the maximal sub-(i+1)-category.
inline NFunPtr tower_incl(const NCatPtr& C, int i) {
  NCatPtr A = truncate_max_sub(C, i), B = truncate_max_sub(C, i + 1);
  if (A->uid == B->uid) return identity_fun(A);
  NFun r;
  r.src = A;
  r.dst = B;
  r.omap.resize(A->size);
  for (std::size_t a = 0; a < A->size; ++a) r.omap[a] = a;
  if (i == 0) {
    for (std::size_t a = 0; a < A->size; ++a)
      for (std::size_t b = 0; b < A->size; ++b) {
        NCatPtr sh = A->hom(a, b);
        if (sh->size == 0)
          r.hmaps.push_back(empty_source_fun(sh, B->hom(a, b)));
        else
          r.hmaps.push_back(constant_fun(sh, B->hom(a, a), B->ids[a]));
      }
  } else {
    for (std::size_t a = 0; a < A->size; ++a)
      for (std::size_t b = 0; b < A->size; ++b)
        r.hmaps.push_back(tower_incl(C->hom(a, b), i - 1));
  }
  return detail::make_fun(std::move(r));
}

// ---------------------------------------------------------------------------
// Validation

inline bool validate_nfun(const NFunPtr& F);

inline bool validate_ncat(const NCatPtr& C) {
  if (C->level < 0) return false;
  if (C->level == 0) return C->homs.empty() && C->comps.empty();
  if (C->homs.size() != C->size * C->size) return false;
  if (C->ids.size() != C->size) return false;
  if (C->comps.size() != C->size * C->size * C->size) return false;
  for (const auto& h : C->homs)
    if (h->level != C->level - 1 || !validate_ncat(h)) return false;
  for (std::size_t a = 0; a < C->size; ++a)
    if (C->ids[a] >= C->hom(a, a)->size) return false;
  for (std::size_t a = 0; a < C->size; ++a)
    for (std::size_t b = 0; b < C->size; ++b)
      for (std::size_t c = 0; c < C->size; ++c) {
        const NFunPtr& cf = C->comp(a, b, c);
        NCatPtr P2 = product_cat({C->hom(b, c), C->hom(a, b)}, C->level - 1);
        if (cf->src->uid != P2->uid || cf->dst->uid != C->hom(a, c)->uid)
          return false;
        if (!validate_nfun(cf)) return false;
      }
  // unit laws as functor-table equalities
  for (std::size_t a = 0; a < C->size; ++a)
    for (std::size_t b = 0; b < C->size; ++b) {
      NCatPtr h = C->hom(a, b);
      if (h->size == 0) continue;
      NFunPtr idh = identity_fun(h);
      NFunPtr left = compose_fun(
          C->comp(a, b, b),
          pair_fun(constant_fun(h, C->hom(b, b), C->ids[b]), idh));
      if (!fun_tables_equal(left, idh)) return false;
      NFunPtr right = compose_fun(
          C->comp(a, a, b),
          pair_fun(idh, constant_fun(h, C->hom(a, a), C->ids[a])));
      if (!fun_tables_equal(right, idh)) return false;
    }
  // associativity via the two reindexed evaluation orders
  for (std::size_t a = 0; a < C->size; ++a)
    for (std::size_t b = 0; b < C->size; ++b)
      for (std::size_t c = 0; c < C->size; ++c)
        for (std::size_t d = 0; d < C->size; ++d) {
          NCatPtr P3 = product_cat(
              {C->hom(c, d), C->hom(b, c), C->hom(a, b)}, C->level - 1);
          if (P3->size == 0) continue;
          NFunPtr pr0 = product_reindex_functor(P3, rs_leaf({0}));
          NFunPtr pr2 = product_reindex_functor(P3, rs_leaf({2}));
          NFunPtr pr01 =
              product_reindex_functor(P3, rs_node({rs_leaf({0}), rs_leaf({1})}));
          NFunPtr pr12 =
              product_reindex_functor(P3, rs_node({rs_leaf({1}), rs_leaf({2})}));
          NFunPtr path1 = compose_fun(
              C->comp(a, c, d),
              pair_fun(pr0, compose_fun(C->comp(a, b, c), pr12)));
          NFunPtr path2 = compose_fun(
              C->comp(a, b, d),
              pair_fun(compose_fun(C->comp(b, c, d), pr01), pr2));
          if (!fun_tables_equal(path1, path2)) return false;
        }
  return true;
}

inline bool validate_nfun(const NFunPtr& F) {
  const NCatPtr& A = F->src;
  const NCatPtr& B = F->dst;
  if (A->level != B->level) return false;
  if (F->omap.size() != A->size) return false;
  for (std::size_t v : F->omap)
    if (v >= B->size) return false;
  if (A->level == 0) return F->hmaps.empty();
  if (F->hmaps.size() != A->size * A->size) return false;
  for (std::size_t a = 0; a < A->size; ++a)
    for (std::size_t b = 0; b < A->size; ++b) {
      const NFunPtr& h = F->hmap(a, b);
      if (h->src->uid != A->hom(a, b)->uid) return false;
      if (h->dst->uid != B->hom(F->omap[a], F->omap[b])->uid) return false;
      if (!validate_nfun(h)) return false;
    }
  for (std::size_t a = 0; a < A->size; ++a)
    if (F->hmap(a, a)->omap[A->ids[a]] != B->ids[F->omap[a]]) return false;
  for (std::size_t a = 0; a < A->size; ++a)
    for (std::size_t b = 0; b < A->size; ++b)
      for (std::size_t c = 0; c < A->size; ++c) {
        if (product_cat({A->hom(b, c), A->hom(a, b)}, A->level - 1)->size == 0)
          continue;
        NFunPtr lhs = compose_fun(F->hmap(a, c), A->comp(a, b, c));
        NFunPtr rhs = compose_fun(
            B->comp(F->omap[a], F->omap[b], F->omap[c]),
            prodfun({F->hmap(b, c), F->hmap(a, b)}, A->level - 1));
        if (!fun_tables_equal(lhs, rhs)) return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// Functor enumeration

inline const std::vector<NFunPtr>& enumerate_functors(const NCatPtr& A,
                                                      const NCatPtr& B) {
  if (A->level != B->level)
    throw arity_error("enumerate_functors: level mismatch");
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static std::map<std::pair<std::uint64_t, std::uint64_t>,
                  std::vector<NFunPtr>>
      memo;
  auto key = std::make_pair(A->uid, B->uid);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  std::vector<NFunPtr> out;
  const std::size_t n = A->size;
  const std::size_t npairs = n * n;

  // triples become checkable once their last pair is assigned; triples whose
  // composition domain is empty are skipped outright
  std::vector<std::vector<std::array<std::size_t, 3>>> ready(npairs);
  std::vector<char> trip_skip(A->level > 0 ? n * n * n : 0, 0);
  if (A->level > 0)
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c) {
          std::size_t last = std::max({a * n + b, b * n + c, a * n + c});
          ready[last].push_back({a, b, c});
          trip_skip[(a * n + b) * n + c] =
              product_cat({A->hom(b, c), A->hom(a, b)}, A->level - 1)->size ==
              0;
        }

  // composite comparisons repeat across object maps and backtrack branches
  std::map<std::pair<std::uint64_t, std::uint64_t>, bool> eqmemo;

  std::vector<std::size_t> omap(n, 0);
  auto emit = [&]() {
    if (A->level == 0) {
      NFun f;
      f.src = A;
      f.dst = B;
      f.omap = omap;
      out.push_back(detail::make_fun(std::move(f)));
      return;
    }
    // hom maps per ordered pair, row-major; the object-map search already
    // pruned every pair with no hom maps, so all option lists are nonempty
    std::vector<const std::vector<NFunPtr>*> options(npairs);
    for (std::size_t p = 0; p < npairs; ++p) {
      std::size_t a = p / n, b = p % n;
      options[p] = &enumerate_functors(A->hom(a, b), B->hom(omap[a], omap[b]));
    }
    std::vector<NFunPtr> chosen(npairs);
    std::vector<std::size_t> pick(npairs, 0);
    auto ok_at = [&](std::size_t p) -> bool {
      std::size_t a = p / n, b = p % n;
      const NFunPtr& h = chosen[p];
      if (a == b && h->omap[A->ids[a]] != B->ids[omap[a]]) return false;
      for (const auto& tr : ready[p]) {
        auto [x, y, z] = tr;
        if (trip_skip[(x * n + y) * n + z]) continue;
        NFunPtr lhs = compose_fun(chosen[x * n + z], A->comp(x, y, z));
        NFunPtr rhs =
            compose_fun(B->comp(omap[x], omap[y], omap[z]),
                        prodfun({chosen[y * n + z], chosen[x * n + y]},
                                A->level - 1));
        const auto ek = std::make_pair(lhs->uid, rhs->uid);
        auto eit = eqmemo.find(ek);
        if (eit == eqmemo.end())
          eit = eqmemo.emplace(ek, fun_tables_equal(lhs, rhs)).first;
        if (!eit->second) return false;
      }
      return true;
    };
    if (npairs == 0) {
      NFun f;
      f.src = A;
      f.dst = B;
      out.push_back(detail::make_fun(std::move(f)));
      return;
    }
    std::size_t p = 0;
    for (;;) {
      if (pick[p] == options[p]->size()) {
        // backtrack
        pick[p] = 0;
        if (p == 0) break;
        --p;
        ++pick[p];
        continue;
      }
      chosen[p] = (*options[p])[pick[p]];
      if (!ok_at(p)) {
        ++pick[p];
        continue;
      }
      if (p + 1 == npairs) {
        NFun f;
        f.src = A;
        f.dst = B;
        f.omap = omap;
        f.hmaps = chosen;
        out.push_back(detail::make_fun(std::move(f)));
        ++pick[p];
      } else {
        ++p;
      }
    }
  };

  // depth-first object maps in lexicographic order, pruning any prefix that
  // maps a nonempty hom set into one with no functors
  std::function<void(std::size_t)> assign = [&](std::size_t a) {
    if (a == n) {
      emit();
      return;
    }
    for (omap[a] = 0; omap[a] < B->size; ++omap[a]) {
      if (A->level > 0) {
        bool dead = false;
        for (std::size_t i = 0; i <= a && !dead; ++i) {
          if (enumerate_functors(A->hom(i, a), B->hom(omap[i], omap[a]))
                  .empty())
            dead = true;
          else if (i != a && enumerate_functors(A->hom(a, i),
                                                B->hom(omap[a], omap[i]))
                                 .empty())
            dead = true;
        }
        if (dead) continue;
      }
      assign(a + 1);
    }
    omap[a] = 0;
  };
  assign(0);
  return memo[key] = std::move(out);
}

// ---------------------------------------------------------------------------
// Invertibility predicates

// Every morphism at every level has a strict two-sided inverse.
inline bool is_strict_groupoid(const NCatPtr& C) {
  if (C->level == 0) return true;
  for (const auto& h : C->homs)
    if (!is_strict_groupoid(h)) return false;
  for (std::size_t a = 0; a < C->size; ++a)
    for (std::size_t b = 0; b < C->size; ++b) {
      const NCatPtr& ab = C->hom(a, b);
      const NCatPtr& ba = C->hom(b, a);
      for (std::size_t g = 0; g < ab->size; ++g) {
        bool inv = false;
        for (std::size_t h = 0; h < ba->size && !inv; ++h) {
          // h.g = id_a and g.h = id_b
          std::size_t hg = C->comp(a, b, a)->omap[h * ab->size + g];
          std::size_t gh = C->comp(b, a, b)->omap[g * ba->size + h];
          inv = hg == C->ids[a] && gh == C->ids[b];
        }
        if (!inv) return false;
      }
    }
  return true;
}

// Every strictly invertible morphism is an identity, at every level.
inline bool is_gaunt(const NCatPtr& C) {
  if (C->level == 0) return true;
  for (const auto& h : C->homs)
    if (!is_gaunt(h)) return false;
  for (std::size_t a = 0; a < C->size; ++a)
    for (std::size_t b = 0; b < C->size; ++b) {
      const NCatPtr& ab = C->hom(a, b);
      const NCatPtr& ba = C->hom(b, a);
      for (std::size_t g = 0; g < ab->size; ++g)
        for (std::size_t h = 0; h < ba->size; ++h) {
          std::size_t hg = C->comp(a, b, a)->omap[h * ab->size + g];
          std::size_t gh = C->comp(b, a, b)->omap[g * ba->size + h];
          if (hg == C->ids[a] && gh == C->ids[b]) {
            if (a != b || g != C->ids[a] || h != C->ids[a]) return false;
          }
        }
    }
  return true;
}

}  // namespace thetacat
