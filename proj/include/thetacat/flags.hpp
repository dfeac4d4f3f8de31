#pragma once

// Flags of finite strict n-categories: cell-surjectivity and connectivity of
// functors, the flagged nerve evaluated by two independent strategies that
// must agree, and Cech nerves of set flags and of set-to-groupoid maps.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "thetacat/ncat.hpp"
#include "thetacat/theta.hpp"
#include "thetacat/theta_set.hpp"

namespace thetacat {

// ---------------------------------------------------------------------------
// Cell surjectivity and connectivity

// F is k-surjective when, for every sphere in its source, every filler of the
// image sphere in the target is the image of a filler in the source.  Fillers
// are matched on the nose; merely-essential surjectivity fails here.
inline bool k_surjective(const NFunPtr& F, int k) {
  int level = F->src->level;
  if (k < 0 || k > level)
    throw arity_error("k_surjective: dimension out of range");
  NFunPtr incl = cell_incl(k, level);
  NCatPtr B = incl->src, D = incl->dst;
  const auto& bs = enumerate_functors(B, F->src);
  const auto& fa = enumerate_functors(D, F->src);
  const auto& fb = enumerate_functors(D, F->dst);
  auto boundary_index = [&](const NFunPtr& f) {
    NFunPtr r = compose_fun(f, incl);
    for (std::size_t i = 0; i < bs.size(); ++i)
      if (fun_tables_equal(bs[i], r)) return i;
    throw std::logic_error("k_surjective: boundary not enumerated");
  };
  // group source fillers by their sphere, target fillers by the image sphere
  std::vector<std::vector<NFunPtr>> images(bs.size());
  for (const NFunPtr& f : fa)
    images[boundary_index(f)].push_back(compose_fun(F, f));
  std::vector<NFunPtr> image_sphere(bs.size());
  for (std::size_t i = 0; i < bs.size(); ++i)
    image_sphere[i] = compose_fun(F, bs[i]);
  for (const NFunPtr& g : fb) {
    NFunPtr gb = compose_fun(g, incl);
    for (std::size_t i = 0; i < bs.size(); ++i) {
      if (!fun_tables_equal(image_sphere[i], gb)) continue;
      bool hit = false;
      for (const NFunPtr& im : images[i])
        if (fun_tables_equal(im, g)) {
          hit = true;
          break;
        }
      if (!hit) return false;
    }
  }
  return true;
}

inline bool i_connective(const NFunPtr& F, int i) {
  for (int k = 0; k <= i; ++k)
    if (!k_surjective(F, k)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Flags of categories

// C_0 -> C_1 -> ... -> C_n at a common ambient level n, where C_i is
// expected to be an i-category and each composite C_i -> C_j i-connective.
struct FlaggedSeq {
  int n = 0;
  std::vector<NCatPtr> cats;  // n+1 entries
  std::vector<NFunPtr> maps;  // n entries, maps[i]: cats[i] -> cats[i+1]
};

struct FlagReport {
  bool ok = true;
  int i = -1, j = -1, k = -1;  // first failing probe
  std::string what;
};

inline NFunPtr flag_composite(const FlaggedSeq& seq, int i, int j) {
  NFunPtr f = identity_fun(seq.cats[i]);
  for (int t = i; t < j; ++t) f = compose_fun(seq.maps[t], f);
  return f;
}

inline FlagReport is_flagged(const FlaggedSeq& seq) {
  FlagReport r;
  if (seq.n < 0 || seq.cats.size() != static_cast<std::size_t>(seq.n) + 1 ||
      seq.maps.size() != static_cast<std::size_t>(seq.n)) {
    r.ok = false;
    r.what = "shape mismatch";
    return r;
  }
  for (int t = 0; t < seq.n; ++t)
    if (seq.maps[t]->src->uid != seq.cats[t]->uid ||
        seq.maps[t]->dst->uid != seq.cats[t + 1]->uid) {
      r.ok = false;
      r.i = t;
      r.what = "map endpoints do not match the listed categories";
      return r;
    }
  for (int i = 0; i <= seq.n; ++i)
    if (!cat_equal(truncate_max_sub(seq.cats[i], i), seq.cats[i])) {
      r.ok = false;
      r.i = r.j = i;
      r.what = "entry is not an i-category";
      return r;
    }
  for (int i = 0; i <= seq.n; ++i)
    for (int j = i; j <= seq.n; ++j) {
      NFunPtr f = flag_composite(seq, i, j);
      for (int k = 0; k <= i; ++k)
        if (!k_surjective(f, k)) {
          r.ok = false;
          r.i = i;
          r.j = j;
          r.k = k;
          r.what = "composite is not connective";
          return r;
        }
    }
  return r;
}

// The flag of maximal sub-i-categories with their inclusions.
inline FlaggedSeq max_sub_flag(const NCatPtr& C) {
  FlaggedSeq s;
  s.n = C->level;
  for (int i = 0; i <= s.n; ++i) s.cats.push_back(truncate_max_sub(C, i));
  for (int i = 0; i < s.n; ++i) s.maps.push_back(tower_incl(C, i));
  return s;
}

// ---------------------------------------------------------------------------
// Flagged nerve: commuting ladders vs the iterated set pullback

namespace detail {

struct LadderProbe {
  std::vector<NCatPtr> tr;                           // truncations of the term
  std::vector<NFunPtr> incl;                         // tower inclusions
  std::vector<const std::vector<NFunPtr>*> lists;    // Fun(tr[i], cats[i])
};

inline LadderProbe ladder_probe(const FlaggedSeq& seq, const ThetaObj& T) {
  if (T.height != seq.n) throw arity_error("flagged nerve: height mismatch");
  LadderProbe P;
  NCatPtr FT = from_theta(T);
  for (int i = 0; i <= seq.n; ++i) {
    P.tr.push_back(truncate_max_sub(FT, i));
    P.lists.push_back(&enumerate_functors(P.tr.back(), seq.cats[i]));
  }
  for (int i = 0; i < seq.n; ++i) P.incl.push_back(tower_incl(FT, i));
  return P;
}

// strategy one: depth-first search over ladders whose squares commute
inline std::vector<std::vector<std::size_t>> ladder_enumerate(
    const FlaggedSeq& seq, const LadderProbe& P) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(seq.n + 1, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i > seq.n) {
      out.push_back(cur);
      return;
    }
    NFunPtr down;
    if (i > 0)
      down = compose_fun(seq.maps[i - 1], (*P.lists[i - 1])[cur[i - 1]]);
    for (std::size_t a = 0; a < P.lists[i]->size(); ++a) {
      if (i > 0 &&
          !fun_tables_equal(down, compose_fun((*P.lists[i])[a], P.incl[i - 1])))
        continue;
      cur[i] = a;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// strategy two: fold binary fiber products of index maps into the canonical
// middle functor lists
inline std::vector<std::vector<std::size_t>> pullback_enumerate(
    const FlaggedSeq& seq, const LadderProbe& P) {
  std::vector<std::vector<std::size_t>> acc;
  for (std::size_t a = 0; a < P.lists[0]->size(); ++a) acc.push_back({a});
  for (int i = 1; i <= seq.n; ++i) {
    const auto& mid = enumerate_functors(P.tr[i - 1], seq.cats[i]);
    auto locate = [&](const NFunPtr& f) {
      for (std::size_t t = 0; t < mid.size(); ++t)
        if (fun_tables_equal(mid[t], f)) return t;
      throw std::logic_error("flagged nerve: composite missing from the list");
    };
    std::vector<std::size_t> pmap(P.lists[i - 1]->size());
    for (std::size_t a = 0; a < pmap.size(); ++a)
      pmap[a] = locate(compose_fun(seq.maps[i - 1], (*P.lists[i - 1])[a]));
    std::vector<std::size_t> rmap(P.lists[i]->size());
    for (std::size_t b = 0; b < rmap.size(); ++b)
      rmap[b] = locate(compose_fun((*P.lists[i])[b], P.incl[i - 1]));
    std::vector<std::vector<std::size_t>> next;
    for (const auto& t : acc)
      for (std::size_t b = 0; b < rmap.size(); ++b)
        if (pmap[t[i - 1]] == rmap[b]) {
          next.push_back(t);
          next.back().push_back(b);
        }
    acc = std::move(next);
  }
  return acc;
}

}  // namespace detail

// Both evaluation strategies side by side, for external cross-checks.
inline std::pair<std::size_t, std::size_t> flagged_nerve_counts(
    const FlaggedSeq& seq, const ThetaObj& T) {
  detail::LadderProbe P = detail::ladder_probe(seq, T);
  return {detail::ladder_enumerate(seq, P).size(),
          detail::pullback_enumerate(seq, P).size()};
}

inline ThetaSet flagged_nerve(const FlaggedSeq& seq) {
  struct Probe {
    detail::LadderProbe lp;
    std::vector<std::vector<std::size_t>> ladders;
  };
  struct Cache {
    FlaggedSeq seq;
    std::map<std::string, Probe> probes;
    const Probe& get(const ThetaObj& T) {
      auto it = probes.find(obj_key(T));
      if (it != probes.end()) return it->second;
      Probe P;
      P.lp = detail::ladder_probe(seq, T);
      P.ladders = detail::ladder_enumerate(seq, P.lp);
      if (P.ladders != detail::pullback_enumerate(seq, P.lp))
        throw std::logic_error("flagged nerve strategies disagree");
      return probes.emplace(obj_key(T), std::move(P)).first->second;
    }
  };
  auto c = std::make_shared<Cache>();
  c->seq = seq;
  ThetaSet F;
  F.height = seq.n;
  F.name = "flagged";
  F.card = [c](const ThetaObj& T) { return c->get(T).ladders.size(); };
  F.act = [c](const ThetaMor& m, std::size_t k) {
    const Probe& Pt = c->get(m.target);
    const Probe& Ps = c->get(m.source);
    NFunPtr G = from_theta_mor(m);
    std::vector<std::size_t> img(c->seq.n + 1);
    for (int i = 0; i <= c->seq.n; ++i) {
      NFunPtr gi = truncate_fun(G, i);
      NFunPtr comp = compose_fun((*Pt.lp.lists[i])[Pt.ladders[k][i]], gi);
      bool found = false;
      for (std::size_t a = 0; a < Ps.lp.lists[i]->size(); ++a)
        if (fun_tables_equal((*Ps.lp.lists[i])[a], comp)) {
          img[i] = a;
          found = true;
          break;
        }
      if (!found)
        throw std::logic_error("flagged nerve action: image not enumerated");
    }
    auto pos = std::lower_bound(Ps.ladders.begin(), Ps.ladders.end(), img);
    if (pos == Ps.ladders.end() || *pos != img)
      throw std::logic_error("flagged nerve action: image is not a ladder");
    return static_cast<std::size_t>(pos - Ps.ladders.begin());
  };
  F.label = [c](const ThetaObj& T, std::size_t k) {
    const Probe& P = c->get(T);
    std::string s = "(";
    for (std::size_t i = 0; i < P.ladders[k].size(); ++i)
      s += (i ? "," : "") + std::to_string(P.ladders[k][i]);
    return s + ")";
  };
  return memoized(F);
}

// ---------------------------------------------------------------------------
// Set flags and their Cech nerves

// X_0 -> ... -> X_n in finite sets; the first map must be surjective and
// every later one bijective.
struct SetFlag {
  std::vector<std::vector<std::string>> levels;
  std::vector<std::map<std::string, std::string>> maps;
};

inline bool set_flag_ok(const SetFlag& f, std::string* why = nullptr) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (f.levels.empty() || f.maps.size() + 1 != f.levels.size())
    return fail("level/map count mismatch");
  for (const auto& lv : f.levels) {
    std::set<std::string> seen(lv.begin(), lv.end());
    if (seen.size() != lv.size()) return fail("duplicate element name");
  }
  for (std::size_t i = 0; i < f.maps.size(); ++i) {
    std::set<std::string> tgt(f.levels[i + 1].begin(), f.levels[i + 1].end());
    std::map<std::string, std::size_t> hits;
    for (const auto& x : f.levels[i]) {
      auto it = f.maps[i].find(x);
      if (it == f.maps[i].end()) return fail("map " + std::to_string(i) + " is not total");
      if (!tgt.count(it->second)) return fail("image outside the next level");
      ++hits[it->second];
    }
    if (f.maps[i].size() != f.levels[i].size())
      return fail("map " + std::to_string(i) + " has extra entries");
    if (i == 0) {
      if (hits.size() != tgt.size()) return fail("first map is not surjective");
    } else {
      if (f.levels[i].size() != f.levels[i + 1].size() ||
          hits.size() != tgt.size())
        return fail("map " + std::to_string(i) + " is not bijective");
    }
  }
  return true;
}

// The Cech category of a set flag: objects X_0 and a unique cell in every
// dimension between objects agreeing in X_1.  Validity forces all higher
// levels to collapse onto X_1, so hom categories are terminal or empty.
inline NCatPtr cech_cat(const SetFlag& flag) {
  std::string why;
  if (!set_flag_ok(flag, &why))
    throw std::invalid_argument("cech_cat: " + why);
  int n = static_cast<int>(flag.levels.size()) - 1;
  const auto& X0 = flag.levels[0];
  if (n == 0) return set_cat(X0.size(), X0);
  const auto& phi = flag.maps[0];
  std::size_t m = X0.size();
  NCat c;
  c.level = n;
  c.size = m;
  c.names = X0;
  NCatPtr one = terminal_cat(n - 1), none = empty_cat(n - 1);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      c.homs.push_back(phi.at(X0[a]) == phi.at(X0[b]) ? one : none);
  c.ids.assign(m, 0);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t d = 0; d < m; ++d) {
        NCatPtr P = product_cat(
            {c.homs[b * m + d], c.homs[a * m + b]}, n - 1);
        NCatPtr ad = c.homs[a * m + d];
        c.comps.push_back(P->size == 0 ? empty_source_fun(P, ad)
                                       : constant_fun(P, ad, 0));
      }
  return detail::make_cat(std::move(c));
}

inline ThetaSet cech_flag(const SetFlag& flag) {
  return nerve(cech_cat(flag), "cech");
}

// Cech nerve of a map from a finite set into the objects of a groupoid: the
// pullback groupoid on the set, with morphisms borrowed from the target.
inline NCatPtr cech_groupoid_cat(const std::vector<std::size_t>& f,
                                 const NCatPtr& G) {
  if (G->level != 1)
    throw arity_error("cech_groupoid: the target must live at level 1");
  if (!is_strict_groupoid(G))
    throw std::invalid_argument("cech_groupoid: target is not a groupoid");
  for (std::size_t x : f)
    if (x >= G->size)
      throw std::invalid_argument("cech_groupoid: image out of range");
  std::size_t m = f.size();
  NCat c;
  c.level = 1;
  c.size = m;
  for (std::size_t x = 0; x < m; ++x)
    c.names.push_back(std::to_string(x) + ":" + G->names[f[x]]);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      c.homs.push_back(set_cat(G->hom(f[a], f[b])->size));
  for (std::size_t a = 0; a < m; ++a) c.ids.push_back(G->ids[f[a]]);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t d = 0; d < m; ++d) {
        NFun t;
        t.src = product_cat({c.homs[b * m + d], c.homs[a * m + b]}, 0);
        t.dst = c.homs[a * m + d];
        t.omap = G->comp(f[a], f[b], f[d])->omap;
        c.comps.push_back(detail::make_fun(std::move(t)));
      }
  return detail::make_cat(std::move(c));
}

inline ThetaSet cech_groupoid(const std::vector<std::size_t>& f,
                              const NCatPtr& G) {
  return nerve(cech_groupoid_cat(f, G), "cech_gpd");
}

}  // namespace thetacat
