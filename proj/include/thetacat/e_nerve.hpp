#pragma once

// Groupoid-completion presheaf of a term T, computed from the explicit
// element formula: an element over a probe S is an arbitrary map f on object
// indices together with, for every probe edge j and every target index i
// strictly between (min,max] of the endpoint images, an element of the child
// completion E(T_i)(S_j).  The contravariant action reindexes f along sigma
// and transports each child datum along the tau of the last probe edge whose
// image interval crosses i.  Closed and, more generally, tame morphisms act
// exactly; the full action is exercised on that class.

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "thetacat/theta.hpp"
#include "thetacat/theta_set.hpp"

namespace thetacat {

inline std::size_t e_card(const ThetaObj& T, const ThetaObj& S);

namespace detail {

struct ETab {
  ThetaObj T, S;
  int p = 0, q = 0;
  std::vector<std::size_t> sub;     // sub[(i-1)*q + (j-1)] = |E(T_i)(S_j)|
  std::vector<std::size_t> block;   // elements over each object map f
  std::vector<std::size_t> prefix;  // prefix sums, size block.size()+1
  std::size_t total = 0;

  std::size_t subcard(int i, int j) const {
    return sub[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(q) +
               static_cast<std::size_t>(j - 1)];
  }
};

inline const ETab& e_table(const ThetaObj& T, const ThetaObj& S) {
  if (T.height != S.height || T.height < 1)
    throw arity_error("completion: probe height mismatch");
  static std::map<std::pair<std::string, std::string>, ETab> memo;
  auto key = std::make_pair(obj_key(T), obj_key(S));
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;

  ETab t;
  t.T = T;
  t.S = S;
  t.p = static_cast<int>(T.width());
  t.q = static_cast<int>(S.width());
  t.sub.resize(static_cast<std::size_t>(t.p) * static_cast<std::size_t>(t.q));
  for (int i = 1; i <= t.p; ++i)
    for (int j = 1; j <= t.q; ++j)
      t.sub[static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(t.q) +
            static_cast<std::size_t>(j - 1)] =
          e_card(T.children[static_cast<std::size_t>(i) - 1],
                 S.children[static_cast<std::size_t>(j) - 1]);

  std::size_t nf = 1;
  for (int a = 0; a <= t.q; ++a) nf *= static_cast<std::size_t>(t.p) + 1;
  t.block.resize(nf);
  t.prefix.assign(nf + 1, 0);
  std::vector<int> f(static_cast<std::size_t>(t.q) + 1, 0);
  for (std::size_t fi = 0; fi < nf; ++fi) {
    std::size_t b = 1;
    for (int j = 1; j <= t.q; ++j) {
      int lo = std::min(f[static_cast<std::size_t>(j) - 1],
                        f[static_cast<std::size_t>(j)]);
      int hi = std::max(f[static_cast<std::size_t>(j) - 1],
                        f[static_cast<std::size_t>(j)]);
      for (int i = lo + 1; i <= hi; ++i) b *= t.subcard(i, j);
    }
    t.block[fi] = b;
    t.prefix[fi + 1] = t.prefix[fi] + b;
    // advance f with f(0) most significant
    int a = t.q;
    while (a >= 0 && ++f[static_cast<std::size_t>(a)] == t.p + 1) {
      f[static_cast<std::size_t>(a)] = 0;
      --a;
    }
  }
  t.total = t.prefix[nf];
  return memo[key] = std::move(t);
}

inline std::vector<int> e_decode_f(const ETab& t, std::size_t fi) {
  std::vector<int> f(static_cast<std::size_t>(t.q) + 1);
  for (int a = t.q; a >= 0; --a) {
    f[static_cast<std::size_t>(a)] =
        static_cast<int>(fi % (static_cast<std::size_t>(t.p) + 1));
    fi /= static_cast<std::size_t>(t.p) + 1;
  }
  return f;
}

inline std::size_t e_encode_f(const ETab& t, const std::vector<int>& f) {
  std::size_t fi = 0;
  for (int a = 0; a <= t.q; ++a)
    fi = fi * (static_cast<std::size_t>(t.p) + 1) +
         static_cast<std::size_t>(f[static_cast<std::size_t>(a)]);
  return fi;
}

// Crossing slots of a fixed object map, in storage order: probe edges
// ascending, target indices ascending within the image hull of each edge.
inline std::vector<std::pair<int, int>> e_slots(const ETab& t,
                                                const std::vector<int>& f) {
  std::vector<std::pair<int, int>> out;
  for (int j = 1; j <= t.q; ++j) {
    int lo = std::min(f[static_cast<std::size_t>(j) - 1],
                      f[static_cast<std::size_t>(j)]);
    int hi = std::max(f[static_cast<std::size_t>(j) - 1],
                      f[static_cast<std::size_t>(j)]);
    for (int i = lo + 1; i <= hi; ++i) out.emplace_back(j, i);
  }
  return out;
}

struct EElem {
  std::size_t fi = 0;
  std::vector<int> f;
  std::vector<std::pair<int, int>> slots;  // (j, i)
  std::vector<std::size_t> gs;             // child element per slot
};

inline EElem e_decode(const ETab& t, std::size_t x) {
  if (x >= t.total) throw std::out_of_range("completion element out of range");
  std::size_t lo = 0, hi = t.block.size();
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (t.prefix[mid] <= x)
      lo = mid;
    else
      hi = mid;
  }
  EElem e;
  e.fi = lo;
  e.f = e_decode_f(t, lo);
  e.slots = e_slots(t, e.f);
  std::size_t rem = x - t.prefix[lo];
  e.gs.assign(e.slots.size(), 0);
  for (std::size_t s = e.slots.size(); s-- > 0;) {
    std::size_t r = t.subcard(e.slots[s].second, e.slots[s].first);
    e.gs[s] = rem % r;
    rem /= r;
  }
  return e;
}

inline std::size_t e_encode(const ETab& t, const std::vector<int>& f,
                            const std::vector<std::size_t>& gs) {
  std::size_t fi = e_encode_f(t, f);
  auto slots = e_slots(t, f);
  std::size_t local = 0;
  for (std::size_t s = 0; s < slots.size(); ++s)
    local = local * t.subcard(slots[s].second, slots[s].first) + gs[s];
  return t.prefix[fi] + local;
}

}  // namespace detail

inline std::size_t e_card(const ThetaObj& T, const ThetaObj& S) {
  if (T.height != S.height)
    throw arity_error("completion: probe height mismatch");
  if (T.height == 0) return 1;
  return detail::e_table(T, S).total;
}

// Contravariant action along m: target-of-m elements to source-of-m elements.
inline std::size_t e_act(const ThetaObj& T, const ThetaMor& m, std::size_t x) {
  if (T.height == 0) return 0;
  const detail::ETab& tt = detail::e_table(T, m.target);
  const detail::ETab& ts = detail::e_table(T, m.source);
  detail::EElem e = detail::e_decode(tt, x);

  const int qs = ts.q;
  std::vector<int> fp(static_cast<std::size_t>(qs) + 1);
  for (int a = 0; a <= qs; ++a)
    fp[static_cast<std::size_t>(a)] =
        e.f[static_cast<std::size_t>(m.sigma[static_cast<std::size_t>(a)])];

  auto slot_value = [&](int j, int i) -> std::size_t {
    for (std::size_t s = 0; s < e.slots.size(); ++s)
      if (e.slots[s].first == j && e.slots[s].second == i) return e.gs[s];
    throw std::logic_error("completion action: missing crossing datum");
  };

  std::vector<std::size_t> gs;
  for (int jp = 1; jp <= qs; ++jp) {
    const int a = m.sigma[static_cast<std::size_t>(jp) - 1];
    const int b = m.sigma[static_cast<std::size_t>(jp)];
    int lo = std::min(fp[static_cast<std::size_t>(jp) - 1],
                      fp[static_cast<std::size_t>(jp)]);
    int hi = std::max(fp[static_cast<std::size_t>(jp) - 1],
                      fp[static_cast<std::size_t>(jp)]);
    for (int i = lo + 1; i <= hi; ++i) {
      // last edge of the image interval whose hull crosses level i
      int found = -1;
      for (int j = b; j > a; --j) {
        int u = e.f[static_cast<std::size_t>(j) - 1];
        int v = e.f[static_cast<std::size_t>(j)];
        if (std::min(u, v) < i && i <= std::max(u, v)) {
          found = j;
          break;
        }
      }
      if (found < 0)
        throw std::logic_error("completion action: no crossing edge");
      const ThetaMor* tau = find_tau(m, jp, found);
      if (!tau) throw std::logic_error("completion action: missing tau");
      gs.push_back(e_act(T.children[static_cast<std::size_t>(i) - 1], *tau,
                         slot_value(found, i)));
    }
  }
  return detail::e_encode(ts, fp, gs);
}

// The element lying over a constant object map; it carries no crossing data.
inline std::size_t e_const_element(const ThetaObj& T, const ThetaObj& S,
                                   int obj) {
  if (T.height == 0) return 0;
  const detail::ETab& t = detail::e_table(T, S);
  std::vector<int> f(static_cast<std::size_t>(t.q) + 1, obj);
  return detail::e_encode(t, f, {});
}

// Canonical inclusion of the representable: a morphism m into T determines
// the element with f = sigma and units in every crossing slot.
inline std::size_t e_unit_element(const ThetaObj& T, const ThetaMor& m) {
  if (m.target != T) throw arity_error("unit element: target mismatch");
  if (T.height == 0) return 0;
  const detail::ETab& t = detail::e_table(T, m.source);
  std::vector<int> f(m.sigma.begin(), m.sigma.end());
  std::vector<std::size_t> gs;
  for (int j = 1; j <= t.q; ++j) {
    for (int i = m.sigma[static_cast<std::size_t>(j) - 1] + 1;
         i <= m.sigma[static_cast<std::size_t>(j)]; ++i) {
      const ThetaMor* tau = find_tau(m, j, i);
      if (!tau) throw std::logic_error("unit element: missing tau");
      gs.push_back(
          e_unit_element(T.children[static_cast<std::size_t>(i) - 1], *tau));
    }
  }
  return detail::e_encode(t, f, gs);
}

inline std::string e_label(const ThetaObj& T, const ThetaObj& S,
                           std::size_t x) {
  if (T.height == 0) return "*";
  const detail::ETab& t = detail::e_table(T, S);
  detail::EElem e = detail::e_decode(t, x);
  std::string s = "(";
  for (int a = 0; a <= t.q; ++a)
    s += (a ? " " : "") + std::to_string(e.f[static_cast<std::size_t>(a)]);
  for (std::size_t k = 0; k < e.slots.size(); ++k) {
    s += ";" + std::to_string(e.slots[k].first) + "." +
         std::to_string(e.slots[k].second) + "=" +
         e_label(T.children[static_cast<std::size_t>(e.slots[k].second) - 1],
                 S.children[static_cast<std::size_t>(e.slots[k].first) - 1],
                 e.gs[k]);
  }
  return s + ")";
}

inline ThetaSet e_nerve(const ThetaObj& T) {
  ThetaSet F;
  F.height = T.height;
  F.name = "E(" + to_string(T) + ")";
  F.card = [T](const ThetaObj& S) { return e_card(T, S); };
  F.act = [T](const ThetaMor& m, std::size_t k) { return e_act(T, m, k); };
  F.label = [T](const ThetaObj& S, std::size_t k) { return e_label(T, S, k); };
  return memoized(F);
}

}  // namespace thetacat
