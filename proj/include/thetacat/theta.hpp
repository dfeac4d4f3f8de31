#pragma once

// Wreath-term calculus: the objects and morphisms of the indexing category
// used throughout this library.  An object of height n is a term
// [p](S_1,...,S_p) whose children have height n-1; the unique height-0
// object is [0].  A morphism carries a monotone map on the top-level linear
// order plus a recursively indexed family of child morphisms.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace thetacat {

struct parse_error : std::runtime_error {
  std::size_t position;
  parse_error(const std::string& msg, std::size_t pos)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
        position(pos) {}
};

struct arity_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Objects

struct ThetaObj {
  int height = 0;                   // n >= 0
  std::vector<ThetaObj> children;   // exactly `width()` entries, height n-1

  std::size_t width() const { return children.size(); }

  bool operator==(const ThetaObj& o) const {
    return height == o.height && children == o.children;
  }
  bool operator!=(const ThetaObj& o) const { return !(*this == o); }
  bool operator<(const ThetaObj& o) const {
    if (height != o.height) return height < o.height;
    return children < o.children;
  }
};

inline ThetaObj point() { return ThetaObj{0, {}}; }

// Re-interprets the term at a larger height: structure unchanged, height
// labels shifted.  Realizes the standard inclusion of lower-height terms.
inline ThetaObj pad(const ThetaObj& t, int height) {
  if (height < t.height) throw arity_error("pad: height below term height");
  if (height == t.height) return t;
  ThetaObj r{height, {}};
  r.children.reserve(t.children.size());
  if (t.height == 0) return r;  // width 0 at the new height
  for (const auto& c : t.children) r.children.push_back(pad(c, height - 1));
  return r;
}

// The k-cell: c_0 = [0], c_k = [1](c_{k-1}); padded to `height`.
inline ThetaObj cell(int k, int height = -1) {
  if (k < 0) throw arity_error("cell: negative dimension");
  ThetaObj c = point();
  for (int i = 0; i < k; ++i) c = ThetaObj{c.height + 1, {c}};
  if (height < 0) height = k;
  return pad(c, height);
}

// Object of Delta as a height-1 term: [p] = [p]([0],...,[0]).
inline ThetaObj simplex(std::size_t p) {
  ThetaObj r{1, {}};
  r.children.assign(p, point());
  return r;
}

inline std::size_t node_count(const ThetaObj& t) {
  std::size_t n = 1;
  for (const auto& c : t.children) n += node_count(c);
  return n;
}

inline bool well_formed(const ThetaObj& t) {
  if (t.height < 0) return false;
  if (t.height == 0) return t.children.empty();
  for (const auto& c : t.children)
    if (c.height != t.height - 1 || !well_formed(c)) return false;
  return true;
}

// True for padded points: the only objects with a single global object and
// no morphism data at any level.
inline bool is_trivial(const ThetaObj& t) { return t.children.empty(); }

inline bool is_cell(const ThetaObj& t) {
  const ThetaObj* cur = &t;
  while (!cur->children.empty()) {
    if (cur->children.size() != 1) return false;
    cur = &cur->children[0];
  }
  return true;
}

// Dimension of a cell-shaped term (number of unary layers).
inline int cell_dim(const ThetaObj& t) {
  int d = 0;
  const ThetaObj* cur = &t;
  while (!cur->children.empty()) {
    ++d;
    cur = &cur->children[0];
  }
  return d;
}

inline std::string to_string(const ThetaObj& t) {
  if (t.children.empty()) return "[0]";
  std::string s = "[" + std::to_string(t.width()) + "](";
  for (std::size_t i = 0; i < t.children.size(); ++i) {
    if (i) s += ",";
    s += to_string(t.children[i]);
  }
  s += ")";
  return s;
}

// Memoization key; the printed term alone does not distinguish padded
// copies, so the height is carried explicitly.
inline std::string obj_key(const ThetaObj& t) {
  return std::to_string(t.height) + ":" + to_string(t);
}

namespace detail {

struct ObjParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit ObjParser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' ||
                              s[pos] == '\n' || s[pos] == '\r'))
      ++pos;
  }
  char peek() {
    skip_ws();
    if (pos >= s.size()) throw parse_error("unexpected end of input", pos);
    return s[pos];
  }
  void expect(char c) {
    if (peek() != c)
      throw parse_error(std::string("expected '") + c + "'", pos);
    ++pos;
  }
  std::size_t number() {
    skip_ws();
    if (pos >= s.size() || !isdigit(static_cast<unsigned char>(s[pos])))
      throw parse_error("expected a number", pos);
    std::size_t v = 0;
    while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) {
      v = v * 10 + static_cast<std::size_t>(s[pos] - '0');
      ++pos;
    }
    return v;
  }

  ThetaObj parse() {
    expect('[');
    std::size_t w = number();
    expect(']');
    if (w == 0) {
      skip_ws();
      if (pos < s.size() && s[pos] == '(')
        throw arity_error("[0] takes no children");
      return point();
    }
    expect('(');
    std::vector<ThetaObj> kids;
    kids.push_back(parse());
    while (peek() == ',') {
      ++pos;
      kids.push_back(parse());
    }
    expect(')');
    if (kids.size() != w)
      throw arity_error("arity mismatch: [" + std::to_string(w) + "] with " +
                        std::to_string(kids.size()) + " children");
    int h = 0;
    for (const auto& k : kids) h = std::max(h, k.height);
    ThetaObj r{h + 1, {}};
    for (auto& k : kids) r.children.push_back(pad(k, h));
    return r;
  }
};

}  // namespace detail

// Grammar: obj ::= "[0]" | "[" nat "](" obj ("," obj)* ")".
// Children of unequal heights are padded up to the tallest sibling.
inline ThetaObj parse_obj(const std::string& text) {
  detail::ObjParser p(text);
  ThetaObj t = p.parse();
  p.skip_ws();
  if (p.pos != text.size())
    throw parse_error("trailing input after term", p.pos);
  return t;
}

// ---------------------------------------------------------------------------
// Morphisms

struct ThetaMor {
  ThetaObj source;  // [p](S_1..S_p)
  ThetaObj target;  // [q](T_1..T_q)
  // Weakly monotone map {0..p} -> {0..q}; size p+1.  Height 0: {0}.
  std::vector<int> sigma;
  // For 0<i<=p and sigma(i-1)<j<=sigma(i), the child morphism S_i -> T_j,
  // stored in lexicographic (i,j) order.
  std::vector<ThetaMor> taus;

  bool operator==(const ThetaMor& o) const {
    return source == o.source && target == o.target && sigma == o.sigma &&
           taus == o.taus;
  }
  bool operator!=(const ThetaMor& o) const { return !(*this == o); }
};

// Index pairs (i,j) of the tau family determined by sigma, in storage order.
inline std::vector<std::pair<int, int>> tau_index_set(
    const std::vector<int>& sigma, std::size_t source_width) {
  std::vector<std::pair<int, int>> idx;
  for (std::size_t i = 1; i <= source_width; ++i)
    for (int j = sigma[i - 1] + 1; j <= sigma[i]; ++j)
      idx.emplace_back(static_cast<int>(i), j);
  return idx;
}

inline bool well_formed(const ThetaMor& m) {
  if (!well_formed(m.source) || !well_formed(m.target)) return false;
  if (m.source.height != m.target.height) return false;
  if (m.sigma.size() != m.source.width() + 1) return false;
  const int q = static_cast<int>(m.target.width());
  for (std::size_t i = 0; i < m.sigma.size(); ++i) {
    if (m.sigma[i] < 0 || m.sigma[i] > q) return false;
    if (i > 0 && m.sigma[i] < m.sigma[i - 1]) return false;
  }
  auto idx = tau_index_set(m.sigma, m.source.width());
  if (idx.size() != m.taus.size()) return false;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    const auto& [i, j] = idx[k];
    const ThetaMor& t = m.taus[k];
    if (t.source != m.source.children[static_cast<std::size_t>(i) - 1])
      return false;
    if (t.target != m.target.children[static_cast<std::size_t>(j) - 1])
      return false;
    if (!well_formed(t)) return false;
  }
  return true;
}

inline const ThetaMor* find_tau(const ThetaMor& m, int i, int j) {
  auto idx = tau_index_set(m.sigma, m.source.width());
  for (std::size_t k = 0; k < idx.size(); ++k)
    if (idx[k].first == i && idx[k].second == j) return &m.taus[k];
  return nullptr;
}

inline ThetaMor identity(const ThetaObj& t) {
  ThetaMor m;
  m.source = t;
  m.target = t;
  m.sigma.resize(t.width() + 1);
  for (std::size_t i = 0; i <= t.width(); ++i) m.sigma[i] = static_cast<int>(i);
  for (std::size_t i = 1; i <= t.width(); ++i)
    m.taus.push_back(identity(t.children[i - 1]));
  return m;
}

// g after f.  Child morphisms compose along the unique factorization of each
// target interval through the middle object.
inline ThetaMor compose(const ThetaMor& g, const ThetaMor& f) {
  if (f.target != g.source) throw arity_error("compose: non-composable pair");
  ThetaMor r;
  r.source = f.source;
  r.target = g.target;
  r.sigma.resize(f.sigma.size());
  for (std::size_t i = 0; i < f.sigma.size(); ++i)
    r.sigma[i] = g.sigma[static_cast<std::size_t>(f.sigma[i])];
  for (std::size_t i = 1; i <= f.source.width(); ++i) {
    const int a = f.sigma[i - 1], b = f.sigma[i];
    for (int j = a + 1; j <= b; ++j) {
      // every k in (g.sigma(j-1), g.sigma(j)] is reached through j
      const ThetaMor* tf = find_tau(f, static_cast<int>(i), j);
      for (int k = g.sigma[static_cast<std::size_t>(j) - 1] + 1;
           k <= g.sigma[static_cast<std::size_t>(j)]; ++k) {
        const ThetaMor* tg = find_tau(g, j, k);
        r.taus.push_back(compose(*tg, *tf));
      }
    }
  }
  return r;
}

// sigma is a consecutive inclusion and every child morphism is closed.
inline bool is_closed(const ThetaMor& m) {
  for (std::size_t i = 1; i < m.sigma.size(); ++i)
    if (m.sigma[i] != m.sigma[0] + static_cast<int>(i)) return false;
  for (const auto& t : m.taus)
    if (!is_closed(t)) return false;
  return true;
}

// sigma is endpoint-preserving and every child morphism is active.
inline bool is_active(const ThetaMor& m) {
  if (m.sigma.front() != 0) return false;
  if (m.sigma.back() != static_cast<int>(m.target.width())) return false;
  for (const auto& t : m.taus)
    if (!is_active(t)) return false;
  return true;
}

// m = closed . active with the middle object given by the image-interval
// construction at every level.
inline std::pair<ThetaMor, ThetaMor> factor_active_closed(const ThetaMor& m) {
  const int a = m.sigma.front();
  const int b = m.sigma.back();
  const std::size_t p = m.source.width();

  ThetaObj middle{m.source.height, {}};
  ThetaMor act, cls;

  // For each j in (a,b] there is a unique i with j in (sigma(i-1), sigma(i)].
  std::vector<std::pair<ThetaMor, ThetaMor>> child_parts;  // per j
  for (int j = a + 1; j <= b; ++j) {
    int owner = -1;
    for (std::size_t i = 1; i <= p; ++i)
      if (m.sigma[i - 1] < j && j <= m.sigma[i]) {
        owner = static_cast<int>(i);
        break;
      }
    child_parts.push_back(factor_active_closed(*find_tau(m, owner, j)));
    middle.children.push_back(child_parts.back().first.target);
  }

  act.source = m.source;
  act.target = middle;
  act.sigma.resize(p + 1);
  for (std::size_t i = 0; i <= p; ++i) act.sigma[i] = m.sigma[i] - a;
  for (std::size_t i = 1; i <= p; ++i)
    for (int j = m.sigma[i - 1] + 1; j <= m.sigma[i]; ++j)
      act.taus.push_back(child_parts[static_cast<std::size_t>(j - a) - 1].first);

  cls.source = middle;
  cls.target = m.target;
  cls.sigma.resize(middle.width() + 1);
  for (std::size_t k = 0; k <= middle.width(); ++k)
    cls.sigma[k] = a + static_cast<int>(k);
  for (std::size_t k = 1; k <= middle.width(); ++k)
    cls.taus.push_back(child_parts[k - 1].second);

  return {act, cls};
}

inline std::string to_string(const ThetaMor& m) {
  std::string s = "{sigma=[";
  for (std::size_t i = 0; i < m.sigma.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(m.sigma[i]);
  }
  s += "]";
  if (!m.taus.empty()) {
    s += ", taus=[";
    for (std::size_t k = 0; k < m.taus.size(); ++k) {
      if (k) s += ",";
      s += to_string(m.taus[k]);
    }
    s += "]";
  }
  s += "}";
  return s;
}

inline std::string mor_key(const ThetaMor& m) {
  return obj_key(m.source) + "->" + obj_key(m.target) + ":" + to_string(m);
}

// ---------------------------------------------------------------------------
// Enumeration

namespace detail {

inline void monotone_maps(int p, int q, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(static_cast<std::size_t>(p) + 1, 0);
  // lexicographic enumeration of weakly monotone {0..p} -> {0..q}
  auto rec = [&](auto&& self, std::size_t i, int lo) -> void {
    if (i == cur.size()) {
      out.push_back(cur);
      return;
    }
    for (int v = lo; v <= q; ++v) {
      cur[i] = v;
      self(self, i + 1, v);
    }
  };
  rec(rec, 0, 0);
}

}  // namespace detail

// Every morphism S -> T exactly once: lexicographic on sigma, then on child
// choices in index order.
inline std::vector<ThetaMor> enumerate_morphisms(const ThetaObj& S,
                                                 const ThetaObj& T) {
  if (S.height != T.height) throw arity_error("enumerate_morphisms: height mismatch");
  std::vector<ThetaMor> out;
  if (S.height == 0) {
    ThetaMor m;
    m.source = S;
    m.target = T;
    m.sigma = {0};
    out.push_back(m);
    return out;
  }
  std::vector<std::vector<int>> sigmas;
  detail::monotone_maps(static_cast<int>(S.width()),
                        static_cast<int>(T.width()), sigmas);
  for (const auto& sigma : sigmas) {
    auto idx = tau_index_set(sigma, S.width());
    std::vector<std::vector<ThetaMor>> options;
    bool dead = false;
    for (const auto& [i, j] : idx) {
      options.push_back(
          enumerate_morphisms(S.children[static_cast<std::size_t>(i) - 1],
                              T.children[static_cast<std::size_t>(j) - 1]));
      if (options.back().empty()) {
        dead = true;
        break;
      }
    }
    if (dead) continue;
    std::vector<std::size_t> pick(options.size(), 0);
    for (;;) {
      ThetaMor m;
      m.source = S;
      m.target = T;
      m.sigma = sigma;
      for (std::size_t k = 0; k < options.size(); ++k)
        m.taus.push_back(options[k][pick[k]]);
      out.push_back(std::move(m));
      std::size_t k = options.size();
      while (k > 0 && ++pick[k - 1] == options[k - 1].size()) {
        pick[k - 1] = 0;
        --k;
      }
      if (k == 0) break;
    }
  }
  return out;
}

inline std::size_t hom_count(const ThetaObj& S, const ThetaObj& T) {
  if (S.height != T.height) throw arity_error("hom_count: height mismatch");
  if (S.height == 0) return 1;
  std::vector<std::vector<int>> sigmas;
  detail::monotone_maps(static_cast<int>(S.width()),
                        static_cast<int>(T.width()), sigmas);
  std::size_t total = 0;
  for (const auto& sigma : sigmas) {
    std::size_t prod = 1;
    for (const auto& [i, j] : tau_index_set(sigma, S.width())) {
      prod *= hom_count(S.children[static_cast<std::size_t>(i) - 1],
                        T.children[static_cast<std::size_t>(j) - 1]);
      if (prod == 0) break;
    }
    total += prod;
  }
  return total;
}

// All closed morphisms into T, canonical order: source width ascending, then
// offset, then child choices.
inline std::vector<ThetaMor> closed_morphisms_into(const ThetaObj& T) {
  std::vector<ThetaMor> out;
  if (T.height == 0) {
    out.push_back(identity(T));
    return out;
  }
  const int q = static_cast<int>(T.width());
  for (int p = 0; p <= q; ++p) {
    for (int c = 0; c + p <= q; ++c) {
      std::vector<std::vector<ThetaMor>> options;
      for (int i = 1; i <= p; ++i)
        options.push_back(
            closed_morphisms_into(T.children[static_cast<std::size_t>(c + i) - 1]));
      std::vector<std::size_t> pick(options.size(), 0);
      for (;;) {
        ThetaMor m;
        m.target = T;
        m.source = ThetaObj{T.height, {}};
        m.sigma.resize(static_cast<std::size_t>(p) + 1);
        for (int i = 0; i <= p; ++i)
          m.sigma[static_cast<std::size_t>(i)] = c + i;
        for (std::size_t k = 0; k < options.size(); ++k) {
          const ThetaMor& ch = options[k][pick[k]];
          m.source.children.push_back(ch.source);
          m.taus.push_back(ch);
        }
        out.push_back(std::move(m));
        std::size_t k = options.size();
        while (k > 0 && ++pick[k - 1] == options[k - 1].size()) {
          pick[k - 1] = 0;
          --k;
        }
        if (k == 0) break;
      }
    }
  }
  return out;
}

// Unique closed h with inner = outer . h, if it exists.  Closed morphisms are
// monomorphisms, so at most one such factorization exists.
inline std::optional<ThetaMor> closed_factor_through(const ThetaMor& inner,
                                                     const ThetaMor& outer) {
  if (inner.target != outer.target) return std::nullopt;
  if (inner.source.height == 0) {
    if (outer.source.height != 0) return std::nullopt;
    return identity(inner.source);
  }
  const int a_in = inner.sigma.front();
  const int a_out = outer.sigma.front();
  const int off = a_in - a_out;
  if (off < 0) return std::nullopt;
  if (inner.sigma.back() > outer.sigma.back()) return std::nullopt;
  ThetaMor h;
  h.source = inner.source;
  h.target = outer.source;
  h.sigma.resize(inner.sigma.size());
  for (std::size_t i = 0; i < inner.sigma.size(); ++i)
    h.sigma[i] = inner.sigma[i] - a_out;
  for (std::size_t i = 1; i <= inner.source.width(); ++i) {
    const int j = off + static_cast<int>(i);  // child index in outer.source
    auto sub = closed_factor_through(
        inner.taus[i - 1], outer.taus[static_cast<std::size_t>(j) - 1]);
    if (!sub) return std::nullopt;
    h.taus.push_back(*sub);
  }
  return h;
}

// ---------------------------------------------------------------------------
// Bounded object enumeration (suite machinery)

inline void enumerate_objects_rec(int height, std::size_t max_nodes,
                                  std::vector<ThetaObj>& out);

inline std::vector<ThetaObj> enumerate_objects(int height,
                                               std::size_t max_nodes) {
  std::vector<ThetaObj> out;
  enumerate_objects_rec(height, max_nodes, out);
  return out;
}

inline void enumerate_objects_rec(int height, std::size_t max_nodes,
                                  std::vector<ThetaObj>& out) {
  if (max_nodes == 0) return;
  if (height == 0) {
    out.push_back(point());
    return;
  }
  std::vector<ThetaObj> lower = enumerate_objects(height - 1, max_nodes - 1);
  // children tuples with total node budget max_nodes - 1
  std::vector<ThetaObj> cur;
  auto rec = [&](auto&& self, std::size_t budget) -> void {
    out.push_back(ThetaObj{height, cur});
    for (const auto& c : lower) {
      std::size_t n = node_count(c);
      if (n > budget) continue;
      cur.push_back(c);
      self(self, budget - n);
      cur.pop_back();
    }
  };
  rec(rec, max_nodes - 1);
  std::sort(out.begin(), out.end());
}

}  // namespace thetacat
