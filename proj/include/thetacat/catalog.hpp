#pragma once

// Named builders for the finite-category catalog, groupoid constructions for
// randomized checks, and the expression grammar that addresses both from the
// command line.

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "thetacat/completion.hpp"
#include "thetacat/flags.hpp"
#include "thetacat/ncat.hpp"
#include "thetacat/theta.hpp"

namespace thetacat {

// ---------------------------------------------------------------------------
// Group bundles and their coproducts (level-1 groupoids)

inline std::vector<std::vector<std::size_t>> cyclic_table(std::size_t k) {
  std::vector<std::vector<std::size_t>> t(k, std::vector<std::size_t>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) t[i][j] = (i + j) % k;
  return t;
}

inline std::vector<std::vector<std::size_t>> klein_table() {
  std::vector<std::vector<std::size_t>> t(4, std::vector<std::size_t>(4));
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t[i][j] = i ^ j;
  return t;
}

// objects 0..m-1 with every hom set a copy of the group and composition by
// multiplication; unit must sit at index 0
inline NCatPtr group_bundle_cat(
    const std::vector<std::vector<std::size_t>>& mult, std::size_t objects) {
  std::size_t n = mult.size();
  if (n == 0 || objects == 0)
    throw std::invalid_argument("group_bundle_cat: empty input");
  for (const auto& row : mult) {
    if (row.size() != n)
      throw std::invalid_argument("group_bundle_cat: table not square");
    for (std::size_t v : row)
      if (v >= n) throw std::invalid_argument("group_bundle_cat: bad entry");
  }
  for (std::size_t g = 0; g < n; ++g) {
    if (mult[0][g] != g || mult[g][0] != g)
      throw std::invalid_argument("group_bundle_cat: 0 is not a unit");
    bool inv = false;
    for (std::size_t h = 0; h < n && !inv; ++h)
      inv = mult[g][h] == 0 && mult[h][g] == 0;
    if (!inv) throw std::invalid_argument("group_bundle_cat: no inverse");
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (mult[mult[a][b]][c] != mult[a][mult[b][c]])
          throw std::invalid_argument("group_bundle_cat: not associative");
  NCat c;
  c.level = 1;
  c.size = objects;
  for (std::size_t x = 0; x < objects; ++x)
    c.names.push_back("x" + std::to_string(x));
  for (std::size_t i = 0; i < objects * objects; ++i)
    c.homs.push_back(set_cat(n));
  c.ids.assign(objects, 0);
  for (std::size_t a = 0; a < objects; ++a)
    for (std::size_t b = 0; b < objects; ++b)
      for (std::size_t d = 0; d < objects; ++d) {
        NFun t;
        t.src = product_cat(
            {c.homs[b * objects + d], c.homs[a * objects + b]}, 0);
        t.dst = c.homs[a * objects + d];
        t.omap.resize(n * n);
        for (std::size_t h = 0; h < n; ++h)
          for (std::size_t g = 0; g < n; ++g)
            t.omap[h * n + g] = mult[h][g];
        c.comps.push_back(detail::make_fun(std::move(t)));
      }
  return detail::make_cat(std::move(c));
}

// block-diagonal union of level-1 categories
inline NCatPtr groupoid_coproduct(const std::vector<NCatPtr>& parts) {
  if (parts.empty())
    throw std::invalid_argument("groupoid_coproduct: empty input");
  std::size_t total = 0;
  for (const auto& p : parts) {
    if (p->level != 1)
      throw arity_error("groupoid_coproduct: level-1 parts expected");
    total += p->size;
  }
  NCat c;
  c.level = 1;
  c.size = total;
  std::vector<std::size_t> base, comp_of;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    base.push_back(c.names.size());
    for (std::size_t x = 0; x < parts[k]->size; ++x) {
      c.names.push_back("c" + std::to_string(k) + ":" + parts[k]->names[x]);
      comp_of.push_back(k);
    }
  }
  NCatPtr none = empty_cat(0);
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b)
      c.homs.push_back(comp_of[a] == comp_of[b]
                           ? parts[comp_of[a]]->hom(a - base[comp_of[a]],
                                                    b - base[comp_of[b]])
                           : none);
  for (std::size_t a = 0; a < total; ++a)
    c.ids.push_back(parts[comp_of[a]]->ids[a - base[comp_of[a]]]);
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b)
      for (std::size_t d = 0; d < total; ++d) {
        if (comp_of[a] == comp_of[b] && comp_of[b] == comp_of[d]) {
          std::size_t k = comp_of[a], o = base[k];
          c.comps.push_back(parts[k]->comp(a - o, b - o, d - o));
        } else {
          NCatPtr P = product_cat(
              {c.homs[b * total + d], c.homs[a * total + b]}, 0);
          c.comps.push_back(empty_source_fun(P, c.homs[a * total + d]));
        }
      }
  return detail::make_cat(std::move(c));
}

// the one-object groupoid on the order-two group
inline NCatPtr bz2() {
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static NCatPtr memo;
  if (!memo) memo = group_bundle_cat(cyclic_table(2), 1);
  return memo;
}

// its delooping: one object, one 1-cell, and an order-two group of 2-cells
inline NCatPtr b2z2() {
  std::lock_guard<std::recursive_mutex> g(detail::builder_lock());
  static NCatPtr memo;
  if (memo) return memo;
  NCatPtr h = bz2();
  NCat c;
  c.level = 2;
  c.size = 1;
  c.names = {"x"};
  c.homs = {h};
  c.ids = {0};
  NCatPtr P = product_cat({h, h}, 1);
  NFun m;
  m.src = P;
  m.dst = h;
  m.omap = {0};
  NFun inner;
  inner.src = P->hom(0, 0);
  inner.dst = h->hom(0, 0);
  inner.omap = {0, 1, 1, 0};
  m.hmaps = {detail::make_fun(std::move(inner))};
  c.comps = {detail::make_fun(std::move(m))};
  return memo = detail::make_cat(std::move(c));
}

// ---------------------------------------------------------------------------
// Catalog lists

struct CatalogEntry {
  std::string name;  // valid input for parse_catalog
  NCatPtr cat;
};

inline std::vector<CatalogEntry> catalog_categories(int level) {
  switch (level) {
    case 1:
      return {{"walking_iso", walking_iso()},
              {"theta([1]([0]))", from_theta(simplex(1))},
              {"walking_retraction", walking_retraction()},
              {"walking_idempotent", walking_idempotent()},
              {"discrete(2)", discrete_cat(2, 1)},
              {"discrete(3)", discrete_cat(3, 1)},
              {"codiscrete(3)", codiscrete_cat(3)},
              {"theta([2]([0],[0]))", from_theta(simplex(2))},
              {"bz2", bz2()}};
    case 2:
      return {{"pad(walking_iso,2)", pad_cat(walking_iso(), 2)},
              {"pad(walking_retraction,2)", pad_cat(walking_retraction(), 2)},
              {"pad(discrete(2),2)", pad_cat(discrete_cat(2, 1), 2)},
              {"cell(2)", from_theta(cell(2))},
              {"suspend(walking_iso)", suspend(walking_iso())},
              {"suspend(theta([1]([0])))", suspend(from_theta(simplex(1)))},
              {"b2z2", b2z2()}};
    case 3:
      return {{"pad(walking_iso,3)", pad_cat(walking_iso(), 3)},
              {"pad(discrete(2),3)", pad_cat(discrete_cat(2, 1), 3)},
              {"cell(3)", from_theta(cell(3))},
              {"suspend(suspend(walking_iso))",
               suspend(suspend(walking_iso()))},
              {"pad(b2z2,3)", pad_cat(b2z2(), 3)}};
    default:
      throw arity_error("catalog_categories: level out of range");
  }
}

inline std::vector<CatalogEntry> catalog_groupoids(int level) {
  switch (level) {
    case 1:
      return {{"walking_iso", walking_iso()},
              {"discrete(2)", discrete_cat(2, 1)},
              {"discrete(3)", discrete_cat(3, 1)},
              {"codiscrete(3)", codiscrete_cat(3)},
              {"bz2", bz2()},
              {"product(walking_iso,discrete(2))",
               product_cat({walking_iso(), discrete_cat(2, 1)}, 1)}};
    case 2:
      return {{"pad(walking_iso,2)", pad_cat(walking_iso(), 2)},
              {"pad(discrete(2),2)", pad_cat(discrete_cat(2, 1), 2)},
              {"pad(codiscrete(3),2)", pad_cat(codiscrete_cat(3), 2)},
              {"pad(bz2,2)", pad_cat(bz2(), 2)},
              {"b2z2", b2z2()}};
    case 3:
      return {{"pad(walking_iso,3)", pad_cat(walking_iso(), 3)},
              {"pad(discrete(2),3)", pad_cat(discrete_cat(2, 1), 3)},
              {"pad(b2z2,3)", pad_cat(b2z2(), 3)}};
    default:
      throw arity_error("catalog_groupoids: level out of range");
  }
}

// ---------------------------------------------------------------------------
// Expression grammar
//
//   expr    := name | name '(' args ')' | name DIGITS
//   args    := expr (',' expr)* | integers | term   (term only under theta)
//
// Builders: walking_iso, walking_retraction, walking_idempotent, terminal,
// discrete(k), codiscrete(k), cell(k), boundary(k), suspend(e), pad(e,k),
// product(e,e,...), theta(TERM), bz2, b2z2.

namespace detail {

struct CatParser {
  const std::string& s;
  std::size_t pos = 0;

  explicit CatParser(const std::string& str) : s(str) {}

  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& m) {
    throw std::invalid_argument("catalog: " + m + " at position " +
                                std::to_string(pos) + " of '" + s + "'");
  }

  std::string ident() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
      ++pos;
    if (start == pos) fail("expected a name");
    return s.substr(start, pos - start);
  }

  long number() {
    skip();
    std::size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (start == pos) fail("expected a number");
    return std::stol(s.substr(start, pos - start));
  }

  // balanced-paren raw capture for theta terms
  std::string balanced() {
    skip();
    std::size_t start = pos;
    int depth = 0;
    while (pos < s.size()) {
      char c = s[pos];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') {
        if (c == ')' && depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0) break;
      ++pos;
    }
    return s.substr(start, pos - start);
  }

  NCatPtr expr() {
    std::string name = ident();
    // split a trailing integer off names like discrete2
    std::size_t split = name.size();
    while (split > 0 && std::isdigit(static_cast<unsigned char>(name[split - 1])))
      --split;
    std::string head = name.substr(0, split);
    std::string tail = name.substr(split);
    if (!tail.empty() && (head == "discrete" || head == "codiscrete" ||
                          head == "cell" || head == "boundary")) {
      long k = std::stol(tail);
      return leaf(head, k);
    }
    skip();
    if (pos < s.size() && s[pos] == '(') {
      ++pos;
      NCatPtr r = call(name);
      if (!eat(')')) fail("expected ')'");
      return r;
    }
    return leaf(name, -1);
  }

  NCatPtr leaf(const std::string& name, long k) {
    if (name == "walking_iso" || name == "iso") return walking_iso();
    if (name == "walking_retraction") return walking_retraction();
    if (name == "walking_idempotent") return walking_idempotent();
    if (name == "terminal") return terminal_cat(1);
    if (name == "bz2") return bz2();
    if (name == "b2z2") return b2z2();
    if (k >= 0) {
      if (name == "discrete") return discrete_cat(k, 1);
      if (name == "codiscrete") return codiscrete_cat(k);
      if (name == "cell") return from_theta(cell(static_cast<int>(k)));
      if (name == "boundary") return boundary_cell(static_cast<int>(k));
    }
    fail("unknown name '" + name + "'");
  }

  NCatPtr call(const std::string& name) {
    if (name == "discrete" || name == "codiscrete" || name == "cell" ||
        name == "boundary") {
      return leaf(name, number());
    }
    if (name == "terminal") return terminal_cat(static_cast<int>(number()));
    if (name == "suspend") return suspend(expr());
    if (name == "pad") {
      NCatPtr C = expr();
      if (!eat(',')) fail("pad expects a level");
      return pad_cat(C, static_cast<int>(number()));
    }
    if (name == "product") {
      std::vector<NCatPtr> fs{expr()};
      while (eat(',')) fs.push_back(expr());
      int level = fs[0]->level;
      for (const auto& f : fs)
        if (f->level != level) fail("product factors at different levels");
      return product_cat(fs, level);
    }
    if (name == "theta") {
      std::string raw = balanced();
      try {
        return from_theta(parse_obj(raw));
      } catch (const parse_error& e) {
        fail(std::string("bad term: ") + e.what());
      }
    }
    fail("unknown builder '" + name + "'");
  }
};

}  // namespace detail

inline NCatPtr parse_catalog(const std::string& text) {
  detail::CatParser p(text);
  NCatPtr r = p.expr();
  p.skip();
  if (p.pos != text.size()) p.fail("trailing input");
  return r;
}

// ---------------------------------------------------------------------------
// Seeded random inputs for round-trip checks

// disjoint union of group bundles with at most max_mors morphisms in total
inline NCatPtr random_groupoid(std::mt19937& rng, std::size_t max_mors = 8) {
  static const std::vector<std::vector<std::vector<std::size_t>>> tables = {
      cyclic_table(1), cyclic_table(2), cyclic_table(3), cyclic_table(4),
      klein_table()};
  std::vector<NCatPtr> parts;
  std::size_t used = 0;
  while (true) {
    std::vector<std::pair<std::size_t, std::size_t>> fits;  // (table, objects)
    for (std::size_t t = 0; t < tables.size(); ++t)
      for (std::size_t m = 1; m <= 2; ++m)
        if (used + m * m * tables[t].size() <= max_mors) fits.push_back({t, m});
    if (fits.empty()) break;
    if (!parts.empty() && rng() % 3 == 0) break;
    auto pick = fits[rng() % fits.size()];
    parts.push_back(group_bundle_cat(tables[pick.first], pick.second));
    used += pick.second * pick.second * tables[pick.first].size();
  }
  return groupoid_coproduct(parts);
}

// a valid flag: surjection first, then bijections
inline SetFlag random_set_flag(std::mt19937& rng, int n,
                               std::size_t max_per_level = 8) {
  if (n < 1) throw std::invalid_argument("random_set_flag: n must be >= 1");
  SetFlag f;
  std::size_t s0 = 1 + rng() % max_per_level;
  std::size_t s1 = 1 + rng() % s0;
  auto names = [](int lvl, std::size_t count) {
    std::vector<std::string> v;
    for (std::size_t i = 0; i < count; ++i)
      v.push_back(std::string(1, static_cast<char>('a' + lvl)) +
                  std::to_string(i));
    return v;
  };
  f.levels.push_back(names(0, s0));
  f.levels.push_back(names(1, s1));
  std::map<std::string, std::string> m0;
  for (std::size_t i = 0; i < s0; ++i)
    m0[f.levels[0][i]] =
        f.levels[1][i < s1 ? i : rng() % s1];  // first s1 cover everything
  f.maps.push_back(std::move(m0));
  for (int lvl = 2; lvl <= n; ++lvl) {
    f.levels.push_back(names(lvl, s1));
    std::vector<std::size_t> perm(s1);
    for (std::size_t i = 0; i < s1; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::map<std::string, std::string> mp;
    for (std::size_t i = 0; i < s1; ++i)
      mp[f.levels[lvl - 1][i]] = f.levels[lvl][perm[i]];
    f.maps.push_back(std::move(mp));
  }
  return f;
}

// an object map hitting every isomorphism class of the target at least once
inline std::vector<std::size_t> random_essentially_surjective(
    std::mt19937& rng, const NCatPtr& G, std::size_t max_domain = 8) {
  SetPartition P = iso_class_partition(G);
  std::size_t k = P.classes.size();
  if (k > max_domain)
    throw std::invalid_argument("random_essentially_surjective: too few slots");
  std::size_t m = k + rng() % (max_domain - k + 1);
  std::vector<std::size_t> f;
  for (std::size_t c = 0; c < k; ++c) f.push_back(P.classes[c][0]);
  while (f.size() < m) f.push_back(rng() % G->size);
  std::shuffle(f.begin(), f.end(), rng);
  return f;
}

}  // namespace thetacat
