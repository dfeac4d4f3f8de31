#pragma once

// Maps between presheaves, computed on the generating cells and extended.
// A candidate assigns, for every cell dimension, a value table subject to
// naturality along every morphism between cells; it survives when its
// component at each bounded probe extends uniquely through the cell cover.
//
// Extension never needs elementwise work at probes where the codomain
// satisfies the sheaf condition: a cell-natural candidate sends compatible
// families to compatible families (the cover's connecting maps are morphisms
// between cells), so a unique amalgam exists.  Components are therefore
// materialized only at cell probes, at probes small enough for the final
// naturality sweep, and at explicitly queried elements; probes where the
// codomain is not a sheaf fall back to the elementwise check.  Ambiguous
// extensions abort (two values with equal restrictions contradict gluing).

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "thetacat/segal.hpp"
#include "thetacat/theta_set.hpp"

namespace thetacat {

// Request the component entries of every surviving element at these elements
// of G(probe); results land in NatElement::queried.
struct NatQuery {
  ThetaObj probe;
  std::vector<std::size_t> elements;
};

struct NatOptions {
  int extend_bound = 6;  // extension is verified up to this node count
  int verify_bound = 4;  // tame naturality is re-swept up to this node count
  std::vector<NatQuery> queries;
};

struct NatElement {
  // per-probe component tables, keyed by obj_key: G(S) index -> F(S) index,
  // materialized at cell probes and probes within the verify bound
  std::map<std::string, std::vector<std::size_t>> component;
  // sparse entries requested through NatOptions::queries
  std::map<std::string, std::map<std::size_t, std::size_t>> queried;
};

struct NatResult {
  std::vector<ThetaObj> probes;
  std::vector<NatElement> elements;
};

inline NatResult natural_transformations(const ThetaSet& G, const ThetaSet& F,
                                         NatOptions opt = {}) {
  if (G.height != F.height)
    throw arity_error("natural_transformations: height mismatch");
  const int n = G.height;

  std::vector<ThetaObj> cells;
  for (int i = 0; i <= n; ++i) cells.push_back(cell(i, n));
  std::vector<std::size_t> gcard(cells.size()), fcard(cells.size());
  std::vector<std::size_t> off(cells.size() + 1, 0);
  for (std::size_t i = 0; i < cells.size(); ++i) {
    gcard[i] = G.card(cells[i]);
    fcard[i] = F.card(cells[i]);
    off[i + 1] = off[i] + gcard[i];
  }
  const std::size_t nvars = off.back();

  // naturality equations nu[s] == ftabs[ti][nu[t]], grouped by the later var;
  // the F-action along each cell morphism is tabulated once up front
  struct Eq {
    std::size_t s = 0, t = 0, ti = 0;
  };
  std::vector<std::vector<std::size_t>> ftabs;
  std::vector<std::vector<Eq>> ready(nvars);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t j = 0; j < cells.size(); ++j)
      for (const auto& m : enumerate_morphisms(cells[i], cells[j])) {
        std::vector<std::size_t> tab(fcard[j]);
        for (std::size_t y = 0; y < fcard[j]; ++y) tab[y] = F.act(m, y);
        ftabs.push_back(std::move(tab));
        for (std::size_t y = 0; y < gcard[j]; ++y) {
          Eq e;
          e.s = off[i] + G.act(m, y);
          e.t = off[j] + y;
          e.ti = ftabs.size() - 1;
          ready[std::max(e.s, e.t)].push_back(e);
        }
      }

  // var -> (cell dim, element) for the equation check
  std::vector<std::size_t> dim_of(nvars), elem_of(nvars);
  for (std::size_t i = 0; i < cells.size(); ++i)
    for (std::size_t x = 0; x < gcard[i]; ++x) {
      dim_of[off[i] + x] = i;
      elem_of[off[i] + x] = x;
    }

  // Composition constraints.  Morphisms between cells never witness binary
  // composition, so the search above admits every multiplicative defect and
  // can explode on targets with few objects.  Each shape gluing two k-cells
  // along a j-cell witnesses one composition; where F glues uniquely over
  // that shape's cell cover, naturality along the tame morphisms from cells
  // into the shape is a necessary condition and is checked during the search.
  struct Aux {
    std::vector<std::size_t> vertex_dim;
    std::vector<std::vector<std::size_t>> grows;  // G-restriction tuples
    std::map<std::vector<std::size_t>, std::size_t> findex;
    std::vector<std::vector<std::size_t>> ftabs;  // per cell morphism
  };
  struct Con {
    std::size_t a = 0, x = 0, ti = 0, lvar = 0;
  };
  std::vector<Aux> aux;
  std::vector<std::vector<Con>> conready(nvars);
  {
    // two k-cells joined along a j-cell: j unary layers over a width-2 node
    // whose children are (k-1)-cells
    auto comp_shape = [](int k, int j, int h) {
      ThetaObj S{h - j, {cell(k - j - 1, h - j - 1), cell(k - j - 1, h - j - 1)}};
      for (int d = 0; d < j; ++d) S = ThetaObj{S.height + 1, {S}};
      return S;
    };
    std::vector<ThetaObj> shapes;
    for (int k = 1; k <= n; ++k)
      for (int j = 0; j < k; ++j) shapes.push_back(comp_shape(k, j, n));
    for (const ThetaObj& S : shapes) {
      SegalCover cov = maximal_segal_cover(S);
      const std::size_t nv = cov.cocone.size();
      const std::size_t gc = G.card(S), fc = F.card(S);
      Aux A;
      for (const auto& V : cov.diagram.vertices)
        A.vertex_dim.push_back(static_cast<std::size_t>(cell_dim(V)));
      bool dup = false;
      for (std::size_t y = 0; y < fc && !dup; ++y) {
        std::vector<std::size_t> t(nv);
        for (std::size_t w = 0; w < nv; ++w) t[w] = F.act(cov.cocone[w], y);
        dup = !A.findex.emplace(std::move(t), y).second;
      }
      if (dup || limit_families(F, cov.diagram).size() != fc) continue;
      A.grows.resize(gc);
      for (std::size_t x = 0; x < gc; ++x) {
        A.grows[x].resize(nv);
        for (std::size_t w = 0; w < nv; ++w)
          A.grows[x][w] = G.act(cov.cocone[w], x);
      }
      const std::size_t ai = aux.size();
      for (std::size_t i = 0; i < cells.size(); ++i)
        for (const auto& m : enumerate_morphisms(cells[i], S)) {
          if (!is_tame(m)) continue;
          std::vector<std::size_t> tab(fc);
          for (std::size_t y = 0; y < fc; ++y) tab[y] = F.act(m, y);
          A.ftabs.push_back(std::move(tab));
          for (std::size_t x = 0; x < gc; ++x) {
            Con c;
            c.a = ai;
            c.x = x;
            c.ti = A.ftabs.size() - 1;
            c.lvar = off[i] + G.act(m, x);
            std::size_t last = c.lvar;
            for (std::size_t w = 0; w < nv; ++w)
              last = std::max(last, off[A.vertex_dim[w]] + A.grows[x][w]);
            conready[last].push_back(c);
          }
        }
      aux.push_back(std::move(A));
    }
  }

  std::vector<std::vector<std::size_t>> candidates;
  std::vector<std::size_t> nu(nvars, 0);
  std::vector<std::size_t> tbuf;
  std::size_t v = 0;
  if (nvars == 0) {
    candidates.push_back({});
  } else {
    for (;;) {
      if (nu[v] == fcard[dim_of[v]]) {
        nu[v] = 0;
        if (v == 0) break;
        --v;
        ++nu[v];
        continue;
      }
      bool ok = true;
      for (const Eq& e : ready[v]) {
        if (nu[e.s] != ftabs[e.ti][nu[e.t]]) {
          ok = false;
          break;
        }
      }
      if (ok)
        for (const Con& c : conready[v]) {
          const Aux& A = aux[c.a];
          const auto& row = A.grows[c.x];
          tbuf.resize(row.size());
          for (std::size_t w = 0; w < row.size(); ++w)
            tbuf[w] = nu[off[A.vertex_dim[w]] + row[w]];
          auto it = A.findex.find(tbuf);
          if (it == A.findex.end() ||
              nu[c.lvar] != A.ftabs[c.ti][it->second]) {
            ok = false;
            break;
          }
        }
      if (!ok) {
        ++nu[v];
        continue;
      }
      if (v + 1 == nvars) {
        candidates.push_back(nu);
        ++nu[v];
      } else {
        ++v;
      }
    }
  }

  NatResult R;
  R.probes = enumerate_objects(n, opt.extend_bound);

  // queried element lists per probe key
  std::map<std::string, std::vector<std::size_t>> queries;
  for (const auto& q : opt.queries) {
    auto& l = queries[obj_key(q.probe)];
    l.insert(l.end(), q.elements.begin(), q.elements.end());
  }

  // extension data per probe: the cell cover, G-side restriction tuples and
  // the F-side tuple index (duplicates poison gluing)
  struct Ext {
    bool is_cell_probe = false;
    std::size_t cell_dim = 0;
    bool materialize = false;  // keep the full component table
    bool sheaf_here = false;   // F glues uniquely: extension is automatic
    SegalCover cover;
    std::vector<std::size_t> vertex_dim;
    std::vector<std::vector<std::size_t>> gtuples;       // full rows
    std::map<std::size_t, std::vector<std::size_t>> qrows;  // queried rows
    const std::vector<std::size_t>* queried = nullptr;
    std::map<std::vector<std::size_t>, long long> findex;  // -1: ambiguous
  };
  std::vector<Ext> exts(R.probes.size());
  for (std::size_t s = 0; s < R.probes.size(); ++s) {
    const ThetaObj& S = R.probes[s];
    Ext& E = exts[s];
    if (auto qit = queries.find(obj_key(S)); qit != queries.end())
      E.queried = &qit->second;
    for (std::size_t i = 0; i < cells.size(); ++i)
      if (S == cells[i]) {
        E.is_cell_probe = true;
        E.cell_dim = i;
      }
    if (E.is_cell_probe) continue;
    E.materialize =
        node_count(S) <= static_cast<std::size_t>(opt.verify_bound);
    E.cover = maximal_segal_cover(S);
    for (const auto& V : E.cover.diagram.vertices) {
      if (!is_cell(V)) throw std::logic_error("cover vertex is not a cell");
      E.vertex_dim.push_back(static_cast<std::size_t>(cell_dim(V)));
    }
    const std::size_t nv = E.cover.cocone.size();
    std::size_t gc = G.card(S), fc = F.card(S);
    bool dup = false;
    for (std::size_t y = 0; y < fc; ++y) {
      std::vector<std::size_t> t(nv);
      for (std::size_t w = 0; w < nv; ++w)
        t[w] = F.act(E.cover.cocone[w], y);
      auto it = E.findex.find(t);
      if (it == E.findex.end())
        E.findex[t] = static_cast<long long>(y);
      else {
        it->second = -1;
        dup = true;
      }
    }
    E.sheaf_here =
        !dup && limit_families(F, E.cover.diagram).size() == fc;
    if (E.materialize || !E.sheaf_here) {
      E.gtuples.resize(gc);
      for (std::size_t x = 0; x < gc; ++x) {
        E.gtuples[x].resize(nv);
        for (std::size_t w = 0; w < nv; ++w)
          E.gtuples[x][w] = G.act(E.cover.cocone[w], x);
      }
    } else if (E.queried) {
      for (std::size_t x : *E.queried) {
        auto& row = E.qrows[x];
        row.resize(nv);
        for (std::size_t w = 0; w < nv; ++w)
          row[w] = G.act(E.cover.cocone[w], x);
      }
    }
  }

  // tame morphisms between small probes, with both actions tabulated once so
  // the per-candidate sweep is pure array work
  struct SweepPair {
    std::string akey, bkey;
    std::vector<std::vector<std::size_t>> gtabs;  // per morphism: G(b)->G(a)
    std::vector<std::vector<std::size_t>> ftabs;  // per morphism: F(b)->F(a)
  };
  std::vector<SweepPair> sweep;
  for (std::size_t a = 0; a < R.probes.size(); ++a) {
    if (node_count(R.probes[a]) > static_cast<std::size_t>(opt.verify_bound))
      continue;
    for (std::size_t b = 0; b < R.probes.size(); ++b) {
      if (node_count(R.probes[b]) > static_cast<std::size_t>(opt.verify_bound))
        continue;
      SweepPair sp;
      sp.akey = obj_key(R.probes[a]);
      sp.bkey = obj_key(R.probes[b]);
      const std::size_t gb = G.card(R.probes[b]);
      const std::size_t fb = F.card(R.probes[b]);
      for (const auto& m : enumerate_morphisms(R.probes[a], R.probes[b])) {
        if (!is_tame(m)) continue;
        std::vector<std::size_t> gt(gb), ft(fb);
        for (std::size_t x = 0; x < gb; ++x) gt[x] = G.act(m, x);
        for (std::size_t y = 0; y < fb; ++y) ft[y] = F.act(m, y);
        sp.gtabs.push_back(std::move(gt));
        sp.ftabs.push_back(std::move(ft));
      }
      if (!sp.gtabs.empty()) sweep.push_back(std::move(sp));
    }
  }

  for (const auto& cand : candidates) {
    NatElement el;
    bool alive = true;
    for (std::size_t s = 0; s < R.probes.size() && alive; ++s) {
      const ThetaObj& S = R.probes[s];
      const Ext& E = exts[s];
      std::string sk = obj_key(S);

      auto glue_row = [&](const std::vector<std::size_t>& row,
                          std::size_t* out) {
        std::vector<std::size_t> t(row.size());
        for (std::size_t w = 0; w < row.size(); ++w)
          t[w] = cand[off[E.vertex_dim[w]] + row[w]];
        auto it = E.findex.find(t);
        if (it == E.findex.end()) return false;  // no amalgam: not natural
        if (it->second < 0)
          throw std::logic_error(
              "natural_transformations: ambiguous extension");
        *out = static_cast<std::size_t>(it->second);
        return true;
      };

      if (E.is_cell_probe) {
        std::vector<std::size_t> comp(
            cand.begin() + static_cast<std::ptrdiff_t>(off[E.cell_dim]),
            cand.begin() + static_cast<std::ptrdiff_t>(off[E.cell_dim] +
                                                       gcard[E.cell_dim]));
        if (E.queried)
          for (std::size_t x : *E.queried) el.queried[sk][x] = comp[x];
        el.component[sk] = std::move(comp);
        continue;
      }

      if (E.materialize || !E.sheaf_here) {
        std::vector<std::size_t> comp(E.gtuples.size());
        for (std::size_t x = 0; x < E.gtuples.size(); ++x)
          if (!glue_row(E.gtuples[x], &comp[x])) {
            alive = false;
            break;
          }
        if (!alive) break;
        if (E.queried)
          for (std::size_t x : *E.queried) el.queried[sk][x] = comp[x];
        if (E.materialize) el.component[sk] = std::move(comp);
      } else if (E.queried) {
        for (std::size_t x : *E.queried) {
          std::size_t y = 0;
          if (!glue_row(E.qrows.at(x), &y)) {
            alive = false;
            break;
          }
          el.queried[sk][x] = y;
        }
      }
    }
    if (!alive) continue;

    // tame-naturality sweep over small probes
    bool natural = true;
    for (const auto& sp : sweep) {
      const auto& compS = el.component.at(sp.bkey);
      const auto& compSp = el.component.at(sp.akey);
      for (std::size_t k = 0; k < sp.gtabs.size() && natural; ++k) {
        const auto& gt = sp.gtabs[k];
        const auto& ft = sp.ftabs[k];
        for (std::size_t x = 0; x < compS.size(); ++x)
          if (compSp[gt[x]] != ft[compS[x]]) {
            natural = false;
            break;
          }
      }
      if (!natural) break;
    }
    if (natural) R.elements.push_back(std::move(el));
  }
  return R;
}

}  // namespace thetacat
