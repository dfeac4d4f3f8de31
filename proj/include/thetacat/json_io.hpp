#pragma once

// JSON encodings for terms, morphisms, cell complexes, categories, groupoids,
// set flags, partitions, and reports; DOT emission for complexes; and a small
// structural validator for the shipped schema files.

#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "thetacat/flags.hpp"
#include "thetacat/ncat.hpp"
#include "thetacat/segal.hpp"
#include "thetacat/theta.hpp"
#include "thetacat/theta_set.hpp"

namespace thetacat {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Terms: [width, [children...]] with an optional third entry declaring the
// height when padding makes it larger than the visible structure.

inline int structural_height(const ThetaObj& t) {
  int h = 0;
  for (const auto& c : t.children)
    h = std::max(h, structural_height(c) + 1);
  return h;
}

inline json theta_obj_to_json(const ThetaObj& t) {
  json kids = json::array();
  for (const auto& c : t.children) kids.push_back(theta_obj_to_json(c));
  json j = json::array({t.children.size(), std::move(kids)});
  if (structural_height(t) != t.height) j.push_back(t.height);
  return j;
}

inline ThetaObj theta_obj_from_json(const json& j) {
  if (!j.is_array() || j.size() < 2 || j.size() > 3 ||
      !j[0].is_number_unsigned() || !j[1].is_array())
    throw std::invalid_argument("term json: expected [width, [children...]]");
  std::vector<ThetaObj> kids;
  for (const auto& k : j[1]) kids.push_back(theta_obj_from_json(k));
  if (j[0].get<std::size_t>() != kids.size())
    throw std::invalid_argument("term json: width disagrees with children");
  int h = 0;
  for (const auto& k : kids) h = std::max(h, k.height + 1);
  if (j.size() == 3) {
    if (!j[2].is_number_integer())
      throw std::invalid_argument("term json: height must be an integer");
    int hh = j[2].get<int>();
    if (hh < h)
      throw std::invalid_argument("term json: declared height below structure");
    h = hh;
  }
  ThetaObj t{h, {}};
  for (const auto& k : kids) t.children.push_back(pad(k, h - 1));
  if (!well_formed(t)) throw std::invalid_argument("term json: ill-formed");
  return t;
}

// ---------------------------------------------------------------------------
// Morphisms: {"sigma": [...], "taus": [{"i":, "j":, "tau":}, ...]}; the
// endpoints come from context.

inline json theta_mor_to_json(const ThetaMor& m) {
  json j;
  j["sigma"] = m.sigma;
  json taus = json::array();
  auto idx = tau_index_set(m.sigma, m.source.width());
  for (std::size_t k = 0; k < idx.size(); ++k) {
    json t;
    t["i"] = idx[k].first;
    t["j"] = idx[k].second;
    t["tau"] = theta_mor_to_json(m.taus[k]);
    taus.push_back(std::move(t));
  }
  j["taus"] = std::move(taus);
  return j;
}

inline ThetaMor theta_mor_from_json(const json& j, const ThetaObj& S,
                                    const ThetaObj& T) {
  if (!j.is_object() || !j.contains("sigma") || !j["sigma"].is_array())
    throw std::invalid_argument("morphism json: expected sigma array");
  ThetaMor m;
  m.source = S;
  m.target = T;
  for (const auto& v : j["sigma"]) {
    if (!v.is_number_integer())
      throw std::invalid_argument("morphism json: sigma entries are integers");
    m.sigma.push_back(v.get<int>());
  }
  auto idx = tau_index_set(m.sigma, S.width());
  std::map<std::pair<int, int>, json> given;
  if (j.contains("taus")) {
    if (!j["taus"].is_array())
      throw std::invalid_argument("morphism json: taus must be an array");
    for (const auto& t : j["taus"]) {
      if (!t.is_object() || !t.contains("i") || !t.contains("j") ||
          !t.contains("tau"))
        throw std::invalid_argument("morphism json: tau entries need i/j/tau");
      auto key = std::make_pair(t["i"].get<int>(), t["j"].get<int>());
      if (given.count(key))
        throw std::invalid_argument("morphism json: duplicate tau index");
      given[key] = t["tau"];
    }
  }
  if (given.size() != idx.size())
    throw std::invalid_argument("morphism json: tau count disagrees");
  for (const auto& [i, jj] : idx) {
    auto it = given.find({i, jj});
    if (it == given.end())
      throw std::invalid_argument("morphism json: missing tau index");
    if (i < 1 || static_cast<std::size_t>(i) > S.width() || jj < 1 ||
        static_cast<std::size_t>(jj) > T.width())
      throw std::invalid_argument("morphism json: tau index out of range");
    m.taus.push_back(theta_mor_from_json(
        it->second, S.children[static_cast<std::size_t>(i) - 1],
        T.children[static_cast<std::size_t>(jj) - 1]));
  }
  if (!well_formed(m))
    throw std::invalid_argument("morphism json: not a valid morphism");
  return m;
}

// ---------------------------------------------------------------------------
// Cell complexes

inline json complex_to_json(const CellComplex& K) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : K.vertices) j["vertices"].push_back(theta_obj_to_json(v));
  j["edges"] = json::array();
  for (const auto& e : K.edges) {
    json ej;
    ej["from"] = e.from;
    ej["to"] = e.to;
    ej["mor"] = theta_mor_to_json(e.mor);
    j["edges"].push_back(std::move(ej));
  }
  return j;
}

inline CellComplex complex_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    throw std::invalid_argument("complex json: vertices/edges expected");
  CellComplex K;
  for (const auto& v : j["vertices"])
    K.vertices.push_back(theta_obj_from_json(v));
  for (const auto& e : j["edges"]) {
    if (!e.is_object() || !e.contains("from") || !e.contains("to") ||
        !e.contains("mor"))
      throw std::invalid_argument("complex json: edge needs from/to/mor");
    ComplexEdge ce;
    ce.from = e["from"].get<std::size_t>();
    ce.to = e["to"].get<std::size_t>();
    if (ce.from >= K.vertices.size() || ce.to >= K.vertices.size())
      throw std::invalid_argument("complex json: edge endpoint out of range");
    ce.mor = theta_mor_from_json(e["mor"], K.vertices[ce.from],
                                 K.vertices[ce.to]);
    K.edges.push_back(std::move(ce));
  }
  if (!well_formed(K))
    throw std::invalid_argument("complex json: ill-formed complex");
  return K;
}

inline std::string complex_to_dot(const CellComplex& K,
                                  const std::string& name = "complex") {
  std::ostringstream o;
  o << "digraph " << name << " {\n";
  for (std::size_t v = 0; v < K.vertices.size(); ++v)
    o << "  v" << v << " [label=\"" << to_string(K.vertices[v]) << "\"];\n";
  for (const auto& e : K.edges) {
    o << "  v" << e.from << " -> v" << e.to << " [label=\"";
    for (std::size_t i = 0; i < e.mor.sigma.size(); ++i)
      o << (i ? "," : "") << e.mor.sigma[i];
    o << "\"];\n";
  }
  o << "}\n";
  return o.str();
}

// ---------------------------------------------------------------------------
// Category presentation (export)

inline json fun_to_json(const NFunPtr& F) {
  json j;
  j["omap"] = F->omap;
  if (F->src->level > 0) {
    j["hmaps"] = json::array();
    for (const auto& h : F->hmaps) j["hmaps"].push_back(fun_to_json(h));
  }
  return j;
}

inline json ncat_to_json(const NCatPtr& C) {
  json j;
  j["level"] = C->level;
  j["objects"] = C->names;
  if (C->level > 0) {
    j["homs"] = json::array();
    for (const auto& h : C->homs) j["homs"].push_back(ncat_to_json(h));
    j["ids"] = C->ids;
    j["comps"] = json::array();
    for (const auto& f : C->comps) j["comps"].push_back(fun_to_json(f));
  }
  return j;
}

// ---------------------------------------------------------------------------
// Level-1 groupoids: objects, morphisms with source/target/inverse, and the
// full composition table (null when not composable).

inline json groupoid_to_json(const NCatPtr& G) {
  if (G->level != 1) throw arity_error("groupoid json: level-1 expected");
  if (!is_strict_groupoid(G))
    throw std::invalid_argument("groupoid json: not a groupoid");
  json j;
  j["objects"] = G->names;
  std::size_t n = G->size;
  std::vector<std::size_t> offset(n * n, 0);
  std::size_t total = 0;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      offset[a * n + b] = total;
      total += G->hom(a, b)->size;
    }
  auto global = [&](std::size_t a, std::size_t b, std::size_t k) {
    return offset[a * n + b] + k;
  };
  json mors = json::array();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < G->hom(a, b)->size; ++k) {
        std::size_t ab = G->hom(a, b)->size, ba = G->hom(b, a)->size;
        std::size_t inv = ba;
        for (std::size_t k2 = 0; k2 < ba; ++k2)
          if (G->comp(a, b, a)->omap[k2 * ab + k] == G->ids[a] &&
              G->comp(b, a, b)->omap[k * ba + k2] == G->ids[b]) {
            inv = k2;
            break;
          }
        if (inv == ba)
          throw std::logic_error("groupoid json: inverse not found");
        json m;
        m["source"] = a;
        m["target"] = b;
        m["inverse"] = global(b, a, inv);
        mors.push_back(std::move(m));
      }
  j["morphisms"] = std::move(mors);
  json table = json::array();
  for (std::size_t g = 0; g < total; ++g)
    table.push_back(json::array());
  // composition[g][f] with f first: defined when target(f) == source(g)
  std::vector<std::array<std::size_t, 3>> where;  // global -> (a, b, k)
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t k = 0; k < G->hom(a, b)->size; ++k)
        where.push_back({a, b, k});
  for (std::size_t g = 0; g < total; ++g)
    for (std::size_t f = 0; f < total; ++f) {
      auto [b2, c2, kg] = where[g];
      auto [a1, b1, kf] = where[f];
      if (b1 != b2) {
        table[g].push_back(nullptr);
      } else {
        std::size_t v =
            G->comp(a1, b1, c2)->omap[kg * G->hom(a1, b1)->size + kf];
        table[g].push_back(global(a1, c2, v));
      }
    }
  j["composition"] = std::move(table);
  return j;
}

inline NCatPtr groupoid_from_json(const json& j) {
  if (!j.is_object() || !j.contains("objects") || !j.contains("morphisms") ||
      !j.contains("composition"))
    throw std::invalid_argument(
        "groupoid json: objects/morphisms/composition expected");
  std::vector<std::string> names;
  for (const auto& o : j["objects"]) names.push_back(o.get<std::string>());
  std::size_t n = names.size();
  struct Mor {
    std::size_t source, target, inverse;
  };
  std::vector<Mor> mors;
  for (const auto& m : j["morphisms"]) {
    if (!m.is_object() || !m.contains("source") || !m.contains("target") ||
        !m.contains("inverse"))
      throw std::invalid_argument("groupoid json: morphism fields missing");
    Mor mm{m["source"].get<std::size_t>(), m["target"].get<std::size_t>(),
           m["inverse"].get<std::size_t>()};
    if (mm.source >= n || mm.target >= n)
      throw std::invalid_argument("groupoid json: endpoint out of range");
    mors.push_back(mm);
  }
  std::size_t total = mors.size();
  for (const auto& m : mors)
    if (m.inverse >= total)
      throw std::invalid_argument("groupoid json: inverse out of range");
  const json& table = j["composition"];
  if (!table.is_array() || table.size() != total)
    throw std::invalid_argument("groupoid json: composition table shape");
  // bucket morphisms into hom sets in listing order
  std::vector<std::vector<std::size_t>> bucket(n * n);
  std::vector<std::size_t> local(total);
  for (std::size_t g = 0; g < total; ++g) {
    auto& b = bucket[mors[g].source * n + mors[g].target];
    local[g] = b.size();
    b.push_back(g);
  }
  auto composite = [&](std::size_t g, std::size_t f) {
    const json& row = table[g];
    if (!row.is_array() || row.size() != total)
      throw std::invalid_argument("groupoid json: composition table shape");
    if (mors[f].target != mors[g].source) {
      if (!row[f].is_null())
        throw std::invalid_argument("groupoid json: non-composable entry set");
      return total;
    }
    if (!row[f].is_number_unsigned())
      throw std::invalid_argument("groupoid json: missing composite");
    std::size_t v = row[f].get<std::size_t>();
    if (v >= total || mors[v].source != mors[f].source ||
        mors[v].target != mors[g].target)
      throw std::invalid_argument("groupoid json: composite out of place");
    return v;
  };
  NCat c;
  c.level = 1;
  c.size = n;
  c.names = names;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      c.homs.push_back(set_cat(bucket[a * n + b].size()));
  // identities: composite of any arrow out of a with its inverse
  c.ids.assign(n, 0);
  std::vector<bool> idset(n, false);
  for (std::size_t g = 0; g < total; ++g) {
    std::size_t a = mors[g].source;
    if (idset[a]) continue;
    std::size_t e = composite(mors[g].inverse, g);
    if (e >= total) throw std::invalid_argument("groupoid json: bad inverse");
    c.ids[a] = local[e];
    idset[a] = true;
  }
  for (std::size_t a = 0; a < n; ++a)
    if (!idset[a] && !bucket[a * n + a].empty())
      throw std::logic_error("groupoid json: identity not derived");
  for (std::size_t a = 0; a < n; ++a)
    if (bucket[a * n + a].empty())
      throw std::invalid_argument("groupoid json: object without identity");
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t d = 0; d < n; ++d) {
        NCatPtr ab = c.homs[a * n + b], bd = c.homs[b * n + d];
        NFun t;
        t.src = product_cat({bd, ab}, 0);
        t.dst = c.homs[a * n + d];
        t.omap.resize(bd->size * ab->size);
        for (std::size_t h = 0; h < bd->size; ++h)
          for (std::size_t g = 0; g < ab->size; ++g) {
            std::size_t v =
                composite(bucket[b * n + d][h], bucket[a * n + b][g]);
            t.omap[h * ab->size + g] = local[v];
          }
        c.comps.push_back(detail::make_fun(std::move(t)));
      }
  NCatPtr G = detail::make_cat(std::move(c));
  if (!validate_ncat(G))
    throw std::invalid_argument("groupoid json: composition laws fail");
  if (!is_strict_groupoid(G))
    throw std::invalid_argument("groupoid json: inverses do not invert");
  return G;
}

// ---------------------------------------------------------------------------
// Set flags

inline json set_flag_to_json(const SetFlag& f) {
  json j;
  j["levels"] = f.levels;
  j["maps"] = json::array();
  for (const auto& m : f.maps) j["maps"].push_back(m);
  return j;
}

inline SetFlag set_flag_from_json(const json& j) {
  if (!j.is_object() || !j.contains("levels") || !j.contains("maps"))
    throw std::invalid_argument("set flag json: levels/maps expected");
  SetFlag f;
  for (const auto& lv : j["levels"]) {
    std::vector<std::string> level;
    for (const auto& x : lv) level.push_back(x.get<std::string>());
    f.levels.push_back(std::move(level));
  }
  for (const auto& mp : j["maps"]) {
    if (!mp.is_object())
      throw std::invalid_argument("set flag json: maps are objects");
    std::map<std::string, std::string> m;
    for (auto it = mp.begin(); it != mp.end(); ++it)
      m[it.key()] = it.value().get<std::string>();
    f.maps.push_back(std::move(m));
  }
  return f;
}

// ---------------------------------------------------------------------------
// Partitions, reports, tabulation

inline json partition_to_json(const SetPartition& P) {
  json j = json::array();
  for (const auto& cl : P.classes) j.push_back(cl);
  return j;
}

inline json segal_report_to_json(const SegalReport& R) {
  json j = json::array();
  for (const auto& row : R.rows) {
    json r;
    r["object"] = to_string(row.object);
    r["lhs_card"] = row.lhs;
    r["rhs_card"] = row.rhs;
    r["status"] = row.status;
    j.push_back(std::move(r));
  }
  return j;
}

inline json tabulate_to_json(const ThetaSet& F,
                             const std::vector<ThetaObj>& objs) {
  json j = json::array();
  for (const auto& T : objs)
    j.push_back(json::array({to_string(T), F.card(T)}));
  return j;
}

// ---------------------------------------------------------------------------
// Structural schema validation (subset: type, enum, properties, required,
// additionalProperties, items, minItems, maxItems, anyOf, $ref into
// #/definitions)

namespace detail {

inline bool schema_check(const json& schema, const json& value,
                         const json& root, std::string path, std::string* err);

inline bool schema_fail(const std::string& path, const std::string& what,
                        std::string* err) {
  if (err) *err = path + ": " + what;
  return false;
}

inline bool schema_type_ok(const std::string& t, const json& v) {
  if (t == "object") return v.is_object();
  if (t == "array") return v.is_array();
  if (t == "string") return v.is_string();
  if (t == "integer") return v.is_number_integer();
  if (t == "number") return v.is_number();
  if (t == "boolean") return v.is_boolean();
  if (t == "null") return v.is_null();
  return false;
}

inline bool schema_check(const json& schema, const json& value,
                         const json& root, std::string path,
                         std::string* err) {
  if (schema.contains("$ref")) {
    std::string ref = schema["$ref"].get<std::string>();
    const std::string prefix = "#/definitions/";
    if (ref.rfind(prefix, 0) != 0 || !root.contains("definitions"))
      return schema_fail(path, "unsupported $ref " + ref, err);
    const json& defs = root["definitions"];
    std::string name = ref.substr(prefix.size());
    if (!defs.contains(name))
      return schema_fail(path, "unknown definition " + name, err);
    return schema_check(defs[name], value, root, path, err);
  }
  if (schema.contains("anyOf")) {
    for (const auto& alt : schema["anyOf"])
      if (schema_check(alt, value, root, path, nullptr)) return true;
    return schema_fail(path, "no anyOf alternative matched", err);
  }
  if (schema.contains("type")) {
    const json& t = schema["type"];
    bool ok = false;
    if (t.is_string()) ok = schema_type_ok(t.get<std::string>(), value);
    if (t.is_array())
      for (const auto& alt : t)
        ok = ok || schema_type_ok(alt.get<std::string>(), value);
    if (!ok) return schema_fail(path, "type mismatch", err);
  }
  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& e : schema["enum"]) ok = ok || e == value;
    if (!ok) return schema_fail(path, "not in enum", err);
  }
  if (value.is_object()) {
    if (schema.contains("required"))
      for (const auto& k : schema["required"])
        if (!value.contains(k.get<std::string>()))
          return schema_fail(path, "missing key " + k.get<std::string>(), err);
    const json* props =
        schema.contains("properties") ? &schema["properties"] : nullptr;
    for (auto it = value.begin(); it != value.end(); ++it) {
      if (props && props->contains(it.key())) {
        if (!schema_check((*props)[it.key()], it.value(), root,
                          path + "." + it.key(), err))
          return false;
      } else if (schema.contains("additionalProperties")) {
        const json& ap = schema["additionalProperties"];
        if (ap.is_boolean() && !ap.get<bool>())
          return schema_fail(path, "unexpected key " + it.key(), err);
        if (ap.is_object() &&
            !schema_check(ap, it.value(), root, path + "." + it.key(), err))
          return false;
      }
    }
  }
  if (value.is_array()) {
    if (schema.contains("minItems") &&
        value.size() < schema["minItems"].get<std::size_t>())
      return schema_fail(path, "too few items", err);
    if (schema.contains("maxItems") &&
        value.size() > schema["maxItems"].get<std::size_t>())
      return schema_fail(path, "too many items", err);
    if (schema.contains("items")) {
      const json& items = schema["items"];
      if (items.is_array()) {
        for (std::size_t i = 0; i < value.size() && i < items.size(); ++i)
          if (!schema_check(items[i], value[i], root,
                            path + "[" + std::to_string(i) + "]", err))
            return false;
      } else {
        for (std::size_t i = 0; i < value.size(); ++i)
          if (!schema_check(items, value[i], root,
                            path + "[" + std::to_string(i) + "]", err))
            return false;
      }
    }
  }
  return true;
}

}  // namespace detail

inline bool validate_schema(const json& schema, const json& value,
                            std::string* err = nullptr) {
  return detail::schema_check(schema, value, schema, "$", err);
}

inline json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

inline bool validate_schema_file(const std::string& schema_path,
                                 const json& value,
                                 std::string* err = nullptr) {
  return validate_schema(load_json_file(schema_path), value, err);
}

}  // namespace thetacat
